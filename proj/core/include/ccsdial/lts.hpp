// ============================================================================
// ccsdial/lts.hpp — operational semantics of CCS terms
// ============================================================================
//
// step() derives the transitions of a term from the SOS rules
//
//   c.P  -c->  P    (in)        tau.P  -tau->  P   (tau)      'c  -'c->  0   (out)
//
//   P -a-> P'                     Q -a-> Q'                P -c-> P'  Q -'c-> Q'
//   ------------------ (par)      ------------------ (par')  -------------------- (syn)
//   P|Q -a-> P'|Q                 P|Q -a-> P|Q'              P|Q -tau-> P'|Q'
//
//   P -a-> P'                     Q -a-> Q'
//   -------------- (sum)          -------------- (sum')
//   P+Q -a-> P'                   P+Q -a-> Q'
//
// (syn) is applied in both orientations, which together with (par') yields
// the symmetric closure. reachable() is the least transition-closed graph
// containing a root; strong_bisim() decides strong bisimilarity on the joint
// reachable graph by partition refinement.
// ============================================================================

#ifndef CCSDIAL_LTS_HPP
#define CCSDIAL_LTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccsdial/errors.hpp"
#include "ccsdial/partition.hpp"
#include "ccsdial/syntax.hpp"

namespace ccsdial {

// ── Label ───────────────────────────────────────────────────────────────────

class Label {
public:
    enum class Kind { In, Out, Tau };

    static Label in(Channel c) { return Label(Kind::In, c.name()); }
    static Label out(Channel c) { return Label(Kind::Out, c.name()); }
    static Label tau() { return Label(Kind::Tau, ""); }

    Kind kind() const noexcept { return kind_; }
    bool is_tau() const noexcept { return kind_ == Kind::Tau; }
    Channel channel() const { return Channel(chan_); }

    /// "a" for input, "'a" for output, "tau".
    std::string str() const;

    bool operator==(const Label& o) const noexcept = default;
    auto operator<=>(const Label& o) const noexcept = default;

private:
    Label(Kind k, std::string c) : kind_(k), chan_(std::move(c)) {}
    Kind kind_;
    std::string chan_;
};

using Step = std::pair<Label, Process>;

/// All transitions of p under the SOS rules, as a sorted duplicate-free set.
std::vector<Step> step(const Process& p);

// ── LtsGraph ────────────────────────────────────────────────────────────────

struct LtsTransition {
    int src;
    Label label;
    int dst;

    bool operator==(const LtsTransition&) const = default;
};

/// A finite LTS fragment: states in breadth-first discovery order, and the
/// full transition relation restricted to them.
class LtsGraph {
public:
    const std::vector<Process>& states() const noexcept { return states_; }
    const std::vector<LtsTransition>& transitions() const noexcept { return transitions_; }

    std::optional<int> index_of(const Process& p) const;

    std::string to_dot() const;
    std::string to_json() const;

    /// Coarsest strong-bisimulation partition of this graph.
    Partition strong_partition() const;

    friend LtsGraph reachable_from(const std::vector<Process>& roots,
                                   std::size_t state_cap);

private:
    std::vector<Process> states_;
    std::vector<LtsTransition> transitions_;
    std::unordered_map<Process, int> index_;
};

/// Least step-closed graph containing p. Throws ResourceLimitError when the
/// closure would exceed state_cap states; terminates on every finite term
/// because step strictly shrinks the prefix measure.
LtsGraph reachable(const Process& p, std::size_t state_cap = kDefaultStateCap);

/// Shared closure of several roots (duplicates collapse onto one state).
LtsGraph reachable_from(const std::vector<Process>& roots,
                        std::size_t state_cap = kDefaultStateCap);

// ── Strong bisimilarity ─────────────────────────────────────────────────────

struct StrongBisimResult {
    bool equivalent;
    LtsGraph graph;       // joint reachable graph of both terms
    Partition partition;  // coarsest strong bisimulation on it
    int p_state;
    int q_state;
};

StrongBisimResult strong_bisim(const Process& p, const Process& q,
                               std::size_t state_cap = kDefaultStateCap);

}  // namespace ccsdial

#endif  // CCSDIAL_LTS_HPP
