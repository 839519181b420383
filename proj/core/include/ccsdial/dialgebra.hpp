// ============================================================================
// ccsdial/dialgebra.hpp — finite dialgebras with unary interaction signatures
// ============================================================================
//
// A dialgebra here is a finite carrier X together with a function
//
//     f : F X -> P_fin(O x X)
//
// where the interaction functor F is a sum of unary shapes,
// F X = Sigma_i (A_i x X): an experiment names a shape, one parameter drawn
// from that shape's finite parameter set, and one state. The observation
// side is a finite set of (observation label, successor) pairs.
//
// Two instances are built on top of this:
//   * non-deterministic Mealy machines   F X = I x X,       O = outputs
//   * the CCS experiment structure       F X = X + L_o x X, O = {tau} + L_o
//
// The equivalence of interest is back-and-forth bisimilarity: states x, y are
// related when for every shape s and parameter a, each observation
// (o, x') of f(s, a, x) is matched by some (o, y') of f(s, a, y) with x', y'
// again related, and symmetrically. bff_bisim_naive computes it as a greatest
// fixpoint of the defining clauses over the full relation; bff_bisim_pr runs
// partition refinement on the induced transition system instead. Both yield
// the same partition.
//
// Quotients by such partitions carry the lifted transition structure
// f/~(s, a, [x]) = {(o, [x']) | (o, x') in f(s, a, x)}; their projection maps
// are homomorphisms, and kernels of homomorphisms are exactly the
// back-and-forth bisimulations, which is what the checks at the bottom of
// this header make executable.
// ============================================================================

#ifndef CCSDIAL_DIALGEBRA_HPP
#define CCSDIAL_DIALGEBRA_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccsdial/partition.hpp"

namespace ccsdial {

// ── Signature and experiments ───────────────────────────────────────────────

/// One summand A x X of the interaction functor. A shape whose params are
/// the single placeholder "·" plays the role of the identity summand X.
struct InteractionShape {
    std::string id;
    std::vector<std::string> params;

    bool operator==(const InteractionShape&) const = default;
};

struct InteractionSignature {
    std::vector<InteractionShape> shapes;

    std::optional<int> find_shape(const std::string& id) const;

    bool operator==(const InteractionSignature&) const = default;
};

/// An element of F X, by index into the signature and state set.
struct Experiment {
    int shape;
    int param;
    int state;

    bool operator==(const Experiment&) const = default;
};

// ── FiniteDialgebra ─────────────────────────────────────────────────────────

/// One observation: (observation label index, successor state index).
using ObsNext = std::pair<int, int>;
/// The value of f at one experiment, sorted and duplicate-free.
using Row = std::vector<ObsNext>;

class FiniteDialgebra {
public:
    /// rows[shape][param][state] lists f(shape, param, state); missing inner
    /// vectors are not allowed (the function is total, empty rows are {}).
    FiniteDialgebra(std::vector<std::string> states, InteractionSignature signature,
                    std::vector<std::string> obs_alphabet,
                    std::vector<std::vector<std::vector<Row>>> rows);

    int n_states() const noexcept { return static_cast<int>(states_.size()); }
    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::string& state_payload(int s) const { return states_[s]; }
    std::optional<int> find_state(const std::string& payload) const;

    const InteractionSignature& signature() const noexcept { return signature_; }
    const std::vector<std::string>& obs_alphabet() const noexcept { return obs_; }
    std::optional<int> find_obs(const std::string& label) const;

    const Row& row(int shape, int param, int state) const {
        return rows_[shape][param][state];
    }
    const Row& row(const Experiment& e) const { return row(e.shape, e.param, e.state); }

    /// Experiments in canonical order: shape, then parameter, then state.
    std::vector<Experiment> experiments() const;

    std::size_t total_transitions() const noexcept;

    bool operator==(const FiniteDialgebra& o) const noexcept;

private:
    std::vector<std::string> states_;
    InteractionSignature signature_;
    std::vector<std::string> obs_;
    std::vector<std::vector<std::vector<Row>>> rows_;
};

/// Incremental construction; build() checks all indices and sorts rows.
class DialgebraBuilder {
public:
    int add_shape(std::string id, std::vector<std::string> params);
    int add_state(std::string payload);
    int add_obs(std::string label);
    int obs_id(const std::string& label);  // interning variant
    void set_row(int shape, int param, int state, Row row);

    FiniteDialgebra build() const;

private:
    InteractionSignature signature_;
    std::vector<std::string> states_;
    std::vector<std::string> obs_;
    std::vector<std::pair<Experiment, Row>> rows_;
};

// ── Induced transition system ───────────────────────────────────────────────
// The dialgebra rewritten as an ordinary LTS: one transition
// x --((shape,param),obs)--> x' per observation, a bijection on transitions.

struct InducedLabel {
    int shape;
    int param;
    int obs;

    bool operator==(const InducedLabel&) const = default;
    auto operator<=>(const InducedLabel&) const = default;
};

struct InducedLts {
    int n_states = 0;
    std::vector<InducedLabel> labels;             // dense label table
    std::vector<std::array<int, 3>> edges;        // (src, label index, dst)
};

InducedLts induced_lts(const FiniteDialgebra& d);

// ── Bisimilarity ────────────────────────────────────────────────────────────

/// Coarsest back-and-forth bisimulation, computed as the greatest fixpoint
/// of the matching clauses starting from the total relation. At most
/// n_states rounds.
Partition bff_bisim_naive(const FiniteDialgebra& d);

/// Same partition, via partition refinement on induced_lts(d).
Partition bff_bisim_pr(const FiniteDialgebra& d);

// ── Quotient, homomorphisms, kernels ────────────────────────────────────────

/// A function between the carriers of two dialgebras.
struct StateMap {
    FiniteDialgebra dom;
    FiniteDialgebra cod;
    std::vector<int> map;  // dom state -> cod state
};

/// Two partition-related states whose lifted rows differ at (shape, param),
/// i.e. the partition is not a back-and-forth bisimulation.
struct QuotientViolation {
    int state_x;
    int state_y;
    int shape;
    int param;
};

std::optional<QuotientViolation> check_quotient_well_defined(
    const FiniteDialgebra& d, const Partition& p);

struct QuotientResult {
    FiniteDialgebra dialgebra;
    StateMap projection;  // x -> [x]
};

/// Quotient dialgebra over the blocks of p, with rows lifted blockwise.
/// Throws std::invalid_argument (naming the offending pair and experiment)
/// when p fails the well-definedness check.
QuotientResult quotient(const FiniteDialgebra& d, const Partition& p);

struct HomomorphismCheck {
    bool ok;
    std::optional<Experiment> counterexample;  // first failing experiment
};

/// Checks g ∘ F h = B h ∘ f pointwise: for every domain experiment (s,a,x),
/// the image of the row under h equals the codomain row at (s,a,h(x)).
/// Throws std::invalid_argument when signatures or alphabets differ.
HomomorphismCheck check_homomorphism(const StateMap& h);
bool is_homomorphism(const StateMap& h);

/// Partition of the domain by equality of images.
Partition kernel(const StateMap& h);

// ── Serialization ───────────────────────────────────────────────────────────

std::string dialgebra_to_json(const FiniteDialgebra& d);
FiniteDialgebra dialgebra_from_json(const std::string& text);
std::string dialgebra_to_dot(const FiniteDialgebra& d);

}  // namespace ccsdial

#endif  // CCSDIAL_DIALGEBRA_HPP
