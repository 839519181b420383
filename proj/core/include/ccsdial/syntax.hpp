// ============================================================================
// ccsdial/syntax.hpp — terms of the finite asynchronous CCS
// ============================================================================
//
// A Process is an immutable tree over the constructors
//
//   0            empty process
//   tau.P        internal step, then P
//   c.P          input on channel c, then P
//   'c           output on channel c
//   P | Q        parallel composition
//   P + Q        non-deterministic choice
//
// There is no replication, restriction or recursion; every term is finite.
// Process values share structure through shared_ptr nodes, carry a cached
// structural hash, and compare by structure (no quotient by commutativity
// or associativity of | and +).
//
// Concrete syntax, loosest to tightest: "+", "|", prefixes. Binary operators
// are left-associative; parentheses override. "tau" is a reserved word.
// ============================================================================

#ifndef CCSDIAL_SYNTAX_HPP
#define CCSDIAL_SYNTAX_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccsdial {

// ── Channel ─────────────────────────────────────────────────────────────────
// A channel name: ASCII letter followed by letters, digits or underscores.
// "tau" is rejected because it is a keyword of the concrete syntax; allowing
// it would break the parse/render round trip.

class Channel {
public:
    explicit Channel(std::string name);

    const std::string& name() const noexcept { return name_; }

    bool operator==(const Channel& o) const noexcept { return name_ == o.name_; }
    auto operator<=>(const Channel& o) const noexcept { return name_ <=> o.name_; }

    static bool valid_name(const std::string& s) noexcept;

private:
    std::string name_;
};

// ── Process ─────────────────────────────────────────────────────────────────

class Process {
public:
    enum class Kind { Nil, Tau, Input, Output, Par, Sum };

    /// Default-constructs the empty process 0.
    Process();

    static Process nil();
    static Process tau(Process cont);
    static Process input(Channel chan, Process cont);
    static Process output(Channel chan);
    static Process par(Process left, Process right);
    static Process sum(Process left, Process right);

    Kind kind() const noexcept;

    /// Channel of an Input or Output node.
    Channel channel() const;
    /// Continuation of a Tau or Input node.
    Process cont() const;
    /// Children of a Par or Sum node.
    Process left() const;
    Process right() const;

    /// Number of constructors in the tree.
    std::size_t size() const noexcept;

    std::size_t hash() const noexcept;
    bool operator==(const Process& o) const noexcept;
    bool operator!=(const Process& o) const noexcept { return !(*this == o); }

    /// Total structural order: by kind, then channel, then children.
    int compare(const Process& o) const noexcept;
    bool operator<(const Process& o) const noexcept { return compare(o) < 0; }

private:
    struct Node;
    explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// ── Parsing and printing ────────────────────────────────────────────────────

/// Syntax error with 1-based position and the token set that was expected.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string found,
               std::vector<std::string> expected);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& found() const noexcept { return found_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::string found_;
    std::vector<std::string> expected_;
};

/// Parses the concrete syntax
///
///   term   := sum
///   sum    := par { "+" par }
///   par    := prefix { "|" prefix }
///   prefix := "0" | "'" ident ["." prefix]
///           | ("tau" | ident) "." prefix | "(" term ")"
///
/// "'c . P" is accepted as the usual asynchronous rendering of an output
/// prefix and stands for ('c | P); render() never produces it.
/// Throws ParseError on invalid input (empty input included).
Process parse(const std::string& text);

/// Canonical, minimally parenthesised text. parse(render(p)) == p for all p.
std::string render(const Process& p);

/// Channels occurring syntactically in p (Input or Output position).
std::set<Channel> channels(const Process& p);

// Termination measure used by the closure constructions: n_active counts
// Tau and Input constructors, n_out counts Output constructors. Compared
// lexicographically with n_active as the major component.
struct PrefixMeasure {
    std::size_t n_active = 0;
    std::size_t n_out = 0;

    bool operator==(const PrefixMeasure&) const = default;
    auto operator<=>(const PrefixMeasure&) const = default;

    std::size_t total() const noexcept { return n_active + n_out; }
};

PrefixMeasure prefix_measure(const Process& p);

}  // namespace ccsdial

template <>
struct std::hash<ccsdial::Process> {
    std::size_t operator()(const ccsdial::Process& p) const noexcept {
        return p.hash();
    }
};

template <>
struct std::hash<ccsdial::Channel> {
    std::size_t operator()(const ccsdial::Channel& c) const noexcept {
        return std::hash<std::string>{}(c.name());
    }
};

#endif  // CCSDIAL_SYNTAX_HPP
