#include "ccsdial/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace ccsdial {

// ── Channel ─────────────────────────────────────────────────────────────────

bool Channel::valid_name(const std::string& s) noexcept {
    if (s.empty() || s == "tau") return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char ch : s) {
        unsigned char u = static_cast<unsigned char>(ch);
        if (!std::isalnum(u) && ch != '_') return false;
    }
    return true;
}

Channel::Channel(std::string name) : name_(std::move(name)) {
    if (!valid_name(name_))
        throw std::invalid_argument("invalid channel name: '" + name_ + "'");
}

// ── Process nodes ───────────────────────────────────────────────────────────

struct Process::Node {
    Kind kind;
    std::string chan;  // Input/Output only
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    std::size_t hash;
    std::size_t size;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

std::size_t node_hash(Process::Kind k, const std::string& chan,
                      const Process::Node* a, const Process::Node* b);

using NodePtr = std::shared_ptr<const Process::Node>;

NodePtr make_node(Process::Kind k, std::string chan, NodePtr a, NodePtr b) {
    std::size_t sz = 1 + (a ? a->size : 0) + (b ? b->size : 0);
    std::size_t h = node_hash(k, chan, a.get(), b.get());
    return std::make_shared<Process::Node>(
        Process::Node{k, std::move(chan), std::move(a), std::move(b), h, sz});
}

const NodePtr& nil_node() {
    static const NodePtr n = make_node(Process::Kind::Nil, "", nullptr, nullptr);
    return n;
}

}  // namespace

std::size_t node_hash(Process::Kind k, const std::string& chan,
                      const Process::Node* a, const Process::Node* b) {
    std::size_t h = mix(0x5343435344u, static_cast<std::size_t>(k));
    h = mix(h, std::hash<std::string>{}(chan));
    if (a) h = mix(h, a->hash);
    if (b) h = mix(h, b->hash);
    return h;
}

Process::Process() : node_(nil_node()) {}

Process Process::nil() { return Process(nil_node()); }

Process Process::tau(Process cont) {
    return Process(make_node(Kind::Tau, "", std::move(cont.node_), nullptr));
}

Process Process::input(Channel chan, Process cont) {
    return Process(make_node(Kind::Input, chan.name(), std::move(cont.node_), nullptr));
}

Process Process::output(Channel chan) {
    return Process(make_node(Kind::Output, chan.name(), nullptr, nullptr));
}

Process Process::par(Process left, Process right) {
    return Process(make_node(Kind::Par, "", std::move(left.node_), std::move(right.node_)));
}

Process Process::sum(Process left, Process right) {
    return Process(make_node(Kind::Sum, "", std::move(left.node_), std::move(right.node_)));
}

Process::Kind Process::kind() const noexcept { return node_->kind; }

Channel Process::channel() const {
    if (node_->kind != Kind::Input && node_->kind != Kind::Output)
        throw std::logic_error("Process::channel on a node without a channel");
    return Channel(node_->chan);
}

Process Process::cont() const {
    if (node_->kind != Kind::Tau && node_->kind != Kind::Input)
        throw std::logic_error("Process::cont on a non-prefix node");
    return Process(node_->a);
}

Process Process::left() const {
    if (node_->kind != Kind::Par && node_->kind != Kind::Sum)
        throw std::logic_error("Process::left on a non-binary node");
    return Process(node_->a);
}

Process Process::right() const {
    if (node_->kind != Kind::Par && node_->kind != Kind::Sum)
        throw std::logic_error("Process::right on a non-binary node");
    return Process(node_->b);
}

std::size_t Process::size() const noexcept { return node_->size; }
std::size_t Process::hash() const noexcept { return node_->hash; }

namespace {

bool node_equal(const Process::Node* x, const Process::Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->hash != y->hash || x->kind != y->kind || x->chan != y->chan) return false;
    return node_equal(x->a.get(), y->a.get()) && node_equal(x->b.get(), y->b.get());
}

int node_compare(const Process::Node* x, const Process::Node* y) {
    if (x == y) return 0;
    if (!x) return -1;
    if (!y) return 1;
    if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
    if (int c = x->chan.compare(y->chan); c != 0) return c < 0 ? -1 : 1;
    if (int c = node_compare(x->a.get(), y->a.get()); c != 0) return c;
    return node_compare(x->b.get(), y->b.get());
}

}  // namespace

bool Process::operator==(const Process& o) const noexcept {
    return node_equal(node_.get(), o.node_.get());
}

int Process::compare(const Process& o) const noexcept {
    return node_compare(node_.get(), o.node_.get());
}

// ── Lexer ───────────────────────────────────────────────────────────────────

namespace {

enum class Tok { Zero, Quote, Dot, Plus, Bar, LParen, RParen, TauKw, Ident, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Zero: return "'0'";
        case Tok::Quote: return "'''";
        case Tok::Dot: return "'.'";
        case Tok::Plus: return "'+'";
        case Tok::Bar: return "'|'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::TauKw: return "'tau'";
        case Tok::Ident: return "identifier";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto bump = [&](char c) {
        if (c == '\n') { ++line; col = 1; } else { ++col; }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            bump(c); ++i;
            continue;
        }
        int tl = line, tc = col;
        switch (c) {
            case '0': out.push_back({Tok::Zero, "0", tl, tc}); bump(c); ++i; continue;
            case '\'': out.push_back({Tok::Quote, "'", tl, tc}); bump(c); ++i; continue;
            case '.': out.push_back({Tok::Dot, ".", tl, tc}); bump(c); ++i; continue;
            case '+': out.push_back({Tok::Plus, "+", tl, tc}); bump(c); ++i; continue;
            case '|': out.push_back({Tok::Bar, "|", tl, tc}); bump(c); ++i; continue;
            case '(': out.push_back({Tok::LParen, "(", tl, tc}); bump(c); ++i; continue;
            case ')': out.push_back({Tok::RParen, ")", tl, tc}); bump(c); ++i; continue;
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id;
            while (i < text.size()) {
                char d = text[i];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
                    id.push_back(d); bump(d); ++i;
                } else {
                    break;
                }
            }
            out.push_back({id == "tau" ? Tok::TauKw : Tok::Ident, id, tl, tc});
            continue;
        }
        throw ParseError(tl, tc, std::string("'") + c + "'",
                         {"'0'", "'''", "'tau'", "identifier", "'('"});
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

// ── Parser ──────────────────────────────────────────────────────────────────

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Process run() {
        Process p = parse_sum();
        expect(Tok::End, {"'+'", "'|'", "end of input"});
        return p;
    }

private:
    const Token& cur() const { return toks_[pos_]; }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        const Token& t = cur();
        std::string found =
            t.kind == Tok::End ? "end of input"
            : t.kind == Tok::Ident ? "identifier '" + t.text + "'"
                                   : "'" + t.text + "'";
        throw ParseError(t.line, t.col, found, std::move(expected));
    }

    void expect(Tok k, std::vector<std::string> expected) {
        if (cur().kind != k) fail(std::move(expected));
        ++pos_;
    }

    Process parse_sum() {
        Process p = parse_par();
        while (cur().kind == Tok::Plus) {
            ++pos_;
            p = Process::sum(p, parse_par());
        }
        return p;
    }

    Process parse_par() {
        Process p = parse_prefix();
        while (cur().kind == Tok::Bar) {
            ++pos_;
            p = Process::par(p, parse_prefix());
        }
        return p;
    }

    static const std::vector<std::string>& prefix_expected() {
        static const std::vector<std::string> e = {"'0'", "'''", "'tau'",
                                                   "identifier", "'('"};
        return e;
    }

    Process parse_prefix() {
        switch (cur().kind) {
            case Tok::Zero:
                ++pos_;
                return Process::nil();
            case Tok::Quote: {
                ++pos_;
                if (cur().kind != Tok::Ident) fail({"identifier"});
                Channel c{cur().text};
                ++pos_;
                Process out = Process::output(c);
                // Asynchronous output-prefix notation: 'c.P stands for 'c | P.
                if (cur().kind == Tok::Dot) {
                    ++pos_;
                    return Process::par(out, parse_prefix());
                }
                return out;
            }
            case Tok::TauKw: {
                ++pos_;
                expect(Tok::Dot, {"'.'"});
                return Process::tau(parse_prefix());
            }
            case Tok::Ident: {
                Channel c{cur().text};
                ++pos_;
                expect(Tok::Dot, {"'.'"});
                return Process::input(c, parse_prefix());
            }
            case Tok::LParen: {
                ++pos_;
                Process p = parse_sum();
                expect(Tok::RParen, {"')'", "'+'", "'|'"});
                return p;
            }
            default:
                fail(prefix_expected());
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(int line, int column, std::string found,
                       std::vector<std::string> expected)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << line << ":" << column << ": syntax error: found " << found
             << ", expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
              if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
              os << expected[i];
          }
          return os.str();
      }()),
      line_(line),
      column_(column),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

Process parse(const std::string& text) {
    return Parser(lex(text)).run();
}

// ── render ──────────────────────────────────────────────────────────────────

namespace {

// Precedence levels, loosest to tightest.
enum Level { kSum = 0, kPar = 1, kPrefix = 2 };

int level_of(Process::Kind k) {
    switch (k) {
        case Process::Kind::Sum: return kSum;
        case Process::Kind::Par: return kPar;
        default: return kPrefix;
    }
}

void render_rec(const Process& p, int min_level, std::string& out) {
    bool parens = level_of(p.kind()) < min_level;
    if (parens) out.push_back('(');
    switch (p.kind()) {
        case Process::Kind::Nil:
            out.push_back('0');
            break;
        case Process::Kind::Tau:
            out += "tau.";
            render_rec(p.cont(), kPrefix, out);
            break;
        case Process::Kind::Input:
            out += p.channel().name();
            out.push_back('.');
            render_rec(p.cont(), kPrefix, out);
            break;
        case Process::Kind::Output:
            out.push_back('\'');
            out += p.channel().name();
            break;
        case Process::Kind::Par:
            render_rec(p.left(), kPar, out);
            out += " | ";
            render_rec(p.right(), kPar + 1, out);
            break;
        case Process::Kind::Sum:
            render_rec(p.left(), kSum, out);
            out += " + ";
            render_rec(p.right(), kSum + 1, out);
            break;
    }
    if (parens) out.push_back(')');
}

}  // namespace

std::string render(const Process& p) {
    std::string out;
    render_rec(p, kSum, out);
    return out;
}

// ── channels / prefix_measure ───────────────────────────────────────────────

namespace {

void collect_channels(const Process& p, std::set<Channel>& out) {
    switch (p.kind()) {
        case Process::Kind::Nil:
            break;
        case Process::Kind::Tau:
            collect_channels(p.cont(), out);
            break;
        case Process::Kind::Input:
            out.insert(p.channel());
            collect_channels(p.cont(), out);
            break;
        case Process::Kind::Output:
            out.insert(p.channel());
            break;
        case Process::Kind::Par:
        case Process::Kind::Sum:
            collect_channels(p.left(), out);
            collect_channels(p.right(), out);
            break;
    }
}

}  // namespace

std::set<Channel> channels(const Process& p) {
    std::set<Channel> out;
    collect_channels(p, out);
    return out;
}

PrefixMeasure prefix_measure(const Process& p) {
    switch (p.kind()) {
        case Process::Kind::Nil:
            return {0, 0};
        case Process::Kind::Tau: {
            PrefixMeasure m = prefix_measure(p.cont());
            return {m.n_active + 1, m.n_out};
        }
        case Process::Kind::Input: {
            PrefixMeasure m = prefix_measure(p.cont());
            return {m.n_active + 1, m.n_out};
        }
        case Process::Kind::Output:
            return {0, 1};
        case Process::Kind::Par:
        case Process::Kind::Sum: {
            PrefixMeasure l = prefix_measure(p.left());
            PrefixMeasure r = prefix_measure(p.right());
            return {l.n_active + r.n_active, l.n_out + r.n_out};
        }
    }
    return {0, 0};
}

}  // namespace ccsdial
