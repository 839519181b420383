#include "ccsdial/lts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace ccsdial {

std::string Label::str() const {
    switch (kind_) {
        case Kind::In: return chan_;
        case Kind::Out: return "'" + chan_;
        case Kind::Tau: return "tau";
    }
    return "";
}

// ── step ────────────────────────────────────────────────────────────────────

namespace {

void sort_unique(std::vector<Step>& v) {
    std::sort(v.begin(), v.end(), [](const Step& a, const Step& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.compare(b.second) < 0;
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void step_into(const Process& p, std::vector<Step>& out) {
    switch (p.kind()) {
        case Process::Kind::Nil:
            break;
        case Process::Kind::Tau:
            out.emplace_back(Label::tau(), p.cont());
            break;
        case Process::Kind::Input:
            out.emplace_back(Label::in(p.channel()), p.cont());
            break;
        case Process::Kind::Output:
            out.emplace_back(Label::out(p.channel()), Process::nil());
            break;
        case Process::Kind::Par: {
            Process l = p.left(), r = p.right();
            std::vector<Step> ls, rs;
            step_into(l, ls);
            step_into(r, rs);
            for (const auto& [a, l2] : ls) out.emplace_back(a, Process::par(l2, r));
            for (const auto& [a, r2] : rs) out.emplace_back(a, Process::par(l, r2));
            // (syn), both orientations
            for (const auto& [a, l2] : ls) {
                if (a.kind() == Label::Kind::Tau) continue;
                for (const auto& [b, r2] : rs) {
                    if (b.kind() == Label::Kind::Tau) continue;
                    bool handshake =
                        (a.kind() == Label::Kind::In && b.kind() == Label::Kind::Out) ||
                        (a.kind() == Label::Kind::Out && b.kind() == Label::Kind::In);
                    if (handshake && a.channel() == b.channel())
                        out.emplace_back(Label::tau(), Process::par(l2, r2));
                }
            }
            break;
        }
        case Process::Kind::Sum: {
            step_into(p.left(), out);
            step_into(p.right(), out);
            break;
        }
    }
}

}  // namespace

std::vector<Step> step(const Process& p) {
    std::vector<Step> out;
    step_into(p, out);
    sort_unique(out);
    return out;
}

// ── reachable ───────────────────────────────────────────────────────────────

LtsGraph reachable_from(const std::vector<Process>& roots, std::size_t state_cap) {
    LtsGraph g;
    std::deque<int> frontier;
    auto intern = [&](const Process& p) {
        auto it = g.index_.find(p);
        if (it != g.index_.end()) return it->second;
        if (g.states_.size() >= state_cap)
            throw ResourceLimitError("LTS closure", state_cap);
        int id = static_cast<int>(g.states_.size());
        g.states_.push_back(p);
        g.index_.emplace(p, id);
        frontier.push_back(id);
        return id;
    };
    for (const Process& r : roots) intern(r);
    while (!frontier.empty()) {
        int src = frontier.front();
        frontier.pop_front();
        for (const auto& [label, target] : step(g.states_[src]))
            g.transitions_.push_back({src, label, intern(target)});
    }
    return g;
}

LtsGraph reachable(const Process& p, std::size_t state_cap) {
    return reachable_from({p}, state_cap);
}

std::optional<int> LtsGraph::index_of(const Process& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

// ── export ──────────────────────────────────────────────────────────────────

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string LtsGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph lts {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < states_.size(); ++i)
        os << "  s" << i << " [label=\"" << dot_escape(render(states_[i])) << "\"];\n";
    for (const auto& t : transitions_)
        os << "  s" << t.src << " -> s" << t.dst << " [label=\"" << dot_escape(t.label.str())
           << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string LtsGraph::to_json() const {
    std::ostringstream os;
    os << "{\"states\":[";
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (i) os << ",";
        os << "\"" << json_escape(render(states_[i])) << "\"";
    }
    os << "],\"transitions\":[";
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (i) os << ",";
        const auto& t = transitions_[i];
        os << "{\"src\":" << t.src << ",\"label\":\"" << json_escape(t.label.str())
           << "\",\"dst\":" << t.dst << "}";
    }
    os << "]}";
    return os.str();
}

// ── strong bisimilarity ─────────────────────────────────────────────────────

Partition LtsGraph::strong_partition() const {
    std::map<Label, int> label_ids;
    std::vector<std::array<int, 3>> edges;
    edges.reserve(transitions_.size());
    for (const auto& t : transitions_) {
        auto [it, fresh] = label_ids.emplace(t.label, static_cast<int>(label_ids.size()));
        (void)fresh;
        edges.push_back({t.src, it->second, t.dst});
    }
    return refine_lts(static_cast<int>(states_.size()),
                      static_cast<int>(label_ids.size()), edges);
}

StrongBisimResult strong_bisim(const Process& p, const Process& q,
                               std::size_t state_cap) {
    LtsGraph g = reachable_from({p, q}, state_cap);
    Partition part = g.strong_partition();
    int pi = *g.index_of(p);
    int qi = *g.index_of(q);
    bool eq = part.same_block(pi, qi);
    return {eq, std::move(g), std::move(part), pi, qi};
}

}  // namespace ccsdial
