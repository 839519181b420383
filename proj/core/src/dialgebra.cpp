#include "ccsdial/dialgebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ccsdial {

using json = nlohmann::ordered_json;

// ── Signature ───────────────────────────────────────────────────────────────

std::optional<int> InteractionSignature::find_shape(const std::string& id) const {
    for (std::size_t i = 0; i < shapes.size(); ++i)
        if (shapes[i].id == id) return static_cast<int>(i);
    return std::nullopt;
}

// ── FiniteDialgebra ─────────────────────────────────────────────────────────

FiniteDialgebra::FiniteDialgebra(std::vector<std::string> states,
                                 InteractionSignature signature,
                                 std::vector<std::string> obs_alphabet,
                                 std::vector<std::vector<std::vector<Row>>> rows)
    : states_(std::move(states)),
      signature_(std::move(signature)),
      obs_(std::move(obs_alphabet)),
      rows_(std::move(rows)) {
    for (std::size_t i = 0; i < signature_.shapes.size(); ++i)
        for (std::size_t j = i + 1; j < signature_.shapes.size(); ++j)
            if (signature_.shapes[i].id == signature_.shapes[j].id)
                throw std::invalid_argument("duplicate shape id: " +
                                            signature_.shapes[i].id);
    if (rows_.size() != signature_.shapes.size())
        throw std::invalid_argument("row table does not match signature");
    for (std::size_t s = 0; s < rows_.size(); ++s) {
        if (rows_[s].size() != signature_.shapes[s].params.size())
            throw std::invalid_argument("row table does not match parameters of shape " +
                                        signature_.shapes[s].id);
        for (auto& per_state : rows_[s]) {
            if (per_state.size() != states_.size())
                throw std::invalid_argument("row table is not total on states");
            for (auto& row : per_state) {
                std::sort(row.begin(), row.end());
                row.erase(std::unique(row.begin(), row.end()), row.end());
                for (const auto& [o, nxt] : row)
                    if (o < 0 || o >= static_cast<int>(obs_.size()) || nxt < 0 ||
                        nxt >= static_cast<int>(states_.size()))
                        throw std::invalid_argument("row entry out of range");
            }
        }
    }
}

std::optional<int> FiniteDialgebra::find_state(const std::string& payload) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == payload) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> FiniteDialgebra::find_obs(const std::string& label) const {
    for (std::size_t i = 0; i < obs_.size(); ++i)
        if (obs_[i] == label) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<Experiment> FiniteDialgebra::experiments() const {
    std::vector<Experiment> out;
    for (int s = 0; s < static_cast<int>(signature_.shapes.size()); ++s)
        for (int a = 0; a < static_cast<int>(signature_.shapes[s].params.size()); ++a)
            for (int x = 0; x < n_states(); ++x) out.push_back({s, a, x});
    return out;
}

std::size_t FiniteDialgebra::total_transitions() const noexcept {
    std::size_t n = 0;
    for (const auto& per_shape : rows_)
        for (const auto& per_param : per_shape)
            for (const auto& row : per_param) n += row.size();
    return n;
}

bool FiniteDialgebra::operator==(const FiniteDialgebra& o) const noexcept {
    return states_ == o.states_ && signature_ == o.signature_ && obs_ == o.obs_ &&
           rows_ == o.rows_;
}

// ── DialgebraBuilder ────────────────────────────────────────────────────────

int DialgebraBuilder::add_shape(std::string id, std::vector<std::string> params) {
    signature_.shapes.push_back({std::move(id), std::move(params)});
    return static_cast<int>(signature_.shapes.size()) - 1;
}

int DialgebraBuilder::add_state(std::string payload) {
    states_.push_back(std::move(payload));
    return static_cast<int>(states_.size()) - 1;
}

int DialgebraBuilder::add_obs(std::string label) {
    obs_.push_back(std::move(label));
    return static_cast<int>(obs_.size()) - 1;
}

int DialgebraBuilder::obs_id(const std::string& label) {
    for (std::size_t i = 0; i < obs_.size(); ++i)
        if (obs_[i] == label) return static_cast<int>(i);
    return add_obs(label);
}

void DialgebraBuilder::set_row(int shape, int param, int state, Row row) {
    rows_.emplace_back(Experiment{shape, param, state}, std::move(row));
}

FiniteDialgebra DialgebraBuilder::build() const {
    std::vector<std::vector<std::vector<Row>>> table(signature_.shapes.size());
    for (std::size_t s = 0; s < signature_.shapes.size(); ++s)
        table[s].assign(signature_.shapes[s].params.size(),
                        std::vector<Row>(states_.size()));
    for (const auto& [e, row] : rows_) {
        if (e.shape < 0 || e.shape >= static_cast<int>(table.size()) || e.param < 0 ||
            e.param >= static_cast<int>(table[e.shape].size()) || e.state < 0 ||
            e.state >= static_cast<int>(states_.size()))
            throw std::invalid_argument("set_row: experiment out of range");
        table[e.shape][e.param][e.state] = row;
    }
    return FiniteDialgebra(states_, signature_, obs_, std::move(table));
}

// ── Induced LTS ─────────────────────────────────────────────────────────────

InducedLts induced_lts(const FiniteDialgebra& d) {
    InducedLts out;
    out.n_states = d.n_states();
    std::map<InducedLabel, int> ids;
    const auto& shapes = d.signature().shapes;
    for (int s = 0; s < static_cast<int>(shapes.size()); ++s) {
        for (int a = 0; a < static_cast<int>(shapes[s].params.size()); ++a) {
            for (int x = 0; x < d.n_states(); ++x) {
                for (const auto& [o, nxt] : d.row(s, a, x)) {
                    InducedLabel lbl{s, a, o};
                    auto [it, fresh] = ids.emplace(lbl, static_cast<int>(ids.size()));
                    if (fresh) out.labels.push_back(lbl);
                    out.edges.push_back({x, it->second, nxt});
                }
            }
        }
    }
    return out;
}

// ── bff bisimilarity, naive fixpoint ────────────────────────────────────────

namespace {

// One direction of the matching clause under the relation rel: every
// observation of rx has a same-label partner in ry with related successors.
bool row_simulated(const Row& rx, const Row& ry, const std::vector<char>& rel, int n) {
    for (const auto& [o, x2] : rx) {
        bool matched = false;
        for (const auto& [o2, y2] : ry) {
            if (o2 != o) continue;
            if (rel[static_cast<std::size_t>(x2) * n + y2]) {
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace

Partition bff_bisim_naive(const FiniteDialgebra& d) {
    const int n = d.n_states();
    if (n == 0) return Partition{};
    std::vector<char> rel(static_cast<std::size_t>(n) * n, 1);
    std::vector<Experiment> exps = d.experiments();

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<char> next = rel;
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                if (!rel[static_cast<std::size_t>(x) * n + y]) continue;
                bool ok = true;
                const auto& shapes = d.signature().shapes;
                for (int s = 0; ok && s < static_cast<int>(shapes.size()); ++s) {
                    for (int a = 0; ok && a < static_cast<int>(shapes[s].params.size());
                         ++a) {
                        const Row& rx = d.row(s, a, x);
                        const Row& ry = d.row(s, a, y);
                        ok = row_simulated(rx, ry, rel, n) &&
                             row_simulated(ry, rx, rel, n);
                    }
                }
                if (!ok) {
                    next[static_cast<std::size_t>(x) * n + y] = 0;
                    next[static_cast<std::size_t>(y) * n + x] = 0;
                    changed = true;
                }
            }
        }
        rel = std::move(next);
    }

    // The fixpoint is an equivalence; read off blocks by representatives.
    std::vector<int> block_of(n, -1);
    int next_block = 0;
    for (int x = 0; x < n; ++x) {
        if (block_of[x] >= 0) continue;
        block_of[x] = next_block;
        for (int y = x + 1; y < n; ++y)
            if (block_of[y] < 0 && rel[static_cast<std::size_t>(x) * n + y])
                block_of[y] = next_block;
        ++next_block;
    }
    return Partition::from_block_of(block_of);
}

Partition bff_bisim_pr(const FiniteDialgebra& d) {
    InducedLts lts = induced_lts(d);
    return refine_lts(lts.n_states, static_cast<int>(lts.labels.size()), lts.edges);
}

// ── Quotient ────────────────────────────────────────────────────────────────

namespace {

Row lift_row(const Row& row, const Partition& p) {
    Row out;
    out.reserve(row.size());
    for (const auto& [o, nxt] : row) out.emplace_back(o, p.block_of(nxt));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::optional<QuotientViolation> check_quotient_well_defined(const FiniteDialgebra& d,
                                                             const Partition& p) {
    if (p.n_states() != d.n_states())
        throw std::invalid_argument("partition does not cover the dialgebra states");
    const auto& shapes = d.signature().shapes;
    for (const auto& block : p.blocks()) {
        int rep = block.front();
        for (int s = 0; s < static_cast<int>(shapes.size()); ++s) {
            for (int a = 0; a < static_cast<int>(shapes[s].params.size()); ++a) {
                Row lifted_rep = lift_row(d.row(s, a, rep), p);
                for (std::size_t i = 1; i < block.size(); ++i) {
                    if (lift_row(d.row(s, a, block[i]), p) != lifted_rep)
                        return QuotientViolation{rep, block[i], s, a};
                }
            }
        }
    }
    return std::nullopt;
}

QuotientResult quotient(const FiniteDialgebra& d, const Partition& p) {
    if (auto v = check_quotient_well_defined(d, p)) {
        const auto& shape = d.signature().shapes[v->shape];
        std::ostringstream os;
        os << "quotient is not well defined: states \"" << d.state_payload(v->state_x)
           << "\" and \"" << d.state_payload(v->state_y)
           << "\" are related but disagree on experiment " << shape.id << "("
           << shape.params[v->param] << ")";
        throw std::invalid_argument(os.str());
    }

    // Block payloads come from the least member, which names the block.
    std::vector<std::string> states;
    states.reserve(p.n_blocks());
    for (const auto& block : p.blocks()) states.push_back(d.state_payload(block.front()));

    const auto& shapes = d.signature().shapes;
    std::vector<std::vector<std::vector<Row>>> rows(shapes.size());
    for (int s = 0; s < static_cast<int>(shapes.size()); ++s) {
        rows[s].assign(shapes[s].params.size(), std::vector<Row>(p.n_blocks()));
        for (int a = 0; a < static_cast<int>(shapes[s].params.size()); ++a)
            for (int b = 0; b < p.n_blocks(); ++b)
                rows[s][a][b] = lift_row(d.row(s, a, p.block(b).front()), p);
    }

    FiniteDialgebra q(std::move(states), d.signature(), d.obs_alphabet(),
                      std::move(rows));
    std::vector<int> map(d.n_states());
    for (int x = 0; x < d.n_states(); ++x) map[x] = p.block_of(x);
    return {q, StateMap{d, q, std::move(map)}};
}

// ── Homomorphism and kernel ─────────────────────────────────────────────────

HomomorphismCheck check_homomorphism(const StateMap& h) {
    if (h.dom.signature() != h.cod.signature())
        throw std::invalid_argument("homomorphism check: signatures differ");
    if (h.dom.obs_alphabet() != h.cod.obs_alphabet())
        throw std::invalid_argument("homomorphism check: observation alphabets differ");
    if (static_cast<int>(h.map.size()) != h.dom.n_states())
        throw std::invalid_argument("homomorphism check: map is not total");
    for (int img : h.map)
        if (img < 0 || img >= h.cod.n_states())
            throw std::invalid_argument("homomorphism check: image out of range");

    for (const Experiment& e : h.dom.experiments()) {
        Row pushed;
        for (const auto& [o, nxt] : h.dom.row(e)) pushed.emplace_back(o, h.map[nxt]);
        std::sort(pushed.begin(), pushed.end());
        pushed.erase(std::unique(pushed.begin(), pushed.end()), pushed.end());
        if (pushed != h.cod.row(e.shape, e.param, h.map[e.state]))
            return {false, e};
    }
    return {true, std::nullopt};
}

bool is_homomorphism(const StateMap& h) { return check_homomorphism(h).ok; }

Partition kernel(const StateMap& h) {
    return Partition::from_block_of(h.map);
}

// ── Serialization ───────────────────────────────────────────────────────────

std::string dialgebra_to_json(const FiniteDialgebra& d) {
    json j;
    j["states"] = d.states();
    j["shapes"] = json::array();
    for (const auto& shape : d.signature().shapes)
        j["shapes"].push_back({{"id", shape.id}, {"params", shape.params}});
    j["obs"] = d.obs_alphabet();
    j["trans"] = json::array();
    const auto& shapes = d.signature().shapes;
    for (int s = 0; s < static_cast<int>(shapes.size()); ++s) {
        for (int a = 0; a < static_cast<int>(shapes[s].params.size()); ++a) {
            for (int x = 0; x < d.n_states(); ++x) {
                json out = json::array();
                for (const auto& [o, nxt] : d.row(s, a, x))
                    out.push_back({{"obs", d.obs_alphabet()[o]}, {"next", nxt}});
                j["trans"].push_back({{"shape", shapes[s].id},
                                      {"param", shapes[s].params[a]},
                                      {"state", x},
                                      {"out", std::move(out)}});
            }
        }
    }
    return j.dump();
}

FiniteDialgebra dialgebra_from_json(const std::string& text) {
    json j = json::parse(text);
    DialgebraBuilder b;
    for (const auto& s : j.at("states")) b.add_state(s.get<std::string>());
    InteractionSignature sig;
    for (const auto& sh : j.at("shapes"))
        sig.shapes.push_back({sh.at("id").get<std::string>(),
                              sh.at("params").get<std::vector<std::string>>()});
    for (const auto& sh : sig.shapes) b.add_shape(sh.id, sh.params);
    std::vector<std::string> obs = j.at("obs").get<std::vector<std::string>>();
    std::map<std::string, int> obs_ids;
    for (const auto& o : obs) obs_ids.emplace(o, b.add_obs(o));
    for (const auto& t : j.at("trans")) {
        auto shape = sig.find_shape(t.at("shape").get<std::string>());
        if (!shape) throw std::invalid_argument("unknown shape in trans entry");
        const auto& params = sig.shapes[*shape].params;
        auto pit = std::find(params.begin(), params.end(),
                             t.at("param").get<std::string>());
        if (pit == params.end())
            throw std::invalid_argument("unknown param in trans entry");
        Row row;
        for (const auto& e : t.at("out")) {
            auto oit = obs_ids.find(e.at("obs").get<std::string>());
            if (oit == obs_ids.end())
                throw std::invalid_argument("unknown observation in trans entry");
            row.emplace_back(oit->second, e.at("next").get<int>());
        }
        b.set_row(*shape, static_cast<int>(pit - params.begin()),
                  t.at("state").get<int>(), std::move(row));
    }
    return b.build();
}

std::string dialgebra_to_dot(const FiniteDialgebra& d) {
    std::ostringstream os;
    os << "digraph dialgebra {\n  rankdir=LR;\n";
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        return out;
    };
    for (int x = 0; x < d.n_states(); ++x)
        os << "  s" << x << " [label=\"" << escape(d.state_payload(x)) << "\"];\n";
    const auto& shapes = d.signature().shapes;
    for (int s = 0; s < static_cast<int>(shapes.size()); ++s)
        for (int a = 0; a < static_cast<int>(shapes[s].params.size()); ++a)
            for (int x = 0; x < d.n_states(); ++x)
                for (const auto& [o, nxt] : d.row(s, a, x))
                    os << "  s" << x << " -> s" << nxt << " [label=\""
                       << escape(shapes[s].id + "(" + shapes[s].params[a] + ")/" +
                                 d.obs_alphabet()[o])
                       << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace ccsdial
