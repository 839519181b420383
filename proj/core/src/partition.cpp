#include "ccsdial/partition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ccsdial {

// ── Partition ───────────────────────────────────────────────────────────────

void Partition::rebuild_canonical() {
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    std::sort(blocks_.begin(), blocks_.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
    for (int b = 0; b < static_cast<int>(blocks_.size()); ++b)
        for (int s : blocks_[b]) block_of_[s] = b;
}

Partition Partition::single_block(int n_states) {
    Partition p;
    p.block_of_.assign(n_states, 0);
    if (n_states > 0) {
        p.blocks_.emplace_back();
        for (int s = 0; s < n_states; ++s) p.blocks_[0].push_back(s);
    }
    return p;
}

Partition Partition::singletons(int n_states) {
    Partition p;
    p.block_of_.resize(n_states);
    p.blocks_.resize(n_states);
    for (int s = 0; s < n_states; ++s) {
        p.block_of_[s] = s;
        p.blocks_[s] = {s};
    }
    return p;
}

Partition Partition::from_block_of(const std::vector<int>& block_of) {
    Partition p;
    p.block_of_.assign(block_of.size(), -1);
    std::map<int, int> dense;  // original id -> dense block index
    for (std::size_t s = 0; s < block_of.size(); ++s) {
        auto [it, fresh] = dense.emplace(block_of[s], static_cast<int>(p.blocks_.size()));
        if (fresh) p.blocks_.emplace_back();
        p.blocks_[it->second].push_back(static_cast<int>(s));
    }
    p.rebuild_canonical();
    return p;
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.n_states() != n_states())
        throw std::invalid_argument("Partition::refines: state-count mismatch");
    for (const auto& b : blocks_)
        for (int s : b)
            if (!coarser.same_block(b.front(), s)) return false;
    return true;
}

bool Partition::operator==(const Partition& o) const noexcept {
    return blocks_ == o.blocks_;
}

// ── Refinement engine ───────────────────────────────────────────────────────

Partition refine_lts(int n_states, int /*n_labels*/,
                     const std::vector<std::array<int, 3>>& edges) {
    if (n_states == 0) return Partition{};

    // Reverse adjacency: for each target state, its (label, source) pairs.
    std::vector<std::vector<std::pair<int, int>>> rev(n_states);
    for (const auto& e : edges) rev[e[2]].emplace_back(e[1], e[0]);
    for (auto& v : rev) std::sort(v.begin(), v.end());

    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of(n_states, 0);
    blocks.emplace_back();
    for (int s = 0; s < n_states; ++s) blocks[0].push_back(s);

    std::deque<int> worklist{0};
    std::vector<char> queued{1};

    auto push = [&](int b) {
        if (static_cast<std::size_t>(b) >= queued.size()) queued.resize(b + 1, 0);
        if (!queued[b]) {
            queued[b] = 1;
            worklist.push_back(b);
        }
    };

    std::vector<char> marked(n_states, 0);
    std::vector<int> mark_count;  // per block, states marked by the splitter

    while (!worklist.empty()) {
        int splitter = worklist.front();
        worklist.pop_front();
        queued[splitter] = 0;

        // Snapshot: the splitter's own members may move while splitting.
        std::vector<int> members = blocks[splitter];

        // Incoming (label, source) pairs of the splitter, grouped by label.
        std::vector<std::pair<int, int>> incoming;
        for (int t : members)
            incoming.insert(incoming.end(), rev[t].begin(), rev[t].end());
        std::sort(incoming.begin(), incoming.end());

        std::size_t i = 0;
        while (i < incoming.size()) {
            int label = incoming[i].first;
            std::size_t range_begin = i;
            std::vector<int> touched;
            for (; i < incoming.size() && incoming[i].first == label; ++i) {
                int s = incoming[i].second;
                if (marked[s]) continue;
                marked[s] = 1;
                int c = block_of[s];
                if (static_cast<std::size_t>(c) >= mark_count.size())
                    mark_count.resize(blocks.size(), 0);
                if (mark_count[c]++ == 0) touched.push_back(c);
            }
            std::sort(touched.begin(), touched.end());

            for (int c : touched) {
                if (mark_count[c] == static_cast<int>(blocks[c].size())) continue;
                // Proper split: marked members move to a fresh block.
                int nb = static_cast<int>(blocks.size());
                std::vector<int> stay;
                std::vector<int> move;
                for (int s : blocks[c]) (marked[s] ? move : stay).push_back(s);
                blocks[c] = std::move(stay);
                blocks.push_back(std::move(move));
                for (int s : blocks[nb]) block_of[s] = nb;
                mark_count.resize(blocks.size(), 0);
                push(c);
                push(nb);
            }
            for (int c : touched) mark_count[c] = 0;
            for (std::size_t j = range_begin; j < i; ++j)
                marked[incoming[j].second] = 0;
        }
    }

    std::vector<int> assign(n_states);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        for (int s : blocks[b]) assign[s] = b;
    return Partition::from_block_of(assign);
}

std::string partition_to_json(const Partition& p) {
    std::ostringstream os;
    os << "[";
    for (int b = 0; b < p.n_blocks(); ++b) {
        if (b) os << ",";
        os << "[";
        const auto& members = p.block(b);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i) os << ",";
            os << members[i];
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace ccsdial
