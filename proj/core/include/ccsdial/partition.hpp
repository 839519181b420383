// ============================================================================
// ccsdial/partition.hpp — partitions of finite state sets, and the splitter
// based partition-refinement engine both bisimilarity checkers share.
// ============================================================================

#ifndef CCSDIAL_PARTITION_HPP
#define CCSDIAL_PARTITION_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace ccsdial {

// ── Partition ───────────────────────────────────────────────────────────────
// Blocks are disjoint, nonempty, and cover 0..n-1. The canonical form numbers
// blocks by least member and keeps members sorted, so two partitions are equal
// exactly when they induce the same equivalence.

class Partition {
public:
    Partition() = default;

    static Partition single_block(int n_states);
    static Partition singletons(int n_states);
    /// Builds a partition from block assignments (values need not be dense).
    static Partition from_block_of(const std::vector<int>& block_of);

    int n_states() const noexcept { return static_cast<int>(block_of_.size()); }
    int n_blocks() const noexcept { return static_cast<int>(blocks_.size()); }

    int block_of(int state) const { return block_of_[state]; }
    const std::vector<int>& block(int b) const { return blocks_[b]; }
    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }

    bool same_block(int x, int y) const { return block_of_[x] == block_of_[y]; }
    bool all_singletons() const noexcept { return n_blocks() == n_states(); }

    /// True when every block of *this is contained in a block of coarser.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition& o) const noexcept;

private:
    std::vector<std::vector<int>> blocks_;  // canonical: by least member, sorted
    std::vector<int> block_of_;

    void rebuild_canonical();
};

// ── Partition refinement ────────────────────────────────────────────────────
// Kanellakis-Smolka style refinement of a labelled transition relation given
// as (src, label, dst) triples over states 0..n-1 with dense integer labels.
// Starting from the single block, blocks are repeatedly split against a
// worklist of (splitter block, label) pairs until stable. Deterministic:
// the worklist is FIFO, labels ascend, blocks split in ascending order.
//
// The result is the coarsest strong-bisimulation partition of the graph.

Partition refine_lts(int n_states, int n_labels,
                     const std::vector<std::array<int, 3>>& edges);

/// JSON form: array of blocks, each an array of state indices.
std::string partition_to_json(const Partition& p);

}  // namespace ccsdial

#endif  // CCSDIAL_PARTITION_HPP
