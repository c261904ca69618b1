#pragma once

#include "hsgw/tree.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hsgw {

struct TreeStats
{
    std::int64_t size = 0;
    std::int64_t height = 0;
    std::int64_t max_degree = 0;
    int strahler = 0;
    std::int64_t z = 0;   // deepest vertex whose subtree has the full Strahler number

    bool operator==(const TreeStats&) const = default;
};

// Size, height, max degree, Strahler number and Z of a tree fed as preorder out-degrees,
// without storing the tree: memory is O(height).
// With stop_above = m the stream stops as soon as S > m is certain.
class StrahlerStream
{
public:
    explicit StrahlerStream(std::optional<int> stop_above = std::nullopt) : stop_above_(stop_above) {}

    // returns true once the tree is complete or the stop rule fired
    bool push(std::int64_t degree);

    bool complete() const { return complete_; }
    bool stopped() const { return stopped_; }
    bool finished() const { return complete_ || stopped_; }
    std::int64_t nodes() const { return stats_.size; }

    // for an unfinished or stopped stream, strahler is that of the prefix tree (a lower bound)
    TreeStats stats() const;
    int prefix_strahler() const;

    void reset();

private:
    struct Frame
    {
        std::int64_t remaining;
        std::int64_t depth;
        int best;
        int count;
        std::int64_t z_best;
    };

    void finish_child(int s, std::int64_t z);

    std::optional<int> stop_above_;
    std::vector<Frame> stack_;
    TreeStats stats_;
    bool complete_ = false;
    bool stopped_ = false;
};

TreeStats tree_stats(const Tree& t);

} // namespace hsgw
