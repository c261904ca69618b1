#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hsgw {

// Finite rooted ordered tree. Nodes are numbered in depth-first (lexicographic) order,
// node 0 is the root, and the children of each node are a contiguous slice of one array.
class Tree
{
public:
    using Index = std::uint32_t;
    static constexpr Index no_parent = ~Index{0};

    Tree();   // single node
    // preorder out-degrees; throws FormatError unless they describe exactly one tree
    static Tree from_degrees(std::span<const std::int64_t> degrees);

    std::size_t size() const { return degree_.size(); }
    std::size_t height() const { return height_; }
    std::size_t max_degree() const { return max_degree_; }

    std::size_t degree(Index u) const { return degree_[u]; }
    Index parent(Index u) const { return parent_[u]; }
    std::span<const Index> children(Index u) const
    {
        return {children_.data() + child_offset_[u], degree_[u]};
    }
    std::size_t depth(Index u) const { return depth_[u]; }
    std::size_t subtree_size(Index u) const { return subtree_size_[u]; }

    std::vector<std::int64_t> degrees() const { return {degree_.begin(), degree_.end()}; }

    bool operator==(const Tree& o) const { return degree_ == o.degree_; }

private:
    std::vector<Index> degree_;
    std::vector<Index> parent_;
    std::vector<Index> child_offset_;
    std::vector<Index> children_;
    std::vector<Index> depth_;
    std::vector<Index> subtree_size_;
    std::size_t height_ = 0;
    std::size_t max_degree_ = 0;
};

// Strahler number of every subtree theta_u t, indexed by node
std::vector<int> strahler_numbers(const Tree& t);
int strahler(const Tree& t);

// remove the leaves, then merge every line into one edge
Tree horton_prune(const Tree& t);
// merge every line (maximal chain of out-degree-1 nodes) into one edge
Tree merge_lines(const Tree& t);
Tree remove_leaves(const Tree& t);
int strahler_via_pruning(const Tree& t);

// true iff the perfect binary tree of height n embeds into t
bool embeds_perfect_binary(const Tree& t, int n);
// largest such n
int max_embedded_perfect_binary(const Tree& t);

Tree mirror(const Tree& t);
// first min(m + 1, #t) vertices in depth-first order
Tree restrict_prefix(const Tree& t, std::size_t m);
// theta_u t: the subtree rooted at u
Tree subtree(const Tree& t, Tree::Index u);
// Cut_u t: t with the descendants of u removed
Tree cut_below(const Tree& t, Tree::Index u);

// max height of a vertex u with S(theta_u t) = S(t)
std::size_t z_statistic(const Tree& t);

Tree perfect_binary_tree(int n);
Tree path_tree(std::size_t edges);
Tree star_tree(std::size_t nodes);

} // namespace hsgw
