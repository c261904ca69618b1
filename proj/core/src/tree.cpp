#include "hsgw/tree.hpp"

#include "hsgw/error.hpp"

#include <algorithm>
#include <limits>

namespace hsgw {

Tree::Tree() : degree_{0}, parent_{no_parent}, child_offset_{0, 0}, depth_{0}, subtree_size_{1} {}

Tree Tree::from_degrees(std::span<const std::int64_t> degrees)
{
    const std::size_t n = degrees.size();
    if (n == 0) throw FormatError("tree: empty degree sequence", 0);
    if (n >= std::numeric_limits<Index>::max()) throw ResourceError("tree: too many nodes");
    // Lukasiewicz walk must stay >= 0 until the last node and end at -1
    std::int64_t w = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (degrees[i] < 0) throw FormatError("tree: negative out-degree", i);
        w += degrees[i] - 1;
        if (w < 0 && i + 1 < n) throw FormatError("tree: degree sequence ends before the last node", i);
    }
    if (w != -1) throw FormatError("tree: degree sequence leaves unfinished nodes", n - 1);

    Tree t;
    t.degree_.resize(n);
    t.parent_.assign(n, no_parent);
    t.child_offset_.assign(n + 1, 0);
    t.children_.resize(n - 1);
    t.depth_.assign(n, 0);
    t.subtree_size_.assign(n, 1);
    t.height_ = 0;
    t.max_degree_ = 0;
    for (std::size_t i = 0; i < n; ++i) {
        t.degree_[i] = static_cast<Index>(degrees[i]);
        t.child_offset_[i + 1] = t.child_offset_[i] + t.degree_[i];
        t.max_degree_ = std::max<std::size_t>(t.max_degree_, t.degree_[i]);
    }
    std::vector<Index> fill(t.child_offset_.begin(), t.child_offset_.end() - 1);
    std::vector<Index> open;   // nodes with children still to come
    if (t.degree_[0] > 0) open.push_back(0);
    for (Index i = 1; i < n; ++i) {
        const Index p = open.back();
        t.parent_[i] = p;
        t.children_[fill[p]++] = i;
        if (fill[p] == t.child_offset_[p + 1]) open.pop_back();
        t.depth_[i] = t.depth_[p] + 1;
        t.height_ = std::max<std::size_t>(t.height_, t.depth_[i]);
        if (t.degree_[i] > 0) open.push_back(i);
    }
    for (Index i = static_cast<Index>(n); i-- > 1;) t.subtree_size_[t.parent_[i]] += t.subtree_size_[i];
    return t;
}

std::vector<int> strahler_numbers(const Tree& t)
{
    const auto n = static_cast<Tree::Index>(t.size());
    std::vector<int> s(n, 0);
    for (Tree::Index u = n; u-- > 0;) {
        int best = -1, count = 0;
        for (auto c : t.children(u)) {
            if (s[c] > best) {
                best = s[c];
                count = 1;
            } else if (s[c] == best) {
                ++count;
            }
        }
        s[u] = best < 0 ? 0 : (count >= 2 ? best + 1 : best);
    }
    return s;
}

int strahler(const Tree& t) { return strahler_numbers(t).front(); }

Tree remove_leaves(const Tree& t)
{
    if (t.size() == 1) return t;
    std::vector<std::int64_t> deg;
    deg.reserve(t.size());
    for (Tree::Index u = 0; u < t.size(); ++u) {
        if (t.degree(u) == 0) continue;
        std::int64_t k = 0;
        for (auto c : t.children(u)) k += t.degree(c) > 0;
        deg.push_back(k);
    }
    return Tree::from_degrees(deg);
}

Tree merge_lines(const Tree& t)
{
    std::vector<std::int64_t> deg;
    deg.reserve(t.size());
    std::vector<Tree::Index> stack{0};
    while (!stack.empty()) {
        Tree::Index u = stack.back();
        stack.pop_back();
        while (t.degree(u) == 1) u = t.children(u)[0];
        deg.push_back(static_cast<std::int64_t>(t.degree(u)));
        const auto ch = t.children(u);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return Tree::from_degrees(deg);
}

Tree horton_prune(const Tree& t) { return merge_lines(remove_leaves(t)); }

int strahler_via_pruning(const Tree& t)
{
    Tree cur = merge_lines(t);
    int n = 0;
    while (cur.size() > 1) {
        cur = horton_prune(cur);
        ++n;
    }
    return n;
}

namespace {

// level[u] = true iff the perfect binary tree of height `level` embeds into theta_u t
std::vector<std::vector<char>> embedding_table(const Tree& t, int n)
{
    const auto size = static_cast<Tree::Index>(t.size());
    std::vector<std::vector<char>> e(static_cast<std::size_t>(n) + 1, std::vector<char>(size, 0));
    std::fill(e[0].begin(), e[0].end(), 1);
    for (int l = 1; l <= n; ++l) {
        auto& cur = e[l];
        const auto& prev = e[l - 1];
        for (Tree::Index u = size; u-- > 0;) {
            int below = 0;
            bool inside = false;
            for (auto c : t.children(u)) {
                below += prev[c];
                inside = inside || cur[c];
            }
            cur[u] = inside || below >= 2;
        }
    }
    return e;
}

} // namespace

bool embeds_perfect_binary(const Tree& t, int n)
{
    if (n < 0) throw ParameterError("embeds_perfect_binary: n must be >= 0");
    if (n == 0) return true;
    if (n >= 63 || (std::size_t{1} << (n + 1)) - 1 > t.size()) return false;
    return embedding_table(t, n)[n][0] != 0;
}

int max_embedded_perfect_binary(const Tree& t)
{
    int n = 0;
    while (embeds_perfect_binary(t, n + 1)) ++n;
    return n;
}

Tree mirror(const Tree& t)
{
    std::vector<std::int64_t> deg;
    deg.reserve(t.size());
    std::vector<Tree::Index> stack{0};
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        deg.push_back(static_cast<std::int64_t>(t.degree(u)));
        for (auto c : t.children(u)) stack.push_back(c);
    }
    return Tree::from_degrees(deg);
}

Tree restrict_prefix(const Tree& t, std::size_t m)
{
    const std::size_t keep = std::min(m + 1, t.size());
    std::vector<std::int64_t> deg(keep);
    for (Tree::Index u = 0; u < keep; ++u) {
        std::int64_t k = 0;
        for (auto c : t.children(u)) k += c < keep;
        deg[u] = k;
    }
    return Tree::from_degrees(deg);
}

Tree subtree(const Tree& t, Tree::Index u)
{
    if (u >= t.size()) throw ParameterError("subtree: node out of range");
    std::vector<std::int64_t> deg(t.subtree_size(u));
    for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = static_cast<std::int64_t>(t.degree(u + static_cast<Tree::Index>(i)));
    return Tree::from_degrees(deg);
}

Tree cut_below(const Tree& t, Tree::Index u)
{
    if (u >= t.size()) throw ParameterError("cut_below: node out of range");
    std::vector<std::int64_t> deg;
    deg.reserve(t.size() - t.subtree_size(u) + 1);
    for (Tree::Index v = 0; v < t.size(); ++v) {
        if (v == u) {
            deg.push_back(0);
            v += static_cast<Tree::Index>(t.subtree_size(u)) - 1;
            continue;
        }
        deg.push_back(static_cast<std::int64_t>(t.degree(v)));
    }
    return Tree::from_degrees(deg);
}

std::size_t z_statistic(const Tree& t)
{
    const auto s = strahler_numbers(t);
    Tree::Index u = 0;
    // the vertices with S(theta_u t) = S(t) form a path from the root
    while (true) {
        Tree::Index next = Tree::no_parent;
        int hits = 0;
        for (auto c : t.children(u)) {
            if (s[c] == s[u]) {
                next = c;
                ++hits;
            }
        }
        if (hits != 1) return t.depth(u);
        u = next;
    }
}

Tree perfect_binary_tree(int n)
{
    if (n < 0 || n > 24) throw ParameterError("perfect_binary_tree: n must lie in [0,24]");
    // preorder: internal nodes have degree 2 down to depth n-1
    std::vector<std::int64_t> deg;
    deg.reserve((std::size_t{1} << (n + 1)) - 1);
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int d = stack.back();
        stack.pop_back();
        if (d < n) {
            deg.push_back(2);
            stack.push_back(d + 1);
            stack.push_back(d + 1);
        } else {
            deg.push_back(0);
        }
    }
    return Tree::from_degrees(deg);
}

Tree path_tree(std::size_t edges)
{
    std::vector<std::int64_t> deg(edges + 1, 1);
    deg.back() = 0;
    return Tree::from_degrees(deg);
}

Tree star_tree(std::size_t nodes)
{
    if (nodes == 0) throw ParameterError("star_tree: needs at least one node");
    std::vector<std::int64_t> deg(nodes, 0);
    deg[0] = static_cast<std::int64_t>(nodes) - 1;
    return Tree::from_degrees(deg);
}

} // namespace hsgw
