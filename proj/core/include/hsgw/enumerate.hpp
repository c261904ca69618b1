#pragma once

#include "hsgw/tree.hpp"

#include <cstdint>
#include <iterator>
#include <vector>

namespace hsgw {

// All ordered rooted trees with n vertices (Catalan(n-1) of them), 1 <= n <= 12,
// in lexicographic order of their preorder degree sequences.
class TreeEnumerator
{
public:
    static constexpr int max_size = 12;

    explicit TreeEnumerator(int n);

    class iterator
    {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Tree;
        using difference_type = std::ptrdiff_t;
        using pointer = const Tree*;
        using reference = const Tree&;

        iterator() = default;
        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator& o) const { return done_ == o.done_; }

    private:
        friend class TreeEnumerator;
        explicit iterator(int n);
        std::vector<std::int64_t> degrees_;
        Tree current_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(n_); }
    iterator end() const { return {}; }

private:
    int n_;
};

std::vector<Tree> enumerate_trees(int n);
std::uint64_t catalan(int m);

} // namespace hsgw
