#include "hsgw/enumerate.hpp"

#include "hsgw/error.hpp"

namespace hsgw {

namespace {

// smallest valid completion of positions [from, n) starting from walk value w >= 0:
// w zeros, then ones, then a final zero
void complete_smallest(std::vector<std::int64_t>& d, std::size_t from, std::int64_t w)
{
    const std::size_t n = d.size();
    std::size_t i = from;
    for (std::int64_t z = 0; z < w; ++z) d[i++] = 0;
    while (i + 1 < n) d[i++] = 1;
    d[n - 1] = 0;
}

} // namespace

TreeEnumerator::TreeEnumerator(int n) : n_(n)
{
    if (n < 1 || n > max_size) throw ParameterError("enumerate_trees: n must lie in [1,12]");
}

TreeEnumerator::iterator::iterator(int n) : degrees_(static_cast<std::size_t>(n)), done_(false)
{
    complete_smallest(degrees_, 0, 0);
    if (n == 1) degrees_[0] = 0;
    current_ = Tree::from_degrees(degrees_);
}

TreeEnumerator::iterator& TreeEnumerator::iterator::operator++()
{
    const std::size_t n = degrees_.size();
    // walk values before each position
    std::vector<std::int64_t> w(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) w[i + 1] = w[i] + degrees_[i] - 1;
    // rightmost position whose increment still admits a completion
    for (std::size_t i = n - 1; i-- > 0;) {
        const std::int64_t next = w[i] + degrees_[i];   // walk after raising d_i by one
        const auto remaining = static_cast<std::int64_t>(n - 1 - i);
        if (next + 1 <= remaining) {
            ++degrees_[i];
            complete_smallest(degrees_, i + 1, next);
            current_ = Tree::from_degrees(degrees_);
            return *this;
        }
    }
    done_ = true;
    return *this;
}

std::vector<Tree> enumerate_trees(int n)
{
    std::vector<Tree> out;
    for (const auto& t : TreeEnumerator(n)) out.push_back(t);
    return out;
}

std::uint64_t catalan(int m)
{
    std::uint64_t c = 1;
    for (int k = 0; k < m; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

} // namespace hsgw
