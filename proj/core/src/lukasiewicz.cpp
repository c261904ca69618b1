#include "hsgw/lukasiewicz.hpp"

#include "hsgw/error.hpp"

#include <algorithm>

namespace hsgw {

LukasiewiczPath to_lukasiewicz(const Tree& t)
{
    LukasiewiczPath p;
    p.values.resize(t.size() + 1);
    p.values[0] = 0;
    for (Tree::Index u = 0; u < t.size(); ++u)
        p.values[u + 1] = p.values[u] + static_cast<std::int64_t>(t.degree(u)) - 1;
    return p;
}

void validate_excursion(std::span<const std::int64_t> w)
{
    if (w.size() < 2) throw FormatError("lukasiewicz: a path needs at least two values", w.size());
    if (w[0] != 0) throw FormatError("lukasiewicz: path must start at 0", 0);
    for (std::size_t j = 1; j < w.size(); ++j) {
        if (w[j] - w[j - 1] < -1) throw FormatError("lukasiewicz: jump below -1", j);
        const bool last = j + 1 == w.size();
        if (!last && w[j] < 0) throw FormatError("lukasiewicz: path goes negative before the end", j);
        if (last && w[j] != -1) throw FormatError("lukasiewicz: path must end at -1", j);
    }
}

Tree from_lukasiewicz(const LukasiewiczPath& w)
{
    validate_excursion(w.values);
    std::vector<std::int64_t> deg(w.values.size() - 1);
    for (std::size_t j = 0; j < deg.size(); ++j) deg[j] = w.values[j + 1] - w.values[j] + 1;
    return Tree::from_degrees(deg);
}

std::variant<LukasiewiczPath, StarFlag> vervaat(std::span<const std::int64_t> walk)
{
    const std::size_t n = walk.size();
    if (n == 0) throw FormatError("vervaat: empty walk", 0);
    if (walk[0] != 0) throw FormatError("vervaat: walk must start at 0", 0);
    for (std::size_t j = 1; j < n; ++j)
        if (walk[j] - walk[j - 1] < -1) throw FormatError("vervaat: jump below -1", j);
    if (walk[n - 1] > 0) return StarFlag{};

    const auto min_it = std::min_element(walk.begin(), walk.end());   // first minimum
    const std::int64_t level = -*min_it;
    const auto sigma = static_cast<std::size_t>(min_it - walk.begin());
    LukasiewiczPath z;
    z.values.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        if (j < n - sigma)
            z.values[j] = walk[sigma + j] + level;
        else
            z.values[j] = level - 1 + walk[j - (n - sigma)];   // index <= sigma <= n - 1
    }
    validate_excursion(z.values);
    return z;
}

std::size_t vervaat_shift(std::span<const std::int64_t> degrees)
{
    std::int64_t w = 0, best = 0;
    std::size_t arg = 0;
    // W_j for j = 0 .. n-1; the first minimum is where the rotation starts
    for (std::size_t j = 0; j + 1 < degrees.size(); ++j) {
        w += degrees[j] - 1;
        if (w < best) {
            best = w;
            arg = j + 1;
        }
    }
    return arg;
}

} // namespace hsgw
