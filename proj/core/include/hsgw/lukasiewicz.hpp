#pragma once

#include "hsgw/tree.hpp"

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace hsgw {

// W_0 .. W_{#t}: W_0 = 0, W_{j+1} = W_j + k_{u_j} - 1, W_{#t} = -1
struct LukasiewiczPath
{
    std::vector<std::int64_t> values;

    std::size_t tree_size() const { return values.empty() ? 0 : values.size() - 1; }
    bool operator==(const LukasiewiczPath&) const = default;
};

LukasiewiczPath to_lukasiewicz(const Tree& t);
// throws FormatError at the index of the first violated constraint
Tree from_lukasiewicz(const LukasiewiczPath& w);
void validate_excursion(std::span<const std::int64_t> values);

// The walk W_{n-1} ended above 0, so no rotation yields a tree; the caller substitutes a star.
struct StarFlag
{
    bool operator==(const StarFlag&) const = default;
};

// Cyclic rotation of (W_0, ..., W_{n-1}, -1) started at the first minimum of W_0..W_{n-1}.
std::variant<LukasiewiczPath, StarFlag> vervaat(std::span<const std::int64_t> walk);

// Same rotation on a jump sequence given as out-degrees k_1..k_n with sum n - 1:
// returns the index at which the rotated sequence starts.
std::size_t vervaat_shift(std::span<const std::int64_t> degrees);

} // namespace hsgw
