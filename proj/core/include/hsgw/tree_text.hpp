#pragma once

#include "hsgw/lukasiewicz.hpp"
#include "hsgw/tree.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hsgw {

// "0 1 0 -1": one excursion per line. FormatError positions are character offsets in the line.
LukasiewiczPath parse_lukasiewicz_line(std::string_view line);
std::string format_lukasiewicz_line(const LukasiewiczPath& w);

// "(()())": every vertex is "(" followed by its children and ")"
Tree parse_parentheses(std::string_view text);
std::string to_parentheses(const Tree& t);

// whole streams; blank lines and lines starting with '#' are skipped
std::vector<Tree> read_lukasiewicz_stream(std::istream& in);
void write_lukasiewicz_stream(std::ostream& out, const std::vector<Tree>& trees);

} // namespace hsgw
