#include "hsgw/tree_text.hpp"

#include "hsgw/error.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>

namespace hsgw {

LukasiewiczPath parse_lukasiewicz_line(std::string_view line)
{
    LukasiewiczPath w;
    std::vector<std::size_t> offsets;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
        const auto end = static_cast<std::size_t>(ptr - line.data());
        if (ec != std::errc() || (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))))
            throw FormatError("lukasiewicz line: expected an integer", i);
        w.values.push_back(v);
        offsets.push_back(i);
        i = end;
    }
    try {
        validate_excursion(w.values);
    } catch (const FormatError& e) {
        const std::size_t at = e.position() < offsets.size() ? offsets[e.position()] : line.size();
        std::string msg = e.what();
        msg = msg.substr(0, msg.rfind(" (at position"));
        throw FormatError(msg, at);
    }
    return w;
}

std::string format_lukasiewicz_line(const LukasiewiczPath& w)
{
    std::string s;
    for (std::size_t j = 0; j < w.values.size(); ++j) {
        if (j) s += ' ';
        s += std::to_string(w.values[j]);
    }
    return s;
}

Tree parse_parentheses(std::string_view text)
{
    std::vector<std::int64_t> deg;
    std::vector<std::size_t> open;   // indices into deg of unclosed vertices
    bool done = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (done) throw FormatError("parentheses: trailing characters after the root closed", i);
        if (c == '(') {
            if (!open.empty()) ++deg[open.back()];
            else if (!deg.empty()) throw FormatError("parentheses: more than one root", i);
            open.push_back(deg.size());
            deg.push_back(0);
        } else if (c == ')') {
            if (open.empty()) throw FormatError("parentheses: unmatched ')'", i);
            open.pop_back();
            done = open.empty();
        } else {
            throw FormatError("parentheses: unexpected character", i);
        }
    }
    if (deg.empty()) throw FormatError("parentheses: empty tree", text.size());
    if (!open.empty()) throw FormatError("parentheses: unclosed '('", text.size());
    return Tree::from_degrees(deg);
}

std::string to_parentheses(const Tree& t)
{
    std::string s;
    s.reserve(2 * t.size());
    // iterative DFS: a negative entry closes a vertex
    std::vector<std::int64_t> stack{0};
    while (!stack.empty()) {
        const auto top = stack.back();
        stack.pop_back();
        if (top < 0) {
            s += ')';
            continue;
        }
        const auto u = static_cast<Tree::Index>(top);
        s += '(';
        stack.push_back(-1);
        const auto ch = t.children(u);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return s;
}

std::vector<Tree> read_lukasiewicz_stream(std::istream& in)
{
    std::vector<Tree> trees;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            trees.push_back(from_lukasiewicz(parse_lukasiewicz_line(line)));
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(lineno) + ": " + e.what(), e.position());
        }
    }
    return trees;
}

void write_lukasiewicz_stream(std::ostream& out, const std::vector<Tree>& trees)
{
    for (const auto& t : trees) out << format_lukasiewicz_line(to_lukasiewicz(t)) << '\n';
}

} // namespace hsgw
