#include "support.hpp"

#include "hsgw/enumerate.hpp"
#include "hsgw/error.hpp"
#include "hsgw/lukasiewicz.hpp"
#include "hsgw/model_io.hpp"
#include "hsgw/sampler.hpp"
#include "hsgw/summary.hpp"
#include "hsgw/tree.hpp"
#include "hsgw/tree_text.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using namespace hsgw;

namespace {

using hsgw::test::random_trees;

Tree cherry() { return parse_parentheses("(()())"); }

// right side of the bound S(t) <= 1 + max(S(t_{<=u}), max{S(theta_v t) : parent(v) ancestor-or-self of u, v > u})
int prefix_bound(const Tree& t, const std::vector<int>& s, Tree::Index u)
{
    int best = strahler(restrict_prefix(t, u));
    for (Tree::Index a = u;; a = t.parent(a)) {
        for (Tree::Index v : t.children(a))
            if (v > u) best = std::max(best, s[v]);
        if (a == 0) break;
    }
    return 1 + best;
}

} // namespace

TEST_SUITE("tree")
{
    TEST_CASE("Strahler number of small shapes")
    {
        CHECK(strahler(Tree()) == 0);
        for (int n = 0; n <= 10; ++n) CHECK(strahler(perfect_binary_tree(n)) == n);
        CHECK(strahler(path_tree(1)) == 0);
        CHECK(strahler(path_tree(50)) == 0);
        CHECK(strahler(cherry()) == 1);
        CHECK(strahler(star_tree(10)) == 1);
    }

    TEST_CASE("Strahler number of very deep trees does not recurse")
    {
        CHECK(strahler(path_tree(2'000'000)) == 0);
        // caterpillar: a path where every spine node also carries a leaf
        std::vector<std::int64_t> deg;
        for (int i = 0; i < 1'000'000; ++i) {
            deg.push_back(2);
            deg.push_back(0);
        }
        deg.push_back(0);
        const Tree t = Tree::from_degrees(deg);
        CHECK(t.height() == 1'000'000);
        CHECK(strahler(t) == 1);
        CHECK(strahler_via_pruning(t) == 1);
    }

    TEST_CASE("Horton pruning")
    {
        for (int n = 1; n <= 6; ++n) CHECK(horton_prune(perfect_binary_tree(n)) == perfect_binary_tree(n - 1));
        CHECK(horton_prune(path_tree(7)) == Tree());
        CHECK(horton_prune(cherry()) == Tree());
        CHECK(horton_prune(Tree()) == Tree());
        CHECK(strahler_via_pruning(Tree()) == 0);
        CHECK(strahler_via_pruning(perfect_binary_tree(3)) == 3);
        CHECK(merge_lines(path_tree(5)) == Tree());
        CHECK(merge_lines(parse_parentheses("((()()))")) == cherry());
    }

    TEST_CASE("embedding of perfect binary trees")
    {
        for (const Tree& t : {Tree(), cherry(), path_tree(4), perfect_binary_tree(3)}) CHECK(embeds_perfect_binary(t, 0));
        CHECK_FALSE(embeds_perfect_binary(perfect_binary_tree(2), 3));
        CHECK(embeds_perfect_binary(perfect_binary_tree(3), 3));
        CHECK(max_embedded_perfect_binary(star_tree(6)) == 1);
    }

    TEST_CASE("three Strahler algorithms agree on every tree with at most 12 nodes")
    {
        for (int n = 1; n <= TreeEnumerator::max_size; ++n) {
            for (const Tree& t : TreeEnumerator(n)) {
                const int s = strahler(t);
                REQUIRE(strahler_via_pruning(t) == s);
                REQUIRE(max_embedded_perfect_binary(t) == s);
            }
        }
    }

    TEST_CASE("Strahler and pruning agree on random trees")
    {
        for (const Tree& t : random_trees(1500, 1000, 21)) {
            const int s = strahler(t);
            REQUIRE(strahler_via_pruning(t) == s);
            REQUIRE(double(s) <= std::log2(double(t.size()) + 1));
            if (t.size() <= 20) REQUIRE(max_embedded_perfect_binary(t) == s);
        }
    }

    TEST_CASE("mirror image")
    {
        const Tree left = parse_parentheses("((())())");
        const Tree right = parse_parentheses("(()(()))");
        CHECK(mirror(left) == right);
        for (const Tree& t : random_trees(600, 500, 22)) {
            const Tree m = mirror(t);
            REQUIRE(mirror(m) == t);
            REQUIRE(strahler(m) == strahler(t));
            REQUIRE(m.size() == t.size());
            REQUIRE(m.height() == t.height());
            REQUIRE(m.max_degree() == t.max_degree());
        }
    }

    TEST_CASE("depth-first restriction")
    {
        const Tree t = perfect_binary_tree(3);
        CHECK(restrict_prefix(t, t.size() - 1) == t);
        CHECK(restrict_prefix(t, 1000) == t);
        CHECK(restrict_prefix(t, 0) == Tree());
        CHECK(restrict_prefix(cherry(), 1) == path_tree(1));
        // restriction is the tree of the first m + 1 Lukasiewicz steps
        const Tree big = random_trees(1, 300, 5).front();
        for (std::size_t m = 0; m < big.size(); m += 17) CHECK(restrict_prefix(big, m).size() == m + 1);
    }

    TEST_CASE("mirror/restriction bound holds for every admissible m")
    {
        for (const Tree& t : random_trees(300, 200, 23)) {
            const int s = strahler(t);
            const Tree m_t = mirror(t);
            const std::size_t first = (t.size() + t.height() + 1) / 2;
            for (std::size_t m = first; m <= t.size() + t.height(); m += 1 + t.size() / 10) {
                const int rhs = 1 + std::max(strahler(restrict_prefix(t, m)), strahler(restrict_prefix(m_t, m)));
                REQUIRE(s <= rhs);
            }
        }
    }

    TEST_CASE("prefix bound holds at every node of every tree with at most 10 nodes")
    {
        for (int n = 1; n <= 10; ++n) {
            for (const Tree& t : TreeEnumerator(n)) {
                const auto s = strahler_numbers(t);
                for (Tree::Index u = 0; u < t.size(); ++u) REQUIRE(s[0] <= prefix_bound(t, s, u));
            }
        }
    }

    TEST_CASE("cached size, height and degree match a recount")
    {
        for (const Tree& t : random_trees(300, 400, 24)) {
            std::size_t h = 0, d = 0;
            for (Tree::Index u = 0; u < t.size(); ++u) {
                h = std::max(h, t.depth(u));
                d = std::max(d, t.degree(u));
                if (u > 0) REQUIRE(t.parent(u) < u);
            }
            REQUIRE(t.height() == h);
            REQUIRE(t.max_degree() == d);
            const TreeStats st = tree_stats(t);
            REQUIRE(st.size == std::int64_t(t.size()));
            REQUIRE(st.height == std::int64_t(h));
            REQUIRE(st.strahler == strahler(t));
            REQUIRE(st.z == std::int64_t(z_statistic(t)));
        }
    }

    TEST_CASE("Z statistic")
    {
        CHECK(z_statistic(cherry()) == 0);
        CHECK(z_statistic(path_tree(2)) == 2);
        CHECK(z_statistic(Tree()) == 0);
        CHECK(z_statistic(parse_parentheses("(((()())))")) == 2);
    }

    TEST_CASE("subtree and cut")
    {
        const Tree t = parse_parentheses("((()())())");
        CHECK(subtree(t, 1) == cherry());
        CHECK(cut_below(t, 1) == cherry());
        CHECK(subtree(t, 0) == t);
    }

    TEST_CASE("Lukasiewicz codec")
    {
        CHECK(to_lukasiewicz(cherry()).values == std::vector<std::int64_t>{0, 1, 0, -1});
        CHECK(to_lukasiewicz(Tree()).values == std::vector<std::int64_t>{0, -1});
        for (const Tree& t : random_trees(3000, 1000, 25)) {
            const LukasiewiczPath w = to_lukasiewicz(t);
            REQUIRE(w.tree_size() == t.size());
            REQUIRE(from_lukasiewicz(w) == t);
            REQUIRE(to_lukasiewicz(from_lukasiewicz(w)) == w);
        }
    }

    TEST_CASE("invalid excursions report the first violated index")
    {
        auto position = [](std::vector<std::int64_t> v) -> std::size_t {
            try {
                from_lukasiewicz({std::move(v)});
            } catch (const FormatError& e) {
                return e.position();
            }
            return std::size_t(-1);
        };
        CHECK(position({1, 0, -1}) == 0);
        CHECK(position({0, -2}) == 1);
        CHECK(position({0, 1, -1, 0, -1}) == 2);
        CHECK(position({0, 1, 0}) == 2);
        CHECK(position({0}) == 1);
    }

    TEST_CASE("Vervaat rotation")
    {
        const std::vector<std::int64_t> w{0, -1, 0};
        CHECK(std::get<LukasiewiczPath>(vervaat(w)).values == std::vector<std::int64_t>{0, 1, 0, -1});
        const std::vector<std::int64_t> exc{0, 1, 0};
        CHECK(std::get<LukasiewiczPath>(vervaat(exc)).values == std::vector<std::int64_t>{0, 1, 0, -1});
        const std::vector<std::int64_t> up{0, 1};
        CHECK(std::holds_alternative<StarFlag>(vervaat(up)));
        const std::vector<std::int64_t> bad{0, -2};
        CHECK_THROWS_AS(vervaat(bad), FormatError);
    }

    TEST_CASE("Vervaat turns every jump sequence with sum -1 into a rotated excursion")
    {
        for (int n = 1; n <= 8; ++n) {
            std::vector<std::int64_t> x(std::size_t(n), -1);
            while (true) {
                std::int64_t sum = 0;
                for (auto v : x) sum += v;
                if (sum == -1) {
                    std::vector<std::int64_t> walk{0};
                    for (int j = 0; j + 1 < n; ++j) walk.push_back(walk.back() + x[std::size_t(j)]);
                    const auto r = vervaat(walk);
                    REQUIRE(std::holds_alternative<LukasiewiczPath>(r));
                    const auto& z = std::get<LukasiewiczPath>(r).values;
                    REQUIRE_NOTHROW(validate_excursion(z));
                    std::vector<std::int64_t> inc;
                    for (std::size_t j = 1; j < z.size(); ++j) inc.push_back(z[j] - z[j - 1]);
                    bool rotation = false;
                    for (int s = 0; s < n && !rotation; ++s)
                        rotation = std::equal(inc.begin(), inc.end() - s, x.begin() + s) &&
                                   std::equal(inc.end() - s, inc.end(), x.begin());
                    REQUIRE(rotation);
                    // degrees-only variant picks the same start
                    std::vector<std::int64_t> deg;
                    for (auto v : x) deg.push_back(v + 1);
                    const std::size_t shift = vervaat_shift(deg);
                    REQUIRE(std::equal(inc.begin(), inc.begin() + (n - std::ptrdiff_t(shift)), x.begin() + std::ptrdiff_t(shift)));
                }
                int i = 0;
                while (i < n && x[std::size_t(i)] == 2) x[std::size_t(i++)] = -1;
                if (i == n) break;
                ++x[std::size_t(i)];
            }
        }
    }

    TEST_CASE("enumeration counts are Catalan numbers")
    {
        CHECK(enumerate_trees(1).size() == 1);
        CHECK(enumerate_trees(4).size() == 5);
        CHECK(enumerate_trees(6).size() == 42);
        for (int n = 1; n <= 10; ++n) {
            std::set<std::vector<std::int64_t>> seen;
            for (const Tree& t : TreeEnumerator(n)) {
                REQUIRE(t.size() == std::size_t(n));
                seen.insert(t.degrees());
            }
            CHECK(seen.size() == catalan(n - 1));
        }
        CHECK_THROWS_AS(TreeEnumerator(0), ParameterError);
        CHECK_THROWS_AS(TreeEnumerator(13), ParameterError);
    }

    TEST_CASE("text formats")
    {
        const Tree t = parse_parentheses("((()())())");
        CHECK(to_parentheses(t) == "((()())())");
        CHECK(parse_lukasiewicz_line("0 1 0 -1") == to_lukasiewicz(cherry()));
        CHECK(format_lukasiewicz_line(to_lukasiewicz(cherry())) == "0 1 0 -1");

        auto line_error = [](std::string_view s) -> std::size_t {
            try {
                parse_lukasiewicz_line(s);
            } catch (const FormatError& e) {
                return e.position();
            }
            return std::size_t(-1);
        };
        CHECK(line_error("0 1 x -1") == 4);
        CHECK(line_error("0 1 -1 -1") == 4);
        CHECK(line_error(" 1 0 -1") == 1);

        auto paren_error = [](std::string_view s) -> std::size_t {
            try {
                parse_parentheses(s);
            } catch (const FormatError& e) {
                return e.position();
            }
            return std::size_t(-1);
        };
        CHECK(paren_error("(()") == 3);
        CHECK(paren_error("())") == 2);
        CHECK(paren_error("()()") == 2);
        CHECK(paren_error("(a)") == 1);
        CHECK(paren_error("") == 0);

        std::stringstream io;
        const auto trees = random_trees(30, 50, 26);
        write_lukasiewicz_stream(io, trees);
        std::stringstream in("# comment\n\n" + io.str());
        CHECK(read_lukasiewicz_stream(in) == trees);
    }

    TEST_CASE("malformed degree sequences are rejected")
    {
        const std::vector<std::int64_t> too_short{2, 0};
        const std::vector<std::int64_t> too_long{0, 0};
        const std::vector<std::int64_t> negative{-1};
        CHECK_THROWS_AS(Tree::from_degrees(too_short), FormatError);
        CHECK_THROWS_AS(Tree::from_degrees(too_long), FormatError);
        CHECK_THROWS_AS(Tree::from_degrees(negative), FormatError);
    }
}
