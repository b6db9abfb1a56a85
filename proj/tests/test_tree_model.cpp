#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "lintrees/tree_model.hpp"

using namespace lintrees;

namespace {

LinearTreeSpec spec(std::vector<std::vector<int>> stars, std::vector<int> paths) {
    LinearTreeSpec s;
    for (auto& arms : stars) s.stars.push_back({std::move(arms)});
    s.paths = std::move(paths);
    return s;
}

// 13-vertex nonlinear tree: central HDV adjacent to three HDVs, each with
// three leaves.
TreeGraph nonlinear13() {
    TreeGraph g;
    g.n = 13;
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5},  {1, 6},  {2, 7},
               {2, 8}, {2, 9}, {3, 10}, {3, 11}, {3, 12}};
    return g;
}

}  // namespace

TEST_CASE("expand basic shapes") {
    TreeGraph k13 = expand(spec({{1, 1, 1}}, {}));
    CHECK(k13.n == 4);
    CHECK(k13.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}});

    TreeGraph p2 = expand(spec({{1}}, {}));
    CHECK(p2.n == 2);
    CHECK(p2.edges == std::vector<std::pair<int, int>>{{0, 1}});

    // two stars joined through one interior vertex
    TreeGraph t = expand(spec({{2, 1, 1}, {1, 1}}, {1}));
    CHECK(t.n == 9);
    TreeStats st = stats(t);
    CHECK(st.degrees[0] == 4);
    CHECK(st.degrees[6] == 3);
    CHECK(st.hdvs == std::vector<int>{0, 6});
    CHECK(st.d2 == 2);  // the interior path vertex and the long arm's inner vertex
}

TEST_CASE("diameter closed form matches the figures") {
    CHECK(diameter(spec({{2, 1, 1}}, {})) == 4);
    CHECK(diameter(spec({{2, 1, 1}, {1, 1}}, {1})) == 6);
    // two simple stars with adjacent centers
    CHECK(diameter(spec({{1, 1, 1}, {1, 1, 1}}, {0})) == 4);
    CHECK(diameter(spec({{1, 1, 1}, {1, 1, 1}}, {0})) ==
          longest_path_vertices(expand(spec({{1, 1, 1}, {1, 1, 1}}, {0}))));
}

TEST_CASE("diameter equals the BFS oracle on every spec up to 11 vertices") {
    for (int n = 2; n <= 11; ++n)
        for (const auto& s : all_linear_specs(n))
            CHECK(diameter(s) == longest_path_vertices(expand(s)));
}

TEST_CASE("stats") {
    TreeStats st = stats(expand(spec({{1, 1, 1}}, {})));
    CHECK(st.degrees == std::vector<int>{3, 1, 1, 1});
    CHECK(st.d2 == 0);
    CHECK(stats(expand(spec({{3}}, {}))).d2 == 2);  // path on 4 vertices
}

TEST_CASE("linearity of the 13-vertex pair") {
    CHECK_FALSE(is_linear(nonlinear13()).linear);

    // the linear companion: stars (1,1,1), (2,1), (1,1,1) with gaps 0 and 1
    TreeGraph lin = expand(spec({{1, 1, 1}, {2, 1}, {1, 1, 1}}, {0, 1}));
    CHECK(lin.n == 13);
    LinearityResult r = is_linear(lin);
    CHECK(r.linear);
    REQUIRE(r.spec.has_value());
    CHECK(r.spec->stars.size() == 3);
    CHECK(r.spec->paths == std::vector<int>{0, 1});
}

TEST_CASE("pathlike trees decompose as one degenerate star") {
    TreeGraph p5 = expand(spec({{4}}, {}));
    LinearityResult r = is_linear(p5);
    CHECK(r.linear);
    REQUIRE(r.spec.has_value());
    CHECK(r.spec->stars.size() == 1);
    CHECK(r.spec->stars[0].arms == std::vector<int>{4});

    TreeGraph one{1, {}};
    CHECK(is_linear(one).linear);
    CHECK_FALSE(is_linear(one).spec.has_value());
}

TEST_CASE("expand/is_linear roundtrip is an isomorphism for n <= 10") {
    for (int n = 2; n <= 10; ++n)
        for (const auto& s : all_linear_specs(n)) {
            TreeGraph g = expand(s);
            LinearityResult r = is_linear(g);
            REQUIRE(r.linear);
            REQUIRE(r.spec.has_value());
            TreeGraph h = expand(*r.spec);
            CHECK(h.n == g.n);
            CHECK(diameter(*r.spec) == diameter(s));
            CHECK(ahu_canonical(h) == ahu_canonical(g));
        }
}

TEST_CASE("tree counts up to isomorphism") {
    const std::vector<int> counts{1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
    for (int n = 1; n <= 10; ++n) CHECK(static_cast<int>(all_trees(n).size()) == counts[n - 1]);
    // every tree on fewer than 10 vertices is linear
    for (int n = 1; n <= 9; ++n)
        for (const auto& g : all_trees(n)) CHECK(is_linear(g).linear);
    int nonlinear10 = 0;
    for (const auto& g : all_trees(10))
        if (!is_linear(g).linear) ++nonlinear10;
    CHECK(nonlinear10 > 0);
}

TEST_CASE("graph validation") {
    TreeGraph bad;
    bad.n = 3;
    bad.edges = {{0, 1}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.edges = {{0, 1}, {0, 1}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
