#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lintrees/partitions.hpp"

using namespace lintrees;

namespace {

// Independent dual oracle: count, for each column j, the parts covering it.
std::vector<int> dual_by_column_count(const std::vector<int>& parts) {
    std::vector<int> out;
    for (int j = 1; j <= parts[0]; ++j) {
        int c = 0;
        for (int p : parts)
            if (p >= j) ++c;
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("dual of the worked Ferrers example") {
    CHECK(dual(Partition({5, 3, 3, 1})).parts() == std::vector<int>{4, 3, 3, 1, 1});
    CHECK(dual(Partition({1, 1, 1})).parts() == std::vector<int>{3});
    // staircase is self dual; cross-checked against the column-count oracle
    CHECK(dual_by_column_count({3, 2, 1}) == std::vector<int>{3, 2, 1});
    CHECK(dual(Partition({3, 2, 1})).parts() == std::vector<int>{3, 2, 1});
}

TEST_CASE("duality is an involution for n <= 30") {
    for (int n = 1; n <= 30; ++n)
        for (const auto& p : partitions_of(n)) {
            CHECK(dual(dual(p)) == p);
            CHECK(dual(p).parts() == dual_by_column_count(p.parts()));
        }
}

TEST_CASE("majorization basics") {
    CHECK(majorized_by({3, 1, 1, 1}, {3, 2, 1}));  // prefix sums 3,4,5,6 vs 3,5,6,6
    CHECK(majorized_by({2, 2}, {2, 2}));
    CHECK_FALSE(majorized_by({4}, {3, 2}));
    // unequal totals allowed in the prefix-only reading
    CHECK(majorized_by({1, 1}, {5, 4}));
    CHECK_THROWS_AS(majorized_by({1, 2}, {3}), std::invalid_argument);
    CHECK_THROWS_AS(majorized_by({3, -1}, {3}), std::invalid_argument);
}

TEST_CASE("majorization is reflexive and transitive for n <= 12") {
    for (int n = 1; n <= 12; ++n) {
        auto ps = partitions_of(n);
        for (const auto& a : ps) CHECK(majorized_by(a.parts(), a.parts()));
        for (const auto& a : ps)
            for (const auto& b : ps)
                for (const auto& c : ps)
                    if (majorized_by(a.parts(), b.parts()) && majorized_by(b.parts(), c.parts()))
                        CHECK(majorized_by(a.parts(), c.parts()));
    }
}

TEST_CASE("dual reverses majorization at equal totals for n <= 12") {
    for (int n = 1; n <= 12; ++n) {
        auto ps = partitions_of(n);
        for (const auto& a : ps)
            for (const auto& b : ps)
                CHECK(majorized_by(a.parts(), b.parts()) ==
                      majorized_by(dual(b).parts(), dual(a).parts()));
    }
}

TEST_CASE("partition validation") {
    CHECK_THROWS_AS(Partition(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
    CHECK(Partition({2, 1}).n() == 3);
}
