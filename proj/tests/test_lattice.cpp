#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <limits>

#include "diagrec/lattice.hpp"

using namespace diagrec;

TEST_CASE("multi-index construction and access") {
    const MultiIndex t{3, 1, 2};
    CHECK(t.dimension() == 3);
    CHECK(t[0] == 3);
    CHECK(t[1] == 1);
    CHECK(t[2] == 2);
    CHECK_THROWS_AS(MultiIndex(std::vector<std::uint64_t>{}), ValidationError);
}

TEST_CASE("lexicographic order") {
    CHECK(MultiIndex{1, 5} < MultiIndex{2, 0});
    CHECK(MultiIndex{2, 0} < MultiIndex{2, 1});
    CHECK_FALSE(MultiIndex{2, 1} < MultiIndex{2, 1});
}

TEST_CASE("string round trip") {
    const MultiIndex t{3, 1, 2};
    CHECK(t.to_string() == "3,1,2");
    CHECK(MultiIndex::parse("3,1,2") == t);
    CHECK(MultiIndex::parse("0") == MultiIndex{0});
    CHECK_THROWS_AS(MultiIndex::parse(""), ValidationError);
    CHECK_THROWS_AS(MultiIndex::parse("3,,2"), ValidationError);
    CHECK_THROWS_AS(MultiIndex::parse("3,1,"), ValidationError);
    CHECK_THROWS_AS(MultiIndex::parse("3,-1"), ValidationError);
    CHECK_THROWS_AS(MultiIndex::parse("a,b"), ValidationError);
}

TEST_CASE("diagonal level is the minimum component") {
    CHECK(mu(MultiIndex{3, 1, 2}) == 1);
    CHECK(mu(MultiIndex{4, 4}) == 4);
    CHECK(mu(MultiIndex{0, 7}) == 0);
}

TEST_CASE("diagonal decomposition") {
    const auto dec = diag_decompose(MultiIndex{5, 2, 4});
    CHECK(dec.base == MultiIndex{3, 0, 2});
    CHECK(dec.level == 2);
    CHECK(dec.reconstruct() == MultiIndex{5, 2, 4});

    // A base point decomposes into itself.
    const auto base = diag_decompose(MultiIndex{3, 0, 2});
    CHECK(base.base == MultiIndex{3, 0, 2});
    CHECK(base.level == 0);
}

TEST_CASE("diagonal shift") {
    CHECK(shift(MultiIndex{3, 1}, 2) == MultiIndex{5, 3});
    CHECK(shift(MultiIndex{3, 1}, -1) == MultiIndex{2, 0});
    CHECK(shift(MultiIndex{3, 1}, 0) == MultiIndex{3, 1});

    // Leaving N^m or wrapping the component type is rejected.
    CHECK_THROWS_AS(shift(MultiIndex{3, 1}, -2), ValidationError);
    const std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
    CHECK_THROWS_AS(shift(MultiIndex{top, 0}, 1), ValidationError);
    CHECK_THROWS_AS(shift(MultiIndex{0, 0}, std::numeric_limits<std::int64_t>::min()),
                    ValidationError);
}
