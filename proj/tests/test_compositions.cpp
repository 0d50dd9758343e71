#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "workex/compositions.hpp"
#include "workex/errors.hpp"

using namespace workex;

TEST_CASE("composition_count matches stars and bars") {
    CHECK(composition_count(0, 3) == 1);
    CHECK(composition_count(2, 3) == 6);
    CHECK(composition_count(5, 1) == 1);
    CHECK(composition_count(20, 3) == 231);
    CHECK(composition_count(50, 3) == 1326);
    CHECK(composition_count(100, 4) == 176851);
}

TEST_CASE("enumeration is complete, unique and lexicographic") {
    const std::int64_t total = 7;
    const int parts = 4;
    std::vector<std::vector<std::int64_t>> seen;
    for_each_composition(total, parts, [&](std::span<const std::int64_t> n) {
        std::int64_t sum = 0;
        for (std::int64_t x : n) {
            CHECK(x >= 0);
            sum += x;
        }
        CHECK(sum == total);
        seen.emplace_back(n.begin(), n.end());
    });
    CHECK(static_cast<std::int64_t>(seen.size()) == composition_count(total, parts));
    for (std::size_t i = 1; i < seen.size(); ++i) {
        CHECK(seen[i - 1] < seen[i]);
    }
    CHECK(std::set(seen.begin(), seen.end()).size() == seen.size());
}

TEST_CASE("offsets partition the enumeration by leading part") {
    const std::int64_t total = 9;
    const int parts = 3;
    const auto offsets = composition_offsets(total, parts);
    std::vector<std::vector<std::int64_t>> all;
    for_each_composition(total, parts, [&](std::span<const std::int64_t> n) {
        all.emplace_back(n.begin(), n.end());
    });
    CHECK(offsets.back() == static_cast<std::int64_t>(all.size()));
    for (std::int64_t lead = 0; lead <= total; ++lead) {
        for (std::int64_t i = offsets[lead]; i < offsets[lead + 1]; ++i) {
            CHECK(all[static_cast<std::size_t>(i)][0] == lead);
        }
    }
}

TEST_CASE("guard rejects oversized lattices") {
    CHECK_THROWS_AS(check_composition_guard(1000, 6, 1000), TooManyCompositions);
    CHECK_NOTHROW(check_composition_guard(20, 3, 1000));
}
