#include <algorithm>
#include <string>

#include "doctest.h"
#include "meshplace/oracle.hpp"
#include "meshplace/solver.hpp"
#include "test_support.hpp"

using namespace meshplace;
using test_support::from_rows;
using test_support::uniform_region;

TEST_CASE("zero routers score zero") {
    const Region region = uniform_region(4, 4, 'I');
    const OracleResult result = exhaustive_best(region, 0, 2);
    CHECK(result.best_fitness == 0);
    CHECK(result.evaluated == 1);
    REQUIRE(result.best_placements.size() == 1);
    CHECK(result.best_placements.front().positions.empty());
}

TEST_CASE("single router on a 3x3 all-interest grid belongs at the center") {
    const Region region = uniform_region(3, 3, 'I');
    const OracleResult result = exhaustive_best(region, 1, 2, 16);
    CHECK(result.best_fitness == 9);
    CHECK(result.evaluated == 9);
    REQUIRE(result.best_placements.size() == 1);
    CHECK(result.best_placements.front().positions.front() == Cell{1, 1});
}

TEST_CASE("optimal placements all reproduce the best fitness") {
    std::vector<std::string> rows(12, std::string(12, 'o'));
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) rows[y][x] = 'I';
    for (int y = 8; y <= 10; ++y)
        for (int x = 8; x <= 10; ++x) rows[y][x] = 'I';
    const Region region = from_rows(rows);

    const OracleResult result = exhaustive_best(region, 2, 2, 8);
    CHECK(result.best_fitness == 18);  // both 3x3 blobs fully covered
    CHECK(result.best_placements.size() <= 8);
    for (const Placement& p : result.best_placements)
        CHECK(test_support::brute_fitness(region, p.positions, 2) == result.best_fitness);
}

TEST_CASE("configuration guard names the offending count") {
    const Region region = uniform_region(10, 10, 'I');  // 100 eligible cells
    try {
        exhaustive_best(region, 5, 2);  // C(104,5) = 91'962'520
        FAIL("expected the size guard to trip");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("91962520") != std::string::npos);
    }
}

TEST_CASE("placement cap bounds the list, not the optimum") {
    const Region region = uniform_region(4, 4, 'I');
    const OracleResult full = exhaustive_best(region, 1, 4, 16);
    const OracleResult capped = exhaustive_best(region, 1, 4, 2);
    CHECK(full.best_fitness == capped.best_fitness);
    CHECK(full.evaluated == capped.evaluated);
    CHECK(capped.best_placements.size() <= 2);
    CHECK(full.best_placements.size() >= capped.best_placements.size());
}

TEST_CASE("metropolis never beats the exhaustive optimum") {
    std::vector<std::string> rows(8, std::string(8, 'o'));
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) rows[y][x] = 'I';
    for (int y = 5; y < 8; ++y)
        for (int x = 5; x < 8; ++x) rows[y][x] = 'I';
    const Region region = from_rows(rows);

    const OracleResult oracle = exhaustive_best(region, 2, 2);
    SolverParams params;
    params.radius = 2;
    params.nbtostop = 120;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        const Placement initial = init_placement(region, 2, params.radius, rng);
        const RunResult run = run_metropolis(region, initial, params, rng);
        CHECK(run.trace.best_fitness <= oracle.best_fitness);
    }
}

TEST_CASE("oracle rejects bad arguments") {
    const Region region = uniform_region(3, 3, 'I');
    CHECK_THROWS_AS(exhaustive_best(region, -1, 2), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_best(region, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_best(region, 1, 2, 0), std::invalid_argument);
    const Region empty = uniform_region(3, 3, 'o');
    CHECK_THROWS_AS(exhaustive_best(empty, 1, 2), std::runtime_error);
}
