#pragma once

#include <cstdint>
#include <vector>

#include "meshplace/coverage.hpp"
#include "meshplace/region.hpp"

namespace meshplace {

struct OracleResult {
    int best_fitness = 0;
    std::vector<Placement> best_placements;  // up to the requested cap
    std::uint64_t evaluated = 0;             // configurations scored
};

// Exact optimum by enumerating every placement of n routers over the region's
// placeable interest cells. Routers are interchangeable and co-location is
// legal, so the space is multisets: C(E+n-1, n) configurations for E eligible
// cells. Refuses instances above max_configurations; this is a test oracle,
// not an optimizer.
OracleResult exhaustive_best(const Region& region, int n, int radius, int cap = 16,
                             std::uint64_t max_configurations = 10'000'000);

}  // namespace meshplace
