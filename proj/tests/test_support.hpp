#pragma once

#include <string>
#include <vector>

#include "meshplace/coverage.hpp"
#include "meshplace/region.hpp"
#include "meshplace/rng.hpp"

namespace test_support {

using meshplace::Cell;
using meshplace::Placement;
using meshplace::Region;

// Region from row strings, e.g. from_rows({"IIo", "xxI"}).
inline Region from_rows(const std::vector<std::string>& rows) {
    std::string text = std::to_string(rows.front().size()) + " " + std::to_string(rows.size());
    for (const std::string& row : rows) text += "\n" + row;
    return meshplace::parse_region(text);
}

inline Region uniform_region(int width, int height, char cell) {
    std::vector<std::string> rows(static_cast<std::size_t>(height),
                                  std::string(static_cast<std::size_t>(width), cell));
    return from_rows(rows);
}

// Depth by direct distance checks, no incremental bookkeeping shared with the
// code under test.
inline std::vector<int> brute_depth(const Region& region, const std::vector<Cell>& routers, int radius) {
    std::vector<int> depth(static_cast<std::size_t>(region.width()) * region.height(), 0);
    for (int y = 0; y < region.height(); ++y)
        for (int x = 0; x < region.width(); ++x)
            for (const Cell r : routers) {
                const int dx = x - r.x;
                const int dy = y - r.y;
                if (dx * dx + dy * dy < radius * radius)
                    ++depth[static_cast<std::size_t>(y) * region.width() + x];
            }
    return depth;
}

inline int brute_fitness(const Region& region, const std::vector<Cell>& routers, int radius) {
    const std::vector<int> depth = brute_depth(region, routers, radius);
    int f = 0;
    for (int y = 0; y < region.height(); ++y)
        for (int x = 0; x < region.width(); ++x)
            if (region.cover(x, y) && depth[static_cast<std::size_t>(y) * region.width() + x] > 0) ++f;
    return f;
}

// Connected components by breadth-first search over the strict-distance graph.
inline int brute_components(const std::vector<Cell>& routers, int link_radius) {
    const std::size_t n = routers.size();
    std::vector<bool> seen(n, false);
    int components = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        ++components;
        std::vector<std::size_t> queue{start};
        seen[start] = true;
        while (!queue.empty()) {
            const std::size_t i = queue.back();
            queue.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (seen[j]) continue;
                const long dx = routers[i].x - routers[j].x;
                const long dy = routers[i].y - routers[j].y;
                if (dx * dx + dy * dy < static_cast<long>(link_radius) * link_radius) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    return components;
}

// Random region with independent per-cell classes; guarantees at least one
// placeable interest cell by stamping one if the dice produced none.
inline Region random_region(meshplace::Rng& rng, int width, int height) {
    Region region(width, height);
    bool has_eligible = false;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const std::size_t roll = rng.next_index(4);
            region.set_cover(x, y, roll == 0 || roll == 1);
            region.set_place(x, y, roll == 0 || roll == 2);
            has_eligible = has_eligible || roll == 0;
        }
    if (!has_eligible) {
        region.set_cover(0, 0, true);
        region.set_place(0, 0, true);
    }
    return region;
}

}  // namespace test_support
