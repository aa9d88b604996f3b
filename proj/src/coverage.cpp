#include "meshplace/coverage.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace meshplace {

DiscOffsets disc_offsets(int radius) {
    if (radius < 1) throw std::invalid_argument("disc radius must be >= 1");
    DiscOffsets disc;
    disc.radius = radius;
    const int r2 = radius * radius;
    for (int dy = -(radius - 1); dy <= radius - 1; ++dy)
        for (int dx = -(radius - 1); dx <= radius - 1; ++dx)
            if (dx * dx + dy * dy < r2) disc.offsets.push_back({dx, dy});
    return disc;
}

CoverState::CoverState(const Region& region, DiscOffsets offsets)
    : region_(&region),
      offsets_(std::move(offsets)),
      depth_(static_cast<std::size_t>(region.width()) * static_cast<std::size_t>(region.height()), 0) {}

int CoverState::add_router(Cell pos) {
    if (!region_->in_bounds(pos)) throw std::out_of_range("router position out of bounds");
    int gained = 0;
    for (const Offset off : offsets_.offsets) {
        const int x = pos.x + off.dx;
        const int y = pos.y + off.dy;
        if (!region_->in_bounds(x, y)) continue;
        std::uint16_t& d = depth_[idx(x, y)];
        if (d == std::numeric_limits<std::uint16_t>::max()) throw std::logic_error("cover depth overflow");
        if (d == 0 && region_->cover(x, y)) ++gained;
        ++d;
    }
    fitness_ += gained;
    return gained;
}

int CoverState::remove_router(Cell pos) {
    if (!region_->in_bounds(pos)) throw std::out_of_range("router position out of bounds");
    // Validate before mutating so a caller bug cannot corrupt the state.
    for (const Offset off : offsets_.offsets) {
        const int x = pos.x + off.dx;
        const int y = pos.y + off.dy;
        if (region_->in_bounds(x, y) && depth_[idx(x, y)] == 0)
            throw std::logic_error("removal would drive cover depth negative: no router accounted here");
    }
    int lost = 0;
    for (const Offset off : offsets_.offsets) {
        const int x = pos.x + off.dx;
        const int y = pos.y + off.dy;
        if (!region_->in_bounds(x, y)) continue;
        std::uint16_t& d = depth_[idx(x, y)];
        --d;
        if (d == 0 && region_->cover(x, y)) ++lost;
    }
    fitness_ -= lost;
    return -lost;
}

int CoverState::move_router(Cell from, Cell to) {
    if (!region_->in_bounds(from) || !region_->in_bounds(to))
        throw std::out_of_range("router position out of bounds");
    if (from == to) return 0;

    const int r2 = offsets_.radius * offsets_.radius;
    const int dx = to.x - from.x;
    const int dy = to.y - from.y;

    // A cell from+off lies in the target disc iff ||off - (to-from)|| < r;
    // a cell to+off lies in the source disc iff ||off + (to-from)|| < r.
    // Cells in both discs keep their depth, so only the symmetric difference
    // is walked.
    for (const Offset off : offsets_.offsets) {
        const int ox = off.dx - dx;
        const int oy = off.dy - dy;
        if (ox * ox + oy * oy >= r2) {
            const int x = from.x + off.dx;
            const int y = from.y + off.dy;
            if (region_->in_bounds(x, y) && depth_[idx(x, y)] == 0)
                throw std::logic_error("move would drive cover depth negative: no router accounted at source");
        }
    }

    int delta = 0;
    for (const Offset off : offsets_.offsets) {
        const int ox = off.dx - dx;
        const int oy = off.dy - dy;
        if (ox * ox + oy * oy >= r2) {  // leaves coverage
            const int x = from.x + off.dx;
            const int y = from.y + off.dy;
            if (region_->in_bounds(x, y)) {
                std::uint16_t& d = depth_[idx(x, y)];
                --d;
                if (d == 0 && region_->cover(x, y)) --delta;
            }
        }
        const int px = off.dx + dx;
        const int py = off.dy + dy;
        if (px * px + py * py >= r2) {  // gains coverage
            const int x = to.x + off.dx;
            const int y = to.y + off.dy;
            if (region_->in_bounds(x, y)) {
                std::uint16_t& d = depth_[idx(x, y)];
                if (d == std::numeric_limits<std::uint16_t>::max()) throw std::logic_error("cover depth overflow");
                if (d == 0 && region_->cover(x, y)) ++delta;
                ++d;
            }
        }
    }
    fitness_ += delta;
    return delta;
}

int CoverState::recompute_fitness() const {
    int f = 0;
    for (int y = 0; y < region_->height(); ++y)
        for (int x = 0; x < region_->width(); ++x)
            if (depth_[idx(x, y)] > 0 && region_->cover(x, y)) ++f;
    return f;
}

CoverState build_cover_state(const Region& region, const Placement& placement) {
    CoverState state(region, disc_offsets(placement.radius));
    for (const Cell pos : placement.positions) state.add_router(pos);
    return state;
}

CoverageMetrics compute_metrics(const CoverState& state, int router_count) {
    const Region& region = state.region();
    long interest_total = 0;
    long interest_covered = 0;
    long optional_total = 0;
    long optional_covered = 0;
    for (int y = 0; y < region.height(); ++y) {
        for (int x = 0; x < region.width(); ++x) {
            const bool covered = state.depth(x, y) > 0;
            if (region.cover(x, y)) {
                ++interest_total;
                if (covered) ++interest_covered;
            } else {
                ++optional_total;
                if (covered) ++optional_covered;
            }
        }
    }
    CoverageMetrics metrics;
    metrics.covered_interest_cells = interest_covered;
    metrics.router_count = router_count;
    metrics.required_fraction =
        interest_total > 0 ? static_cast<double>(interest_covered) / static_cast<double>(interest_total) : 0.0;
    metrics.optional_fraction =
        optional_total > 0 ? static_cast<double>(optional_covered) / static_cast<double>(optional_total) : 0.0;
    return metrics;
}

int connectivity_components(const Placement& placement, int link_radius) {
    if (link_radius < 1) throw std::invalid_argument("link radius must be >= 1");
    const std::size_t n = placement.positions.size();
    if (n == 0) return 0;

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&parent](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };

    const long lr2 = static_cast<long>(link_radius) * link_radius;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const long ddx = placement.positions[i].x - placement.positions[j].x;
            const long ddy = placement.positions[i].y - placement.positions[j].y;
            if (ddx * ddx + ddy * ddy < lr2) parent[find(i)] = find(j);
        }
    }

    int components = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (find(i) == i) ++components;
    return components;
}

}  // namespace meshplace
