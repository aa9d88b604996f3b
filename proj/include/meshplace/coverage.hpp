#pragma once

#include <cstdint>
#include <vector>

#include "meshplace/region.hpp"

namespace meshplace {

struct Offset {
    int dx = 0;
    int dy = 0;
    friend bool operator==(const Offset&, const Offset&) = default;
};

// Lattice cells of the open disc dx^2 + dy^2 < r^2, enumerated row-major
// (dy outer, dx inner) so the ordering is reproducible.
struct DiscOffsets {
    int radius = 0;
    std::vector<Offset> offsets;
};

// Throws std::invalid_argument for radius < 1.
DiscOffsets disc_offsets(int radius);

// Router positions plus the shared coverage radius. Several routers may sit
// on the same cell.
struct Placement {
    std::vector<Cell> positions;
    int radius = 0;
    friend bool operator==(const Placement&, const Placement&) = default;
};

struct CoverageMetrics {
    double required_fraction = 0.0;  // covered interest cells / interest cells
    double optional_fraction = 0.0;  // covered cover=0 cells / cover=0 cells (0 when none)
    long covered_interest_cells = 0;
    int router_count = 0;
};

// Per-cell router-count bookkeeping with an incrementally maintained fitness:
// the number of interest cells covered at least once. All updates are exact
// integer bookkeeping; the cached fitness equals a full recount at all times.
class CoverState {
public:
    CoverState(const Region& region, DiscOffsets offsets);

    // Raises depth on the disc around pos (clipped at borders). Returns the
    // fitness gain: interest cells whose depth went 0 -> 1.
    int add_router(Cell pos);

    // Inverse of add_router. Returns the (non-positive) fitness change.
    // Throws std::logic_error if a depth would go negative, which means the
    // caller removed a router that was never added.
    int remove_router(Cell pos);

    // Equivalent to remove_router(from) followed by add_router(to), but only
    // the symmetric difference of the two discs is touched.
    int move_router(Cell from, Cell to);

    int fitness() const { return fitness_; }
    int recompute_fitness() const;  // full scan; does not touch the cache

    std::uint16_t depth(int x, int y) const { return depth_[idx(x, y)]; }
    std::uint16_t depth(Cell c) const { return depth(c.x, c.y); }

    const Region& region() const { return *region_; }
    const DiscOffsets& offsets() const { return offsets_; }

private:
    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(region_->width()) + static_cast<std::size_t>(x);
    }

    const Region* region_;
    DiscOffsets offsets_;
    std::vector<std::uint16_t> depth_;
    int fitness_ = 0;
};

// Fresh state with every placement router added.
CoverState build_cover_state(const Region& region, const Placement& placement);

CoverageMetrics compute_metrics(const CoverState& state, int router_count);

// Number of connected components of the graph where two routers share a link
// iff their Euclidean distance is strictly below link_radius. An empty
// placement has zero components. A sensible default link radius is 2r, the
// largest distance at which two coverage discs still overlap.
int connectivity_components(const Placement& placement, int link_radius);

}  // namespace meshplace
