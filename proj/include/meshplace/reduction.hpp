#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meshplace/coverage.hpp"
#include "meshplace/region.hpp"
#include "meshplace/solver.hpp"

namespace meshplace {

// Rule deciding which router leaves the placement between re-optimization rounds.
enum class RemovalStrategy {
    MinSingleCoverage,  // fewest interest cells covered by this router alone
    MinCoverage,        // fewest covered interest cells in its disc overall
    MaxOverCoverage,    // most interest cells in its disc covered by someone else too
};

// Command-line / file tokens: "min-single", "min-coverage", "max-over".
std::string strategy_name(RemovalStrategy strategy);
RemovalStrategy parse_strategy(const std::string& token);

// Per-router tallies over the interest cells inside its disc.
struct RouterScores {
    int single_coverage = 0;  // cells whose only cover is this router (depth == 1)
    int total_coverage = 0;   // covered cells in the disc (depth >= 1)
    int over_coverage = 0;    // cells also covered by another router (depth >= 2)
};

RouterScores router_scores(const CoverState& state, Cell position);
RouterScores router_scores(const CoverState& state, const Placement& placement, int router);

// Index of the router the strategy would drop; ties resolve to the lowest index.
int select_removal(const CoverState& state, const Placement& placement, RemovalStrategy strategy);

// Coverage floor the reduction loop must hold. RelativeDelta subtracts `value`
// from the required fraction measured at the initial router count; Absolute is
// taken as-is. Either way the resulting floor is clamped to be non-negative.
struct ThresholdSpec {
    enum class Mode { RelativeDelta, Absolute };
    Mode mode = Mode::RelativeDelta;
    double value = 0.01;
};

// Snapshot taken after the re-optimization at one router count.
struct ReductionStep {
    int router_count = 0;
    int fitness = 0;
    double required_fraction = 0.0;
    double optional_fraction = 0.0;
    std::optional<Cell> removed;  // router dropped to reach the NEXT count
    Placement placement;
    long iterations = 0;  // solver iterations spent at this count
};

struct ReductionReport {
    RemovalStrategy strategy = RemovalStrategy::MinSingleCoverage;
    double threshold = 0.0;  // resolved absolute floor on required_fraction
    bool below_threshold_at_init = false;
    std::vector<ReductionStep> steps;       // counts that met the floor, descending
    std::vector<ReductionStep> tail_steps;  // floor-violating counts kept for curves
    int optimal_count = 0;                  // lowest count in `steps`
    Placement final_placement;              // placement recorded at optimal_count
};

// Removes routers one at a time, re-optimizing after each removal, until the
// required-coverage floor breaks or a single router remains. `sweep_floor` > 0
// keeps recording below-floor counts down to that many routers so coverage
// curves extend past the stopping point; it never changes optimal_count.
ReductionReport optimize_router_count(const Region& region, const SolverParams& params,
                                      RemovalStrategy strategy, const ThresholdSpec& threshold, Rng& rng,
                                      int sweep_floor = 0);

}  // namespace meshplace
