#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "meshplace/reduction.hpp"
#include "meshplace/region.hpp"
#include "meshplace/solver.hpp"

namespace meshplace {

enum class StrategyChoice { MinSingle, MinCoverage, MaxOver, All };

std::vector<RemovalStrategy> resolve_strategies(StrategyChoice choice);

struct ExperimentConfig {
    std::string region_file;  // empty: generate a fresh region per seed
    RegionGenParams gen;      // its seed field is replaced by the experiment seed

    int radius = 8;
    double temperature = 0.1;
    int nbtostop = 500;
    double init_factor = 1.4;
    double jump_probability = 0.2;
    long max_iterations = 1'000'000;
    AcceptanceForm acceptance = AcceptanceForm::Paper;

    StrategyChoice strategy = StrategyChoice::MinSingle;
    ThresholdSpec threshold;

    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    int sweep_floor = -1;  // -1: record counts down to nr_min; 0: stop where the loop stops
    std::string out_dir = "out";
    int jobs = 0;  // parallel seed workers; 0 picks hardware concurrency
};

struct StrategyOutcome {
    RemovalStrategy strategy;
    ReductionReport report;
};

struct SeedOutcome {
    std::uint64_t seed = 0;
    int nr_min = 0;
    int nr_init = 0;
    std::vector<StrategyOutcome> runs;
};

struct ExperimentResult {
    std::vector<SeedOutcome> outcomes;  // ordered like config.seeds
    std::filesystem::path summary_path;
};

// Runs the remove-reoptimize loop for every (seed, strategy) pair, writing per
// seed: the region used, and per strategy a coverage curve CSV, a positions
// log, and a depth image of the final placement. A cross-seed summary lands in
// <out_dir>/summary.txt. All file bytes are deterministic functions of config.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Binary PPM (P6), one pixel per cell. Depth 1 is blue, 2 red, 3+ white;
// uncovered cells are black (interest), dark gray (optional), or near-black
// (placement-prohibited).
void render_depth_image(const Region& region, const CoverState& state, const std::filesystem::path& path);

// CSV: header `router_count,required_fraction,optional_fraction,f,strategy,seed`,
// one row per visited router count, fractions with 4 decimals.
void emit_coverage_curve(const ReductionReport& report, std::uint64_t seed, const std::filesystem::path& path);

// One line per visited router count: space-separated "x,y" pairs.
void write_positions_file(const ReductionReport& report, const std::filesystem::path& path);
std::vector<std::vector<Cell>> parse_positions_file(const std::filesystem::path& path);

// Visited steps in visit order: threshold-satisfying prefix, then the recorded tail.
std::vector<const ReductionStep*> curve_steps(const ReductionReport& report);

// Smallest router count whose required_fraction matches the curve's maximum:
// past it, adding routers no longer improves required coverage.
int peak_count(const ReductionReport& report);

// Step recorded at an exact router count, or nullptr if that count was not visited.
const ReductionStep* step_at(const ReductionReport& report, int router_count);

}  // namespace meshplace
