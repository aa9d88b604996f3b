#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "meshplace/coverage.hpp"
#include "meshplace/rng.hpp"

namespace meshplace {

// How a fitness delta turns into an acceptance probability: Paper multiplies
// by the temperature, exp(T * df); Canonical is the textbook Metropolis rule
// exp(df / T). Both accept every non-worsening move. At T < 1 the Paper form
// is far more permissive toward worsening moves.
enum class AcceptanceForm : std::uint8_t { Paper, Canonical };

std::vector<Offset> eight_neighborhood();

struct MoveConfig {
    std::vector<Offset> step_moves = eight_neighborhood();
    // Probability that a proposal relocates the router to a uniformly random
    // eligible cell instead of a unit step; lets the chain hop between
    // disconnected interest blobs.
    double jump_probability = 0.2;
};

struct SolverParams {
    int radius = 8;
    double temperature = 0.1;
    int nbtostop = 500;  // stop after this many consecutive non-improving iterations
    double init_factor = 1.4;
    std::uint64_t seed = 1;
    MoveConfig moves;
    long max_iterations = 1'000'000;
    AcceptanceForm acceptance = AcceptanceForm::Paper;
};

// Lower bound on the router count from the covered-area estimate: the number
// of interest cells divided by the disc area taken as r^2 * 3.14, rounded up.
// Border clipping is ignored, so this is optimistic by construction.
int min_routers(const Region& region, int radius);

// Starting count: ceil(init_factor * min_count), clamped into the open window
// (min_count, 2*min_count) when it is non-empty. min_count == 1 has an empty
// window and yields 2. init_factor must lie strictly between 1 and 2.
int initial_routers(int min_count, double init_factor);

// n positions drawn uniformly, with replacement, from the cells that both
// require coverage and admit a router.
Placement init_placement(const Region& region, int n, int radius, Rng& rng);

enum class MoveKind : std::uint8_t { Step, Jump, Stay };

struct Proposal {
    int router = 0;
    Cell target;
    MoveKind kind = MoveKind::Stay;
};

// Picks a router uniformly, then tries up to 32 times to draw a legal target:
// a jump to a random eligible cell with probability jump_probability,
// otherwise a random step move landing on an eligible cell. When every
// attempt fails the proposal degenerates to staying put.
Proposal propose_move(const Region& region, std::span<const Cell> eligible, const MoveConfig& config,
                      const Placement& placement, Rng& rng);

// Draws x uniform in (0,1) and accepts iff x < exp(arg), with arg per the
// acceptance form. Non-negative deltas are always accepted.
bool accept_move(int delta_fitness, double temperature, AcceptanceForm form, Rng& rng);

struct TraceStep {
    int fitness = 0;  // fitness after this iteration
    int router = 0;
    Cell target;
    MoveKind kind = MoveKind::Stay;
    bool accepted = false;
    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct SearchTrace {
    std::vector<TraceStep> steps;
    int initial_fitness = 0;
    int best_fitness = 0;
    long best_iteration = 0;  // 1-based iteration that last improved the best; 0 = initial
    long iterations = 0;
    bool hit_iteration_cap = false;
};

struct RunResult {
    Placement placement;  // best placement seen, not the last visited one
    CoverState state;     // rebuilt for that placement
    SearchTrace trace;
};

// Constant-temperature Metropolis search: propose single-router moves, apply
// tentatively, keep or revert per accept_move, and stop once the best fitness
// has not improved for nbtostop consecutive iterations (or max_iterations is
// hit, which the trace flags).
RunResult run_metropolis(const Region& region, const Placement& initial, const SolverParams& params, Rng& rng);

// Same loop, but only moves with a non-negative fitness delta are kept.
RunResult run_hillclimb(const Region& region, const Placement& initial, const SolverParams& params, Rng& rng);

}  // namespace meshplace
