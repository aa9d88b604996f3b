#include "meshplace/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace meshplace {

std::string strategy_name(RemovalStrategy strategy) {
    switch (strategy) {
        case RemovalStrategy::MinSingleCoverage: return "min-single";
        case RemovalStrategy::MinCoverage: return "min-coverage";
        case RemovalStrategy::MaxOverCoverage: return "max-over";
    }
    throw std::logic_error("unknown removal strategy");
}

RemovalStrategy parse_strategy(const std::string& token) {
    if (token == "min-single") return RemovalStrategy::MinSingleCoverage;
    if (token == "min-coverage") return RemovalStrategy::MinCoverage;
    if (token == "max-over") return RemovalStrategy::MaxOverCoverage;
    throw std::invalid_argument("unknown strategy '" + token +
                                "' (expected min-single, min-coverage, or max-over)");
}

RouterScores router_scores(const CoverState& state, Cell position) {
    const Region& region = state.region();
    if (!region.in_bounds(position)) throw std::out_of_range("router position out of bounds");
    RouterScores scores;
    for (const Offset off : state.offsets().offsets) {
        const int x = position.x + off.dx;
        const int y = position.y + off.dy;
        if (!region.in_bounds(x, y) || !region.cover(x, y)) continue;
        const int d = state.depth(x, y);
        if (d == 0) continue;
        ++scores.total_coverage;
        if (d == 1)
            ++scores.single_coverage;
        else
            ++scores.over_coverage;
    }
    return scores;
}

RouterScores router_scores(const CoverState& state, const Placement& placement, int router) {
    if (router < 0 || static_cast<std::size_t>(router) >= placement.positions.size())
        throw std::out_of_range("router index out of range");
    return router_scores(state, placement.positions[static_cast<std::size_t>(router)]);
}

int select_removal(const CoverState& state, const Placement& placement, RemovalStrategy strategy) {
    if (placement.positions.empty()) throw std::invalid_argument("cannot select a removal from an empty placement");
    int chosen = 0;
    RouterScores best = router_scores(state, placement.positions[0]);
    for (std::size_t i = 1; i < placement.positions.size(); ++i) {
        const RouterScores s = router_scores(state, placement.positions[i]);
        bool better = false;
        switch (strategy) {
            case RemovalStrategy::MinSingleCoverage: better = s.single_coverage < best.single_coverage; break;
            case RemovalStrategy::MinCoverage: better = s.total_coverage < best.total_coverage; break;
            case RemovalStrategy::MaxOverCoverage: better = s.over_coverage > best.over_coverage; break;
        }
        if (better) {
            chosen = static_cast<int>(i);
            best = s;
        }
    }
    return chosen;
}

namespace {

ReductionStep make_step(const RunResult& run) {
    const CoverageMetrics metrics =
        compute_metrics(run.state, static_cast<int>(run.placement.positions.size()));
    ReductionStep step;
    step.router_count = static_cast<int>(run.placement.positions.size());
    step.fitness = run.trace.best_fitness;
    step.required_fraction = metrics.required_fraction;
    step.optional_fraction = metrics.optional_fraction;
    step.placement = run.placement;
    step.iterations = run.trace.iterations;
    return step;
}

}  // namespace

ReductionReport optimize_router_count(const Region& region, const SolverParams& params,
                                      RemovalStrategy strategy, const ThresholdSpec& threshold, Rng& rng,
                                      int sweep_floor) {
    if (threshold.value < 0.0 || threshold.value > 1.0)
        throw std::invalid_argument("threshold value must lie in [0,1]");

    const int nr_min = min_routers(region, params.radius);
    if (nr_min < 1) throw std::invalid_argument("region has no interest cells to cover");
    const int nr_init = initial_routers(nr_min, params.init_factor);

    ReductionReport report;
    report.strategy = strategy;

    Placement placement = init_placement(region, nr_init, params.radius, rng);
    RunResult run = run_metropolis(region, placement, params, rng);

    const double init_required =
        compute_metrics(run.state, static_cast<int>(run.placement.positions.size())).required_fraction;
    report.threshold = threshold.mode == ThresholdSpec::Mode::Absolute
                           ? threshold.value
                           : std::max(0.0, init_required - threshold.value);
    report.below_threshold_at_init = init_required < report.threshold;

    // The initial count is always recorded in `steps`: it is the reported
    // optimum when the threshold is already missed there. Afterwards the
    // prefix closes permanently at the first violating count.
    bool prefix_open = true;
    bool first = true;
    while (true) {
        ReductionStep step = make_step(run);
        const bool meets = step.required_fraction >= report.threshold;
        bool to_steps = prefix_open;
        if (!meets) {
            prefix_open = false;
            if (!first) to_steps = false;
        }
        first = false;

        const int count = step.router_count;
        const bool sweep_more = sweep_floor > 0 && count > sweep_floor;
        const bool stop = count <= 1 || (!prefix_open && !sweep_more);
        int victim = -1;
        if (!stop) {
            victim = select_removal(run.state, run.placement, strategy);
            step.removed = run.placement.positions[static_cast<std::size_t>(victim)];
        }
        if (to_steps)
            report.steps.push_back(std::move(step));
        else
            report.tail_steps.push_back(std::move(step));
        if (stop) break;

        Placement reduced = run.placement;
        reduced.positions.erase(reduced.positions.begin() + victim);
        run = run_metropolis(region, reduced, params, rng);
    }

    const ReductionStep& last = report.steps.back();
    report.optimal_count = last.router_count;
    report.final_placement = last.placement;
    return report;
}

}  // namespace meshplace
