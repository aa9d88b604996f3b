#include "meshplace/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace meshplace {

std::vector<Offset> eight_neighborhood() {
    return {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};
}

int min_routers(const Region& region, int radius) {
    if (radius < 1) throw std::invalid_argument("radius must be >= 1");
    const long interest = region.interest_cell_count();
    if (interest == 0) return 0;
    const double disc_area = static_cast<double>(radius) * radius * 3.14;
    return static_cast<int>(std::ceil(static_cast<double>(interest) / disc_area));
}

int initial_routers(int min_count, double init_factor) {
    if (min_count < 1) throw std::invalid_argument("minimum router count must be >= 1");
    if (!(init_factor > 1.0 && init_factor < 2.0))
        throw std::invalid_argument("init factor must lie strictly between 1 and 2");
    if (min_count == 1) return 2;
    int n = static_cast<int>(std::ceil(init_factor * min_count));
    n = std::max(n, min_count + 1);
    n = std::min(n, 2 * min_count - 1);
    return n;
}

Placement init_placement(const Region& region, int n, int radius, Rng& rng) {
    if (n < 1) throw std::invalid_argument("router count must be >= 1");
    if (radius < 1) throw std::invalid_argument("radius must be >= 1");
    const std::vector<Cell> eligible = region.placeable_interest_cells();
    if (eligible.empty()) throw std::runtime_error("region has no placeable interest cell");
    Placement placement;
    placement.radius = radius;
    placement.positions.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) placement.positions.push_back(eligible[rng.next_index(eligible.size())]);
    return placement;
}

Proposal propose_move(const Region& region, std::span<const Cell> eligible, const MoveConfig& config,
                      const Placement& placement, Rng& rng) {
    if (placement.positions.empty()) throw std::invalid_argument("cannot propose a move for an empty placement");
    const int router = static_cast<int>(rng.next_index(placement.positions.size()));
    const Cell current = placement.positions[static_cast<std::size_t>(router)];

    for (int attempt = 0; attempt < 32; ++attempt) {
        if (config.jump_probability > 0.0 && rng.next_double() < config.jump_probability) {
            return {router, eligible[rng.next_index(eligible.size())], MoveKind::Jump};
        }
        const Offset step = config.step_moves[rng.next_index(config.step_moves.size())];
        const Cell target{current.x + step.dx, current.y + step.dy};
        if (region.in_bounds(target) && region.cover(target.x, target.y) && region.place(target.x, target.y))
            return {router, target, MoveKind::Step};
    }
    return {router, current, MoveKind::Stay};
}

bool accept_move(int delta_fitness, double temperature, AcceptanceForm form, Rng& rng) {
    const double x = rng.next_open01();
    if (delta_fitness >= 0) return true;  // exp(arg) >= 1 > x
    const double arg = form == AcceptanceForm::Paper ? temperature * delta_fitness
                                                     : delta_fitness / temperature;
    return x < portable_exp(arg);
}

namespace {

void validate_run_inputs(const Region& region, const Placement& initial, const SolverParams& params) {
    if (params.radius < 1) throw std::invalid_argument("radius must be >= 1");
    if (initial.radius != params.radius)
        throw std::invalid_argument("placement radius does not match solver radius");
    if (params.nbtostop < 1) throw std::invalid_argument("nbtostop must be >= 1");
    if (params.max_iterations < 1) throw std::invalid_argument("max iterations must be >= 1");
    if (!(params.temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    if (params.moves.step_moves.empty()) throw std::invalid_argument("move set must not be empty");
    if (params.moves.jump_probability < 0.0 || params.moves.jump_probability > 1.0)
        throw std::invalid_argument("jump probability must lie in [0,1]");
    for (const Cell pos : initial.positions)
        if (!region.in_bounds(pos)) throw std::invalid_argument("initial placement has out-of-bounds router");
}

RunResult run_search(const Region& region, const Placement& initial, const SolverParams& params, Rng& rng,
                     bool metropolis) {
    validate_run_inputs(region, initial, params);
    const std::vector<Cell> eligible = region.placeable_interest_cells();
    if (eligible.empty()) throw std::runtime_error("region has no placeable interest cell");

    CoverState state(region, disc_offsets(params.radius));
    Placement current = initial;
    for (const Cell pos : current.positions) state.add_router(pos);

    SearchTrace trace;
    trace.initial_fitness = state.fitness();
    trace.steps.reserve(static_cast<std::size_t>(std::min<long>(params.max_iterations, 1L << 14)));

    Placement best = current;
    int best_fitness = state.fitness();
    long best_iteration = 0;
    int stall = 0;
    long iteration = 0;

    while (stall < params.nbtostop) {
        if (iteration >= params.max_iterations) {
            trace.hit_iteration_cap = true;
            break;
        }
        const Proposal proposal = propose_move(region, eligible, params.moves, current, rng);
        bool accepted = true;
        if (proposal.kind != MoveKind::Stay) {
            const Cell from = current.positions[static_cast<std::size_t>(proposal.router)];
            const int delta = state.move_router(from, proposal.target);
            accepted = metropolis ? accept_move(delta, params.temperature, params.acceptance, rng)
                                  : delta >= 0;
            if (accepted)
                current.positions[static_cast<std::size_t>(proposal.router)] = proposal.target;
            else
                state.move_router(proposal.target, from);
        }
        ++iteration;
        if (state.fitness() > best_fitness) {
            best_fitness = state.fitness();
            best = current;
            best_iteration = iteration;
            stall = 0;
        } else {
            ++stall;
        }
        trace.steps.push_back({state.fitness(), proposal.router, proposal.target, proposal.kind, accepted});
    }

    trace.best_fitness = best_fitness;
    trace.best_iteration = best_iteration;
    trace.iterations = iteration;

    CoverState best_state = build_cover_state(region, best);
    if (best_state.fitness() != best_fitness)
        throw std::logic_error("best placement fitness does not match its rebuilt state");
    return {std::move(best), std::move(best_state), std::move(trace)};
}

}  // namespace

RunResult run_metropolis(const Region& region, const Placement& initial, const SolverParams& params, Rng& rng) {
    return run_search(region, initial, params, rng, true);
}

RunResult run_hillclimb(const Region& region, const Placement& initial, const SolverParams& params, Rng& rng) {
    return run_search(region, initial, params, rng, false);
}

}  // namespace meshplace
