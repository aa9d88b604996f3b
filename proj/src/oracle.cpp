#include "meshplace/oracle.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace meshplace {

namespace {

// C(n, k) saturating at uint64 max instead of overflowing.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t factor = n - k + i;
        if (result > std::numeric_limits<std::uint64_t>::max() / factor)
            return std::numeric_limits<std::uint64_t>::max();
        result = result * factor / i;  // exact: result * factor is divisible by i here
    }
    return result;
}

struct Enumerator {
    CoverState& state;
    const std::vector<Cell>& eligible;
    int n;
    int cap;
    std::uint64_t evaluated = 0;
    int best = -1;
    std::vector<Placement> best_placements;
    std::vector<Cell> stack;
    int radius;

    void record() {
        ++evaluated;
        const int f = state.fitness();
        if (f > best) {
            best = f;
            best_placements.clear();
        }
        if (f == best && static_cast<int>(best_placements.size()) < cap)
            best_placements.push_back({stack, radius});
    }

    // Nondecreasing index sequences enumerate each multiset exactly once.
    void descend(int depth, std::size_t from) {
        if (depth == n) {
            record();
            return;
        }
        for (std::size_t i = from; i < eligible.size(); ++i) {
            state.add_router(eligible[i]);
            stack.push_back(eligible[i]);
            descend(depth + 1, i);
            stack.pop_back();
            state.remove_router(eligible[i]);
        }
    }
};

}  // namespace

OracleResult exhaustive_best(const Region& region, int n, int radius, int cap,
                             std::uint64_t max_configurations) {
    if (n < 0) throw std::invalid_argument("router count must be >= 0");
    if (radius < 1) throw std::invalid_argument("radius must be >= 1");
    if (cap < 1) throw std::invalid_argument("placement cap must be >= 1");

    const std::vector<Cell> eligible = region.placeable_interest_cells();
    if (n > 0 && eligible.empty()) throw std::runtime_error("region has no placeable interest cell");

    const std::uint64_t configurations =
        binomial_saturating(eligible.size() + static_cast<std::uint64_t>(n) - (n > 0 ? 1 : 0),
                            static_cast<std::uint64_t>(n));
    if (configurations > max_configurations)
        throw std::invalid_argument("instance too large: " + std::to_string(configurations) +
                                    " configurations exceed the limit of " +
                                    std::to_string(max_configurations));

    CoverState state(region, disc_offsets(radius));
    Enumerator enumerator{state, eligible, n, cap, 0, -1, {}, {}, radius};
    enumerator.stack.reserve(static_cast<std::size_t>(n));
    enumerator.descend(0, 0);

    for (const Placement& p : enumerator.best_placements) {
        CoverState check = build_cover_state(region, p);
        if (check.fitness() != enumerator.best)
            throw std::logic_error("oracle best placement fails its own recount");
    }
    return {enumerator.best, std::move(enumerator.best_placements), enumerator.evaluated};
}

}  // namespace meshplace
