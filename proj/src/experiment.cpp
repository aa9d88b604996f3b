#include "meshplace/experiment.hpp"

#include <atomic>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace meshplace {

namespace fs = std::filesystem;

std::vector<RemovalStrategy> resolve_strategies(StrategyChoice choice) {
    switch (choice) {
        case StrategyChoice::MinSingle: return {RemovalStrategy::MinSingleCoverage};
        case StrategyChoice::MinCoverage: return {RemovalStrategy::MinCoverage};
        case StrategyChoice::MaxOver: return {RemovalStrategy::MaxOverCoverage};
        case StrategyChoice::All:
            return {RemovalStrategy::MinSingleCoverage, RemovalStrategy::MinCoverage,
                    RemovalStrategy::MaxOverCoverage};
    }
    throw std::logic_error("unknown strategy choice");
}

std::vector<const ReductionStep*> curve_steps(const ReductionReport& report) {
    std::vector<const ReductionStep*> steps;
    steps.reserve(report.steps.size() + report.tail_steps.size());
    for (const ReductionStep& s : report.steps) steps.push_back(&s);
    for (const ReductionStep& s : report.tail_steps) steps.push_back(&s);
    return steps;
}

int peak_count(const ReductionReport& report) {
    int count = 0;
    double best = -1.0;
    for (const ReductionStep* s : curve_steps(report)) {
        if (s->required_fraction > best ||
            (s->required_fraction == best && s->router_count < count)) {
            best = s->required_fraction;
            count = s->router_count;
        }
    }
    return count;
}

const ReductionStep* step_at(const ReductionReport& report, int router_count) {
    for (const ReductionStep* s : curve_steps(report))
        if (s->router_count == router_count) return s;
    return nullptr;
}

namespace {

std::string fmt4(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

std::ofstream open_binary(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish_write(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2.0;
}

}  // namespace

void render_depth_image(const Region& region, const CoverState& state, const fs::path& path) {
    std::ofstream out = open_binary(path);
    out << "P6\n" << region.width() << " " << region.height() << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(region.width()) * 3);
    for (int y = 0; y < region.height(); ++y) {
        for (int x = 0; x < region.width(); ++x) {
            unsigned char r = 0, g = 0, b = 0;
            const int d = state.depth(x, y);
            if (d == 0) {
                if (!region.place(x, y))
                    r = g = b = 32;
                else if (region.cover(x, y))
                    r = g = b = 0;
                else
                    r = g = b = 64;
            } else if (d == 1) {
                b = 255;
            } else if (d == 2) {
                r = 255;
            } else {
                r = g = b = 255;
            }
            row[static_cast<std::size_t>(x) * 3] = r;
            row[static_cast<std::size_t>(x) * 3 + 1] = g;
            row[static_cast<std::size_t>(x) * 3 + 2] = b;
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    finish_write(out, path);
}

void emit_coverage_curve(const ReductionReport& report, std::uint64_t seed, const fs::path& path) {
    std::ofstream out = open_binary(path);
    out << "router_count,required_fraction,optional_fraction,f,strategy,seed\n";
    for (const ReductionStep* s : curve_steps(report)) {
        out << s->router_count << "," << fmt4(s->required_fraction) << ","
            << fmt4(s->optional_fraction) << "," << s->fitness << ","
            << strategy_name(report.strategy) << "," << seed << "\n";
    }
    finish_write(out, path);
}

void write_positions_file(const ReductionReport& report, const fs::path& path) {
    std::ofstream out = open_binary(path);
    for (const ReductionStep* s : curve_steps(report)) {
        bool space = false;
        for (const Cell c : s->placement.positions) {
            if (space) out << ' ';
            out << c.x << ',' << c.y;
            space = true;
        }
        out << '\n';
    }
    finish_write(out, path);
}

std::vector<std::vector<Cell>> parse_positions_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::vector<std::vector<Cell>> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<Cell> cells;
        std::istringstream tokens(line);
        std::string token;
        while (tokens >> token) {
            Cell c{};
            char comma = 0;
            std::istringstream pair(token);
            if (!(pair >> c.x >> comma >> c.y) || comma != ',' || pair.peek() != EOF)
                throw std::runtime_error("malformed position '" + token + "' in " + path.string());
            cells.push_back(c);
        }
        lines.push_back(std::move(cells));
    }
    return lines;
}

namespace {

SolverParams solver_params_for(const ExperimentConfig& config) {
    SolverParams params;
    params.radius = config.radius;
    params.temperature = config.temperature;
    params.nbtostop = config.nbtostop;
    params.init_factor = config.init_factor;
    params.max_iterations = config.max_iterations;
    params.acceptance = config.acceptance;
    params.moves.jump_probability = config.jump_probability;
    return params;
}

SeedOutcome run_seed(const ExperimentConfig& config, const Region* shared_region, std::uint64_t seed,
                     const fs::path& seed_dir) {
    Region region = [&] {
        if (shared_region) return *shared_region;
        RegionGenParams gen = config.gen;
        gen.seed = seed;
        return generate_region(gen);
    }();

    fs::create_directories(seed_dir);
    {
        std::ofstream out = open_binary(seed_dir / "region.region");
        out << serialize_region(region);
        finish_write(out, seed_dir / "region.region");
    }

    SeedOutcome outcome;
    outcome.seed = seed;
    outcome.nr_min = min_routers(region, config.radius);
    outcome.nr_init = initial_routers(outcome.nr_min, config.init_factor);
    const int floor = config.sweep_floor < 0 ? outcome.nr_min : config.sweep_floor;
    const SolverParams params = solver_params_for(config);

    for (const RemovalStrategy strategy : resolve_strategies(config.strategy)) {
        // Each strategy restarts from the same stream, so the shared nr_init
        // run is identical and curves differ only through removal choices.
        Rng rng(mix_seed(seed));
        ReductionReport report = optimize_router_count(region, params, strategy, config.threshold, rng, floor);

        const std::string base = strategy_name(strategy);
        emit_coverage_curve(report, seed, seed_dir / (base + ".csv"));
        write_positions_file(report, seed_dir / (base + ".positions"));
        const CoverState final_state = build_cover_state(region, report.final_placement);
        render_depth_image(region, final_state, seed_dir / (base + ".ppm"));

        outcome.runs.push_back({strategy, std::move(report)});
    }
    return outcome;
}

std::string threshold_text(const ThresholdSpec& threshold) {
    const char* mode = threshold.mode == ThresholdSpec::Mode::RelativeDelta ? "relative" : "absolute";
    return std::string(mode) + ":" + fmt4(threshold.value);
}

void write_summary(const ExperimentConfig& config, const std::vector<SeedOutcome>& outcomes,
                   const fs::path& path) {
    std::ofstream out = open_binary(path);

    out << "router placement experiment\n";
    if (config.region_file.empty()) {
        out << "region: generated " << config.gen.width << "x" << config.gen.height << " (interest blobs "
            << config.gen.interest_blob_count << " r" << config.gen.interest_radius_min << ":"
            << config.gen.interest_radius_max << ", prohibited blobs " << config.gen.prohibited_blob_count
            << " r" << config.gen.prohibited_radius_min << ":" << config.gen.prohibited_radius_max << ")\n";
    } else {
        out << "region: " << config.region_file << "\n";
    }
    out << "radius=" << config.radius << " temperature=" << fmt4(config.temperature)
        << " nbtostop=" << config.nbtostop << " init_factor=" << fmt4(config.init_factor)
        << " jump=" << fmt4(config.jump_probability) << "\n";
    out << "acceptance=" << (config.acceptance == AcceptanceForm::Paper ? "paper" : "canonical")
        << " threshold=" << threshold_text(config.threshold) << "\n";
    out << "seeds=";
    for (std::size_t i = 0; i < config.seeds.size(); ++i) out << (i ? "," : "") << config.seeds[i];
    out << "\n\n";

    for (const SeedOutcome& o : outcomes) {
        out << "seed " << o.seed << ": nr_min=" << o.nr_min << " nr_init=" << o.nr_init << "\n";
        for (const StrategyOutcome& run : o.runs) {
            const ReductionReport& r = run.report;
            const int opt = r.optimal_count;
            const ReductionStep* at_opt = step_at(r, opt);
            out << "  " << strategy_name(run.strategy) << ": nr_opt=" << opt
                << " ratio=" << fmt4(static_cast<double>(opt) / o.nr_min)
                << " peak_count=" << peak_count(r);
            if (at_opt)
                out << " required@opt=" << fmt4(at_opt->required_fraction)
                    << " optional@opt=" << fmt4(at_opt->optional_fraction);
            if (const ReductionStep* at_min = step_at(r, o.nr_min))
                out << " required@min=" << fmt4(at_min->required_fraction)
                    << " optional@min=" << fmt4(at_min->optional_fraction);
            out << " below_at_init=" << (r.below_threshold_at_init ? "yes" : "no") << "\n";
        }
    }
    out << "\n";

    out << "aggregates: median [min, max]\n";
    for (const RemovalStrategy strategy : resolve_strategies(config.strategy)) {
        std::vector<double> opt, ratio, req_opt, opt_opt, req_min, opt_min;
        for (const SeedOutcome& o : outcomes) {
            for (const StrategyOutcome& run : o.runs) {
                if (run.strategy != strategy) continue;
                const ReductionReport& r = run.report;
                opt.push_back(r.optimal_count);
                ratio.push_back(static_cast<double>(r.optimal_count) / o.nr_min);
                if (const ReductionStep* s = step_at(r, r.optimal_count)) {
                    req_opt.push_back(s->required_fraction);
                    opt_opt.push_back(s->optional_fraction);
                }
                if (const ReductionStep* s = step_at(r, o.nr_min)) {
                    req_min.push_back(s->required_fraction);
                    opt_min.push_back(s->optional_fraction);
                }
            }
        }
        const auto agg = [&](const char* label, const std::vector<double>& values) {
            if (values.empty()) return;
            const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
            out << "  " << label << ": " << fmt4(median(values)) << " [" << fmt4(*lo) << ", "
                << fmt4(*hi) << "]\n";
        };
        out << strategy_name(strategy) << ":\n";
        agg("nr_opt", opt);
        agg("nr_opt/nr_min", ratio);
        agg("required@opt", req_opt);
        agg("optional@opt", opt_opt);
        agg("required@nr_min", req_min);
        agg("optional@nr_min", opt_min);
    }
    finish_write(out, path);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.seeds.empty()) throw std::invalid_argument("at least one seed is required");
    if (config.jobs < 0) throw std::invalid_argument("jobs must be >= 0");

    std::optional<Region> loaded;
    if (!config.region_file.empty()) loaded = load_region_file(config.region_file);
    const Region* shared_region = loaded ? &*loaded : nullptr;

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);

    std::vector<SeedOutcome> outcomes(config.seeds.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(config.seeds.size(), config.jobs > 0 ? static_cast<unsigned>(config.jobs) : hardware);

    const auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= config.seeds.size()) return;
            try {
                const std::uint64_t seed = config.seeds[i];
                outcomes[i] = run_seed(config, shared_region, seed,
                                       out_dir / ("seed" + std::to_string(seed)));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    const fs::path summary_path = out_dir / "summary.txt";
    write_summary(config, outcomes, summary_path);
    return {std::move(outcomes), summary_path};
}

}  // namespace meshplace
