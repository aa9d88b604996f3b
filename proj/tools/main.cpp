#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "meshplace/experiment.hpp"
#include "meshplace/oracle.hpp"
#include "meshplace/reduction.hpp"
#include "meshplace/region.hpp"
#include "meshplace/rng.hpp"
#include "meshplace/solver.hpp"

namespace {

using namespace meshplace;

std::pair<int, int> parse_grid(const std::string& text) {
    const auto sep = text.find('x');
    std::size_t wlen = 0, hlen = 0;
    int width = 0, height = 0;
    try {
        if (sep == std::string::npos) throw std::invalid_argument("");
        width = std::stoi(text.substr(0, sep), &wlen);
        height = std::stoi(text.substr(sep + 1), &hlen);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected WIDTHxHEIGHT, e.g. 200x200");
    }
    if (wlen != sep || sep + 1 + hlen != text.size() || width < 1 || height < 1)
        throw CLI::ValidationError("--grid", "expected WIDTHxHEIGHT, e.g. 200x200");
    return {width, height};
}

std::pair<int, int> parse_range(const std::string& flag, const std::string& text) {
    const auto sep = text.find(':');
    std::size_t alen = 0, blen = 0;
    int lo = 0, hi = 0;
    try {
        if (sep == std::string::npos) throw std::invalid_argument("");
        lo = std::stoi(text.substr(0, sep), &alen);
        hi = std::stoi(text.substr(sep + 1), &blen);
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected MIN:MAX, e.g. 8:20");
    }
    if (alen != sep || sep + 1 + blen != text.size() || lo < 1 || hi < lo)
        throw CLI::ValidationError(flag, "expected MIN:MAX with 1 <= MIN <= MAX");
    return {lo, hi};
}

ThresholdSpec parse_threshold(const std::string& text) {
    ThresholdSpec spec;
    std::string value;
    if (text.rfind("rel:", 0) == 0) {
        spec.mode = ThresholdSpec::Mode::RelativeDelta;
        value = text.substr(4);
    } else if (text.rfind("abs:", 0) == 0) {
        spec.mode = ThresholdSpec::Mode::Absolute;
        value = text.substr(4);
    } else {
        throw CLI::ValidationError("--threshold", "expected rel:DELTA or abs:FRACTION");
    }
    std::size_t len = 0;
    try {
        spec.value = std::stod(value, &len);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--threshold", "bad number '" + value + "'");
    }
    if (len != value.size() || spec.value < 0.0 || spec.value > 1.0)
        throw CLI::ValidationError("--threshold", "value must lie in [0,1]");
    return spec;
}

int parse_sweep_floor(const std::string& text) {
    if (text == "auto") return -1;
    if (text == "none") return 0;
    std::size_t len = 0;
    int floor = 0;
    try {
        floor = std::stoi(text, &len);
    } catch (const std::exception&) {
        len = 0;
    }
    if (len != text.size() || floor < 1)
        throw CLI::ValidationError("--sweep-floor", "expected auto, none, or a count >= 1");
    return floor;
}

AcceptanceForm parse_acceptance(const std::string& text) {
    if (text == "paper") return AcceptanceForm::Paper;
    if (text == "canonical") return AcceptanceForm::Canonical;
    throw CLI::ValidationError("--acceptance", "expected paper or canonical");
}

StrategyChoice parse_strategy_choice(const std::string& text) {
    if (text == "all") return StrategyChoice::All;
    switch (parse_strategy(text)) {
        case RemovalStrategy::MinSingleCoverage: return StrategyChoice::MinSingle;
        case RemovalStrategy::MinCoverage: return StrategyChoice::MinCoverage;
        case RemovalStrategy::MaxOverCoverage: return StrategyChoice::MaxOver;
    }
    throw CLI::ValidationError("--strategy", "expected min-single, min-coverage, max-over, or all");
}

// Raw option text gathered by CLI11; parsed/validated in the subcommand callbacks.
struct RawOptions {
    std::string grid = "200x200";
    std::string interest_radius = "8:20";
    std::string prohibited_radius = "4:10";
    std::string threshold = "rel:0.01";
    std::string sweep_floor = "auto";
    std::string acceptance = "paper";
    std::string strategy = "min-single";
};

std::string trim_blank(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

void assign_value(const std::string&, const std::string& value, std::string& target) { target = value; }

template <typename T>
void assign_value(const std::string& key, const std::string& value, T& target) {
    std::istringstream stream(value);
    stream >> target;
    if (stream.fail() || !stream.eof())
        throw std::runtime_error("config key '" + key + "': bad value '" + value + "'");
}

void assign_value(const std::string& key, const std::string& value, std::vector<std::uint64_t>& target) {
    std::vector<std::uint64_t> seeds;
    std::istringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::uint64_t seed = 0;
        assign_value(key, trim_blank(item), seed);
        seeds.push_back(seed);
    }
    if (seeds.empty()) throw std::runtime_error("config key '" + key + "': no seeds given");
    target = std::move(seeds);
}

// Optional flat key=value file feeding the same targets as the command-line
// flags. Applied at the start of a subcommand callback; keys whose flag was
// given on the command line are skipped, so flags win.
struct FlatConfig {
    struct Entry {
        const CLI::Option* option;
        std::string key;
        std::function<void(const std::string&)> set;
    };

    std::string path;
    std::vector<Entry> entries;

    void attach(CLI::App& sub) {
        sub.add_option("--config", path, "flat key=value config file; command-line flags win");
    }

    template <typename T>
    void bind(const CLI::Option* option, const std::string& key, T& target) {
        entries.push_back({option, key, [&target, key](const std::string& value) {
                               assign_value(key, value, target);
                           }});
    }

    void apply() const {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string text = trim_blank(line);
            if (text.empty() || text[0] == '#') continue;
            const auto sep = text.find('=');
            if (sep == std::string::npos)
                throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                         ": expected key=value");
            const std::string key = trim_blank(text.substr(0, sep));
            const std::string value = trim_blank(text.substr(sep + 1));
            const Entry* entry = nullptr;
            for (const Entry& candidate : entries)
                if (candidate.key == key) entry = &candidate;
            if (!entry) throw std::runtime_error("unknown config key '" + key + "'");
            if (entry->option->count() == 0) entry->set(value);
        }
    }
};

void add_gen_options(CLI::App& sub, FlatConfig& file, ExperimentConfig& config, RawOptions& raw) {
    file.bind(sub.add_option("--grid", raw.grid, "generated region size as WIDTHxHEIGHT")
                  ->capture_default_str(),
              "grid", raw.grid);
    file.bind(sub.add_option("--interest-blobs", config.gen.interest_blob_count, "number of interest blobs")
                  ->capture_default_str(),
              "interest-blobs", config.gen.interest_blob_count);
    file.bind(sub.add_option("--interest-radius", raw.interest_radius, "interest blob radius range MIN:MAX")
                  ->capture_default_str(),
              "interest-radius", raw.interest_radius);
    file.bind(
        sub.add_option("--prohibited-blobs", config.gen.prohibited_blob_count, "number of prohibited blobs")
            ->capture_default_str(),
        "prohibited-blobs", config.gen.prohibited_blob_count);
    file.bind(
        sub.add_option("--prohibited-radius", raw.prohibited_radius, "prohibited blob radius range MIN:MAX")
            ->capture_default_str(),
        "prohibited-radius", raw.prohibited_radius);
}

void apply_gen_options(ExperimentConfig& config, const RawOptions& raw) {
    std::tie(config.gen.width, config.gen.height) = parse_grid(raw.grid);
    std::tie(config.gen.interest_radius_min, config.gen.interest_radius_max) =
        parse_range("--interest-radius", raw.interest_radius);
    std::tie(config.gen.prohibited_radius_min, config.gen.prohibited_radius_max) =
        parse_range("--prohibited-radius", raw.prohibited_radius);
}

void add_solver_options(CLI::App& sub, FlatConfig& file, ExperimentConfig& config, RawOptions& raw) {
    file.bind(sub.add_option("--radius", config.radius, "router coverage radius in cells")
                  ->capture_default_str(),
              "radius", config.radius);
    file.bind(sub.add_option("--temp", config.temperature, "Metropolis temperature")->capture_default_str(),
              "temp", config.temperature);
    file.bind(sub.add_option("--nbtostop", config.nbtostop, "non-improving iterations before stopping")
                  ->capture_default_str(),
              "nbtostop", config.nbtostop);
    file.bind(
        sub.add_option("--init-factor", config.init_factor, "initial router count factor over the minimum")
            ->capture_default_str(),
        "init-factor", config.init_factor);
    file.bind(sub.add_option("--jump", config.jump_probability,
                             "probability a proposal relocates instead of stepping")
                  ->capture_default_str(),
              "jump", config.jump_probability);
    file.bind(sub.add_option("--max-iterations", config.max_iterations, "hard iteration cap per run")
                  ->capture_default_str(),
              "max-iterations", config.max_iterations);
    file.bind(sub.add_option("--acceptance", raw.acceptance, "acceptance rule: paper or canonical")
                  ->capture_default_str(),
              "acceptance", raw.acceptance);
}

void print_outcomes(const ExperimentResult& result) {
    for (const SeedOutcome& o : result.outcomes) {
        std::cout << "seed " << o.seed << ": nr_min=" << o.nr_min << " nr_init=" << o.nr_init;
        for (const StrategyOutcome& run : o.runs) {
            std::cout << "  " << strategy_name(run.strategy) << ": nr_opt=" << run.report.optimal_count;
            if (run.report.below_threshold_at_init) std::cout << " (below threshold at init)";
        }
        std::cout << "\n";
    }
    std::cout << "summary: " << result.summary_path.string() << "\n";
}

void setup_experiment_command(CLI::App& sub, FlatConfig& file, ExperimentConfig& config, RawOptions& raw,
                              bool with_strategy_flag) {
    file.attach(sub);
    file.bind(sub.add_option("--region", config.region_file, "region file to use instead of generating"),
              "region", config.region_file);
    add_gen_options(sub, file, config, raw);
    add_solver_options(sub, file, config, raw);
    if (with_strategy_flag)
        file.bind(sub.add_option("--strategy", raw.strategy,
                                 "removal strategy: min-single, min-coverage, max-over, all")
                      ->capture_default_str(),
                  "strategy", raw.strategy);
    file.bind(sub.add_option("--threshold", raw.threshold,
                             "coverage floor: rel:DELTA (below init) or abs:FRACTION")
                  ->capture_default_str(),
              "threshold", raw.threshold);
    file.bind(sub.add_option("--sweep-floor", raw.sweep_floor,
                             "keep recording counts below the floor down to: auto (nr_min), none, or a count")
                  ->capture_default_str(),
              "sweep-floor", raw.sweep_floor);
    file.bind(sub.add_option("--seeds", config.seeds, "comma-separated experiment seeds")
                  ->delimiter(',')
                  ->capture_default_str(),
              "seeds", config.seeds);
    file.bind(sub.add_option("--out", config.out_dir, "output directory")->capture_default_str(), "out",
              config.out_dir);
    file.bind(sub.add_option("--jobs", config.jobs, "parallel seed workers (0 = hardware)")
                  ->capture_default_str(),
              "jobs", config.jobs);

    sub.callback([&file, &config, &raw, with_strategy_flag] {
        file.apply();
        apply_gen_options(config, raw);
        config.acceptance = parse_acceptance(raw.acceptance);
        config.threshold = parse_threshold(raw.threshold);
        config.sweep_floor = parse_sweep_floor(raw.sweep_floor);
        config.strategy = with_strategy_flag ? parse_strategy_choice(raw.strategy) : StrategyChoice::All;
        print_outcomes(run_experiment(config));
    });
}

void setup_generate(CLI::App& sub, FlatConfig& file, ExperimentConfig& config, RawOptions& raw) {
    static std::uint64_t seed = 1;
    static std::string out_file;
    sub.add_option("--seed", seed, "generator seed")->capture_default_str();
    sub.add_option("--out", out_file, "output .region file")->required();
    add_gen_options(sub, file, config, raw);
    sub.callback([&config, &raw] {
        apply_gen_options(config, raw);
        RegionGenParams gen = config.gen;
        gen.seed = seed;
        const Region region = generate_region(gen);
        save_region_file(region, out_file);
        std::cout << "wrote " << out_file << ": " << region.width() << "x" << region.height()
                  << ", interest cells " << region.interest_cell_count() << ", placeable interest "
                  << region.placeable_interest_count() << "\n";
    });
}

void setup_solve(CLI::App& sub, FlatConfig& file, ExperimentConfig& config, RawOptions& raw) {
    static std::uint64_t seed = 1;
    static int routers = 0;
    static std::string out_prefix;
    file.attach(sub);
    file.bind(sub.add_option("--region", config.region_file, "region file to use instead of generating"),
              "region", config.region_file);
    add_gen_options(sub, file, config, raw);
    add_solver_options(sub, file, config, raw);
    file.bind(sub.add_option("--seed", seed, "run seed (also the generator seed)")->capture_default_str(),
              "seed", seed);
    file.bind(sub.add_option("--routers", routers, "router count (0 = derived initial count)")
                  ->capture_default_str(),
              "routers", routers);
    file.bind(sub.add_option("--out-prefix", out_prefix, "write PREFIX.positions and PREFIX.ppm"),
              "out-prefix", out_prefix);

    sub.callback([&file, &config, &raw] {
        file.apply();
        apply_gen_options(config, raw);
        config.acceptance = parse_acceptance(raw.acceptance);
        const Region region = [&] {
            if (!config.region_file.empty()) return load_region_file(config.region_file);
            RegionGenParams gen = config.gen;
            gen.seed = seed;
            return generate_region(gen);
        }();

        SolverParams params;
        params.radius = config.radius;
        params.temperature = config.temperature;
        params.nbtostop = config.nbtostop;
        params.init_factor = config.init_factor;
        params.max_iterations = config.max_iterations;
        params.acceptance = config.acceptance;
        params.moves.jump_probability = config.jump_probability;

        const int nr_min = min_routers(region, params.radius);
        const int nr_init = initial_routers(nr_min, params.init_factor);
        const int n = routers > 0 ? routers : nr_init;

        Rng rng(mix_seed(seed));
        const Placement initial = init_placement(region, n, params.radius, rng);
        const RunResult result = run_metropolis(region, initial, params, rng);
        const CoverageMetrics metrics = compute_metrics(result.state, n);

        std::cout << "nr_min=" << nr_min << " nr_init=" << nr_init << " routers=" << n << "\n"
                  << "f: initial=" << result.trace.initial_fitness << " best=" << result.trace.best_fitness
                  << " after " << result.trace.iterations << " iterations"
                  << (result.trace.hit_iteration_cap ? " (iteration cap hit)" : "") << "\n"
                  << "required_fraction=" << metrics.required_fraction
                  << " optional_fraction=" << metrics.optional_fraction << "\n"
                  << "connectivity components (link radius " << 2 * params.radius
                  << "): " << connectivity_components(result.placement, 2 * params.radius) << "\n";

        if (!out_prefix.empty()) {
            ReductionReport single;
            single.strategy = RemovalStrategy::MinSingleCoverage;
            ReductionStep step;
            step.router_count = n;
            step.fitness = result.trace.best_fitness;
            step.required_fraction = metrics.required_fraction;
            step.optional_fraction = metrics.optional_fraction;
            step.placement = result.placement;
            step.iterations = result.trace.iterations;
            single.steps.push_back(std::move(step));
            write_positions_file(single, out_prefix + ".positions");
            render_depth_image(region, result.state, out_prefix + ".ppm");
            std::cout << "wrote " << out_prefix << ".positions and " << out_prefix << ".ppm\n";
        }
    });
}

void setup_oracle(CLI::App& sub) {
    static std::string region_file;
    static int routers = 1;
    static int radius = 2;
    static int cap = 16;
    static std::uint64_t max_configs = 10'000'000;
    sub.add_option("--region", region_file, "region file")->required();
    sub.add_option("--routers", routers, "router count to place")->capture_default_str();
    sub.add_option("--radius", radius, "coverage radius")->capture_default_str();
    sub.add_option("--cap", cap, "max optimal placements to keep")->capture_default_str();
    sub.add_option("--max-configs", max_configs, "refuse instances above this configuration count")
        ->capture_default_str();
    sub.callback([] {
        const Region region = load_region_file(region_file);
        const OracleResult result = exhaustive_best(region, routers, radius, cap, max_configs);
        std::cout << "best_f=" << result.best_fitness << " evaluated=" << result.evaluated
                  << " optimal_placements=" << result.best_placements.size() << "\n";
        for (const Placement& p : result.best_placements) {
            bool space = false;
            for (const Cell c : p.positions) {
                std::cout << (space ? " " : "") << c.x << "," << c.y;
                space = true;
            }
            std::cout << "\n";
        }
    });
}

void setup_render(CLI::App& sub) {
    static std::string region_file;
    static std::string positions_file;
    static int line = -1;
    static int radius = 8;
    static std::string out_file;
    sub.add_option("--region", region_file, "region file")->required();
    sub.add_option("--positions", positions_file, "positions log produced by reduce/solve")->required();
    sub.add_option("--line", line, "line in the positions file (-1 = last)")->capture_default_str();
    sub.add_option("--radius", radius, "coverage radius")->capture_default_str();
    sub.add_option("--out", out_file, "output .ppm file")->required();
    sub.callback([] {
        const Region region = load_region_file(region_file);
        const std::vector<std::vector<Cell>> lines = parse_positions_file(positions_file);
        if (lines.empty()) throw std::runtime_error("positions file has no lines");
        const int index = line < 0 ? static_cast<int>(lines.size()) - 1 : line;
        if (index < 0 || static_cast<std::size_t>(index) >= lines.size())
            throw std::runtime_error("line index " + std::to_string(line) + " out of range (file has " +
                                     std::to_string(lines.size()) + " lines)");
        const Placement placement{lines[static_cast<std::size_t>(index)], radius};
        const CoverState state = build_cover_state(region, placement);
        render_depth_image(region, state, out_file);
        std::cout << "wrote " << out_file << " (f=" << state.fitness() << ")\n";
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"router placement on gridded regions via constant-temperature local search"};
    app.require_subcommand(1);

    ExperimentConfig reduce_config, compare_config, solve_config, gen_config;
    RawOptions reduce_raw, compare_raw, solve_raw, gen_raw;
    FlatConfig reduce_file, compare_file, solve_file, gen_file;

    setup_generate(*app.add_subcommand("generate", "write a synthetic region file"), gen_file, gen_config,
                   gen_raw);
    setup_solve(*app.add_subcommand("solve", "one optimization run at a fixed router count"), solve_file,
                solve_config, solve_raw);
    setup_experiment_command(
        *app.add_subcommand("reduce", "optimize, then remove routers until coverage drops below threshold"),
        reduce_file, reduce_config, reduce_raw, true);
    setup_experiment_command(
        *app.add_subcommand("compare-strategies", "run all three removal strategies on the same seeds"),
        compare_file, compare_config, compare_raw, false);
    setup_oracle(*app.add_subcommand("oracle", "exhaustive optimum for tiny instances"));
    setup_render(*app.add_subcommand("render", "depth image from a region and a positions log"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
