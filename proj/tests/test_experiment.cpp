#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "meshplace/experiment.hpp"
#include "test_support.hpp"

using namespace meshplace;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ReductionReport synthetic_report() {
    ReductionReport report;
    report.strategy = RemovalStrategy::MinCoverage;
    report.threshold = 0.5;
    ReductionStep a;
    a.router_count = 3;
    a.fitness = 21;
    a.required_fraction = 0.875;
    a.optional_fraction = 0.03125;
    a.removed = Cell{4, 5};
    a.placement = {{{1, 2}, {4, 5}, {7, 0}}, 2};
    ReductionStep b;
    b.router_count = 2;
    b.fitness = 20;
    b.required_fraction = 0.8333333;
    b.optional_fraction = 0.0;
    b.placement = {{{1, 2}, {7, 0}}, 2};
    report.steps = {a, b};
    ReductionStep c;
    c.router_count = 1;
    c.fitness = 11;
    c.required_fraction = 0.4583333;
    c.optional_fraction = 0.125;
    c.placement = {{{1, 2}}, 2};
    report.tail_steps = {c};
    report.optimal_count = 2;
    report.final_placement = b.placement;
    return report;
}

ExperimentConfig tiny_config(const fs::path& out_dir) {
    ExperimentConfig config;
    config.gen.width = 24;
    config.gen.height = 24;
    config.gen.interest_blob_count = 2;
    config.gen.interest_radius_min = 3;
    config.gen.interest_radius_max = 5;
    config.gen.prohibited_blob_count = 1;
    config.gen.prohibited_radius_min = 2;
    config.gen.prohibited_radius_max = 2;
    config.radius = 3;
    config.nbtostop = 50;
    config.seeds = {1, 2};
    config.jobs = 2;
    config.out_dir = out_dir.string();
    return config;
}

}  // namespace

TEST_CASE("resolve_strategies") {
    CHECK(resolve_strategies(StrategyChoice::MinSingle) ==
          std::vector<RemovalStrategy>{RemovalStrategy::MinSingleCoverage});
    CHECK(resolve_strategies(StrategyChoice::All).size() == 3);
}

TEST_CASE("curve CSV bytes are pinned") {
    const fs::path dir = fresh_dir("meshplace_csv_test");
    const fs::path path = dir / "curve.csv";
    emit_coverage_curve(synthetic_report(), 17, path);
    CHECK(slurp(path) ==
          "router_count,required_fraction,optional_fraction,f,strategy,seed\n"
          "3,0.8750,0.0312,21,min-coverage,17\n"
          "2,0.8333,0.0000,20,min-coverage,17\n"
          "1,0.4583,0.1250,11,min-coverage,17\n");
    fs::remove_all(dir);
}

TEST_CASE("positions files round-trip") {
    const fs::path dir = fresh_dir("meshplace_positions_test");
    const fs::path path = dir / "steps.positions";
    const ReductionReport report = synthetic_report();
    write_positions_file(report, path);
    CHECK(slurp(path) == "1,2 4,5 7,0\n1,2 7,0\n1,2\n");

    const std::vector<std::vector<Cell>> parsed = parse_positions_file(path);
    const std::vector<const ReductionStep*> steps = curve_steps(report);
    REQUIRE(parsed.size() == steps.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) CHECK(parsed[i] == steps[i]->placement.positions);

    SUBCASE("malformed tokens are rejected") {
        for (const char* bad : {"5;10\n", "5,\n", "x,1\n", "5,10x\n", "5,10,3\n"}) {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out << bad;
            out.close();
            CHECK_THROWS_AS(parse_positions_file(path), std::runtime_error);
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("depth image pixels follow the color table") {
    // One cell per class/depth bucket, radius-1 discs so each router hits
    // exactly its own cell.
    const Region region = test_support::from_rows({"Ixoooo"});
    CoverState state(region, disc_offsets(1));
    state.add_router({3, 0});
    state.add_router({4, 0});
    state.add_router({4, 0});
    state.add_router({5, 0});
    state.add_router({5, 0});
    state.add_router({5, 0});

    const fs::path dir = fresh_dir("meshplace_ppm_test");
    const fs::path path = dir / "depth.ppm";
    render_depth_image(region, state, path);

    const std::string want = std::string("P6\n6 1\n255\n") + std::string{
        '\x00', '\x00', '\x00',              // uncovered interest: black
        '\x20', '\x20', '\x20',              // uncovered, placement-prohibited
        '\x40', '\x40', '\x40',              // uncovered optional: dark gray
        '\x00', '\x00', static_cast<char>('\xff'),  // depth 1: blue
        static_cast<char>('\xff'), '\x00', '\x00',  // depth 2: red
        static_cast<char>('\xff'), static_cast<char>('\xff'), static_cast<char>('\xff'),  // depth 3+
    };
    CHECK(slurp(path) == want);
    fs::remove_all(dir);
}

TEST_CASE("step_at and peak_count read the full visited curve") {
    const ReductionReport report = synthetic_report();
    REQUIRE(step_at(report, 2) != nullptr);
    CHECK(step_at(report, 2)->fitness == 20);
    REQUIRE(step_at(report, 1) != nullptr);  // tail counts are visible too
    CHECK(step_at(report, 4) == nullptr);
    CHECK(peak_count(report) == 3);
}

TEST_CASE("run_experiment validates its config") {
    ExperimentConfig config;
    config.seeds.clear();
    CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
}

TEST_CASE("run_experiment writes a complete, deterministic output tree") {
    const fs::path dir_a = fresh_dir("meshplace_exp_a");
    const ExperimentResult result = run_experiment(tiny_config(dir_a));

    REQUIRE(result.outcomes.size() == 2);
    for (const SeedOutcome& outcome : result.outcomes) {
        const fs::path seed_dir = dir_a / ("seed" + std::to_string(outcome.seed));
        CHECK(fs::exists(seed_dir / "region.region"));
        const Region region = load_region_file((seed_dir / "region.region").string());
        CHECK(region.width() == 24);

        REQUIRE(outcome.runs.size() == 1);
        const ReductionReport& report = outcome.runs.front().report;
        const fs::path csv = seed_dir / "min-single.csv";
        const fs::path positions = seed_dir / "min-single.positions";
        const fs::path image = seed_dir / "min-single.ppm";
        REQUIRE(fs::exists(csv));
        REQUIRE(fs::exists(positions));
        REQUIRE(fs::exists(image));

        // Positions lines pair up with curve rows, and placements recompute to
        // the recorded fitness against the emitted region file.
        const std::vector<std::vector<Cell>> lines = parse_positions_file(positions);
        const std::vector<const ReductionStep*> steps = curve_steps(report);
        REQUIRE(lines.size() == steps.size());
        for (std::size_t i = 0; i < lines.size(); ++i) {
            CHECK(lines[i] == steps[i]->placement.positions);
            CHECK(test_support::brute_fitness(region, lines[i], 3) == steps[i]->fitness);
        }

        std::istringstream csv_in(slurp(csv));
        std::string line;
        std::size_t rows = 0;
        while (std::getline(csv_in, line))
            if (!line.empty()) ++rows;
        CHECK(rows == steps.size() + 1);  // header + one row per step
    }

    const std::string summary = slurp(result.summary_path);
    CHECK(summary.find("seed 1:") != std::string::npos);
    CHECK(summary.find("aggregates") != std::string::npos);
    CHECK(summary.find("min-single") != std::string::npos);

    // Second run: every file byte-identical.
    const fs::path dir_b = fresh_dir("meshplace_exp_b");
    run_experiment(tiny_config(dir_b));
    for (const auto& entry : fs::recursive_directory_iterator(dir_a)) {
        if (!entry.is_regular_file()) continue;
        const fs::path rel = fs::relative(entry.path(), dir_a);
        CAPTURE(rel.string());
        CHECK(slurp(entry.path()) == slurp(dir_b / rel));
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("strategy comparison shares the initial optimization per seed") {
    const fs::path dir = fresh_dir("meshplace_exp_compare");
    ExperimentConfig config = tiny_config(dir);
    config.strategy = StrategyChoice::All;
    config.seeds = {3};
    const ExperimentResult result = run_experiment(config);

    REQUIRE(result.outcomes.size() == 1);
    const std::vector<StrategyOutcome>& runs = result.outcomes.front().runs;
    REQUIRE(runs.size() == 3);
    const ReductionStep& first = runs.front().report.steps.front();
    for (const StrategyOutcome& run : runs) {
        REQUIRE_FALSE(run.report.steps.empty());
        CHECK(run.report.steps.front().placement == first.placement);
        CHECK(run.report.steps.front().fitness == first.fitness);
        CHECK(fs::exists(dir / "seed3" / (strategy_name(run.strategy) + ".csv")));
    }
    fs::remove_all(dir);
}
