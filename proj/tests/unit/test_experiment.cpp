#include "mlrules/errors.hpp"
#include "mlrules/experiment.hpp"
#include "mlrules/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mlrules;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("mlrules_test_experiment_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_toy(const fs::path& dir, std::uint64_t seed, std::size_t rows = 80) {
    Rng rng(seed);
    const auto d = oracle::random_dataset(rng, rows, 3, 2, 12);
    const auto path = dir / "toy.csv";
    std::ofstream out(path);
    write_dataset(out, d);
    return path;
}

ExperimentSpec toy_spec(const fs::path& dataset, const fs::path& out) {
    ExperimentSpec spec;
    spec.dataset = dataset;
    spec.labels = 2;
    spec.folds = 2;
    spec.runs = 2;
    spec.evolution.pop_size = 8;
    spec.evolution.max_generations = 5;
    spec.evolution.mutants_per_generation = 4;
    spec.evolution.max_failed_attempts = 100;
    spec.evolution.t = 8;
    spec.evolution.rng_seed = 5;
    spec.out = out;
    return spec;
}

}  // namespace

TEST_CASE("train writes a reloadable archive") {
    const auto dir = scratch("train");
    const auto spec = toy_spec(write_toy(dir, 1), dir / "out");
    const auto archive = cmd_train(spec);
    CHECK(archive.population.size() == spec.evolution.pop_size);
    for (const auto& name : {"archive.json", "best_model.json", "generations.jsonl", "config.txt"})
        CHECK(fs::exists(spec.out / name));

    const auto back = load_archive(spec.out / "archive.json");
    CHECK(back.population == archive.population);
    CHECK(serialize_archive(back) == slurp(spec.out / "archive.json"));
    for (std::size_t i = 0; i < back.population.size(); ++i) CHECK(model_consistent(back.model(i).individual));

    // the best model reproduces its archived training fitness
    const auto model = load_model(spec.out / "best_model.json");
    const auto prediction = cmd_predict(model, spec.dataset);
    REQUIRE(prediction.fscore.has_value());
    CHECK(*prediction.fscore == archive.population[archive.best].fitness.fscore);

    std::size_t lines = 0;
    std::istringstream logs(slurp(spec.out / "generations.jsonl"));
    for (std::string line; std::getline(logs, line);) ++lines;
    CHECK(lines == spec.evolution.max_generations);
}

TEST_CASE("train is reproducible byte for byte") {
    const auto dir = scratch("repro");
    const auto data = write_toy(dir, 2);
    cmd_train(toy_spec(data, dir / "a"));
    cmd_train(toy_spec(data, dir / "b"));
    CHECK(slurp(dir / "a" / "archive.json") == slurp(dir / "b" / "archive.json"));
    CHECK(slurp(dir / "a" / "generations.jsonl") == slurp(dir / "b" / "generations.jsonl"));
}

TEST_CASE("label count must leave a feature column") {
    const auto dir = scratch("labels");
    auto spec = toy_spec(write_toy(dir, 3), dir / "out");
    spec.labels = 5;
    CHECK_THROWS_AS(cmd_train(spec), validation_error);
    CHECK_FALSE(fs::exists(spec.out));
}

TEST_CASE("predict") {
    const auto dir = scratch("predict");
    Model m{1, 2, Individual{{Rule{{{0, 5}}, {1, 0}}}}, DefaultRule{{0, 1}}, {"x"}, {"a", "b"}};
    {
        std::ofstream f(dir / "features.csv");
        f << "x\n1\n7\n";
    }
    const auto r = cmd_predict(m, dir / "features.csv");
    CHECK_FALSE(r.fscore.has_value());
    CHECK(r.predictions(0, 0) == 1);
    CHECK(r.predictions(0, 1) == 0);
    CHECK(r.predictions(1, 0) == 0);   // uncovered: default row
    CHECK(r.predictions(1, 1) == 1);
    CHECK(predictions_csv(r.predictions, m.label_names) == "a,b\n1,0\n0,1\n");
    {
        std::ofstream f(dir / "wide.csv");
        f << "x,y\n1,2\n";
    }
    CHECK_THROWS_AS(cmd_predict(m, dir / "wide.csv"), validation_error);
    CHECK_THROWS_AS(cmd_predict(m, dir / "missing.csv"), io_error);
}

TEST_CASE("summaries") {
    const std::vector<RunRecord> rows{{0, 0, 0.8, 0.5, 4}, {0, 1, 0.6, 0.3, 6}, {1, 0, 0.7, 0.4, 5}, {1, 1, 0.9, 0.6, 9}};
    const auto table = summarize(rows, 2);
    REQUIRE(table.per_fold.size() == 2);
    CHECK(table.per_fold[0].test_fscore == doctest::Approx(0.4));
    CHECK(table.per_fold[0].test_fscore_std == doctest::Approx(std::sqrt(0.02)));
    CHECK(table.per_fold[1].rules == doctest::Approx(7.0));
    CHECK(table.per_fold[1].rules_std == doctest::Approx(std::sqrt(8.0)));
    CHECK(table.overall.train_fscore == doctest::Approx(0.75));
    CHECK(table.overall.test_fscore == doctest::Approx(0.45));
    CHECK(table.overall.rules == doctest::Approx(6.0));
    CHECK(table.overall.rules_std == doctest::Approx((std::sqrt(2.0) + std::sqrt(8.0)) / 2));

    const auto csv = table.to_csv();
    std::istringstream in(csv);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == 1 + 4 + 2 + 1);
    CHECK(lines[0] == "fold,run,train_fscore,test_fscore,test_fscore_std,rules,rules_std");
    CHECK(lines[1] == "0,0,0.800000,0.500000,,4,");
    CHECK(lines[7].rfind("all,mean,0.750000,0.450000,", 0) == 0);
}

TEST_CASE("evaluate: rows, aggregates, archives and determinism") {
    const auto dir = scratch("evaluate");
    const auto data = write_toy(dir, 4);
    auto spec = toy_spec(data, dir / "one");
    spec.jobs = 1;
    const auto table = cmd_evaluate(spec);
    CHECK(table.rows.size() == 4);
    CHECK(table.per_fold.size() == 2);

    double mean = 0.0;
    for (const auto& r : table.rows) mean += r.test_fscore / 4.0;
    CHECK(table.overall.test_fscore == doctest::Approx(mean).epsilon(1e-12));

    // reported training fitness equals a recomputation from the archived best model
    const auto full = load_dataset(data, 2);
    std::ifstream folds_in(spec.out / "folds.csv");
    const auto split = read_fold_split(folds_in);
    for (const auto& r : table.rows) {
        const auto archive =
            load_archive(spec.out / "archives" / ("fold" + std::to_string(r.fold) + "_run" + std::to_string(r.run) + ".json"));
        const auto train = full.subset(split.train_indices(r.fold));
        const auto test = full.subset(split.test_indices(r.fold));
        const auto best = archive.best_model();
        CHECK(evaluate(best.individual, best.default_rule, train).fscore == r.train_fscore);
        CHECK(evaluate(best.individual, best.default_rule, test).fscore == r.test_fscore);
        CHECK(best.individual.size() == r.rules);
    }

    auto threaded = spec;
    threaded.out = dir / "four";
    threaded.jobs = 4;
    cmd_evaluate(threaded);
    CHECK(slurp(spec.out / "statistics.csv") == slurp(threaded.out / "statistics.csv"));
    CHECK(slurp(spec.out / "archives" / "fold1_run1.json") == slurp(threaded.out / "archives" / "fold1_run1.json"));
    CHECK(slurp(spec.out / "config.txt") == slurp(threaded.out / "config.txt"));
}

TEST_CASE("spec validation") {
    ExperimentSpec spec;
    spec.dataset = "x.csv";
    spec.labels = 1;
    spec.folds = 1;
    CHECK_THROWS_AS(spec.validate(true), validation_error);
    CHECK_NOTHROW(spec.validate(false));
    spec.runs = 0;
    CHECK_THROWS_AS(spec.validate(false), validation_error);
}

TEST_CASE("averaged fronts") {
    SUBCASE("three hand-built populations") {
        const std::vector<std::vector<FitnessTuple>> pops{
            {{0.2, 1}, {0.6, 5}, {0.4, 3}},
            {{0.5, 4}, {0.3, 2}, {0.1, 1}},
            {{0.7, 6}, {0.1, 1}, {0.4, 3}},
        };
        // sorted rows: (0.6,5)(0.4,3)(0.2,1) / (0.5,4)(0.3,2)(0.1,1) / (0.7,6)(0.4,3)(0.1,1)
        const auto avg = average_populations(pops);
        REQUIRE(avg.size() == 3);
        CHECK(avg[0].fscore == doctest::Approx(0.6));
        CHECK(avg[0].size == doctest::Approx(5.0));
        CHECK(avg[1].fscore == doctest::Approx(1.1 / 3));
        CHECK(avg[1].size == doctest::Approx(8.0 / 3));
        CHECK(avg[2].fscore == doctest::Approx(0.4 / 3));
        CHECK(avg[2].size == doctest::Approx(1.0));
        const auto rows = pareto_rows(pops);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].size == doctest::Approx(1.0));
        CHECK(rows[2].size == doctest::Approx(5.0));
        CHECK(rows[2].interpretability == doctest::Approx(0.2));
    }
    SUBCASE("one archive or two identical ones") {
        const std::vector<FitnessTuple> pop{{0.9, 5}, {0.8, 3}, {0.7, 10}};
        const auto one = pareto_rows({pop});
        CHECK(one == pareto_rows({pop, pop}));
        REQUIRE(one.size() == 2);
        CHECK(one[0].size == 3.0);
        CHECK(one[1].fscore == 0.9);
    }
    SUBCASE("lengths must agree") {
        CHECK_THROWS_AS(average_populations({{{0.1, 1}}, {{0.1, 1}, {0.2, 2}}}), validation_error);
    }
}

TEST_CASE("pareto export") {
    const auto dir = scratch("pareto");
    const auto spec = toy_spec(write_toy(dir, 5), dir / "run");
    cmd_train(spec);
    const auto rows = cmd_pareto({spec.out / "archive.json"}, dir / "front");
    CHECK_FALSE(rows.empty());
    const auto csv = slurp(dir / "front" / "pareto.csv");
    CHECK(csv.rfind("fscore,size,interpretability\n", 0) == 0);
    CHECK(csv == pareto_csv(rows));
    const auto svg = slurp(dir / "front" / "pareto.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].size >= rows[i - 1].size);
        CHECK(rows[i].fscore >= rows[i - 1].fscore);
    }
}
