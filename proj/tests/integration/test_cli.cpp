#include "mlrules/experiment.hpp"
#include "mlrules/model_io.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mlrules;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "mlrules_test_cli";

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome run(const std::string& args) {
    const auto out = kDir / "stdout.txt";
    const auto err = kDir / "stderr.txt";
    const std::string cmd = std::string("\"") + MLRULES_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path toy_csv() {
    const auto path = kDir / "toy.csv";
    if (!fs::exists(path)) {
        Rng rng(21);
        const auto d = oracle::random_dataset(rng, 90, 3, 2, 10);
        std::ofstream out(path);
        write_dataset(out, d);
    }
    return path;
}

std::string small_flags() { return " --labels 2 --pop-size 8 --generations 4 --mutants 4 --t 8 --seed 3"; }

struct Fixture {
    Fixture() { fs::create_directories(kDir); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "train twice gives identical archives; predict reproduces the training fitness") {
    const auto data = toy_csv().string();
    REQUIRE(run("train --dataset " + data + small_flags() + " --out " + (kDir / "t1").string()).code == 0);
    REQUIRE(run("train --dataset " + data + small_flags() + " --out " + (kDir / "t2").string()).code == 0);
    CHECK(slurp(kDir / "t1" / "archive.json") == slurp(kDir / "t2" / "archive.json"));

    const auto archive = load_archive(kDir / "t1" / "archive.json");
    const auto r = run("predict --model " + (kDir / "t1" / "best_model.json").string() + " --dataset " + data + " --out " +
                       (kDir / "pred.csv").string());
    REQUIRE(r.code == 0);
    std::ostringstream expected;
    expected << "micro F-Score: " << archive.population[archive.best].fitness.fscore;
    CHECK(r.err.find(expected.str()) != std::string::npos);
    CHECK(slurp(kDir / "pred.csv").rfind("l0,l1\n", 0) == 0);
}

TEST_CASE_FIXTURE(Fixture, "config file with command-line override") {
    const auto cfg = kDir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "[train]\ndataset=" << toy_csv().string() << "\nlabels=2\npop-size=6\ngenerations=2\nmutants=3\nt=4\n";
    }
    const auto r = run("--config " + cfg.string() + " train --pop-size 7 --out " + (kDir / "cfg").string());
    REQUIRE(r.code == 0);
    const auto resolved = slurp(kDir / "cfg" / "config.txt");
    CHECK(resolved.find("pop-size=7") != std::string::npos);
    CHECK(resolved.find("generations=2") != std::string::npos);
    CHECK(load_archive(kDir / "cfg" / "archive.json").population.size() == 7);
}

TEST_CASE_FIXTURE(Fixture, "evaluate prints the statistics table") {
    const auto r = run("evaluate --dataset " + toy_csv().string() + small_flags() + " --folds 2 --runs 2 --jobs 2 --out " +
                       (kDir / "eval").string());
    REQUIRE(r.code == 0);
    CHECK(r.out == slurp(kDir / "eval" / "statistics.csv"));
    CHECK(fs::exists(kDir / "eval" / "archives" / "fold1_run1.json"));

    const auto p = run("pareto " + (kDir / "eval" / "archives" / "fold0_run0.json").string() + " " +
                       (kDir / "eval" / "archives" / "fold1_run0.json").string() + " --out " + (kDir / "front").string());
    REQUIRE(p.code == 0);
    CHECK(p.out.rfind("fscore,size,interpretability\n", 0) == 0);
    CHECK(fs::exists(kDir / "front" / "pareto.svg"));
}

TEST_CASE_FIXTURE(Fixture, "cfsbe-trace shows both expansion orders") {
    Model m{2, 1, Individual{{Rule{{{4, 7}, {5, 9}}, {1}}}}, DefaultRule{{0}}, {"f1", "f2"}, {"y"}};
    save_model(kDir / "two_feature.json", m);
    const auto a = run("cfsbe-trace --model " + (kDir / "two_feature.json").string() + " --point 2,2 --order 0,1");
    REQUIRE(a.code == 0);
    CHECK(a.out.find("box: [-inf, +inf) [-inf, 5.000000)") != std::string::npos);
    const auto b = run("cfsbe-trace --model " + (kDir / "two_feature.json").string() + " --point 2,2 --order 1,0");
    REQUIRE(b.code == 0);
    CHECK(b.out.find("box: [-inf, 4.000000) [-inf, +inf)") != std::string::npos);
    CHECK(run("cfsbe-trace --model " + (kDir / "two_feature.json").string() + " --point 5,6").code == 1);
}

TEST_CASE_FIXTURE(Fixture, "exit codes") {
    const auto data = toy_csv().string();
    CHECK(run("train --dataset " + data + " --labels 4 --out " + (kDir / "bad").string()).code == 1);
    CHECK_FALSE(fs::exists(kDir / "bad"));
    CHECK(run("train --dataset " + (kDir / "absent.csv").string() + " --labels 1 --out " + (kDir / "x").string()).code == 2);
    CHECK(run("train --labels 1").code == 1);
    CHECK(run("frobnicate").code == 1);
    {
        std::ofstream out(kDir / "broken.csv");
        out << "a,b\n1,0\n3,x\n";
    }
    const auto r = run("train --dataset " + (kDir / "broken.csv").string() + " --labels 1 --out " + (kDir / "y").string());
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(run("predict --model " + (kDir / "absent.json").string() + " --dataset " + data).code == 2);
    CHECK(run("--help").code == 0);
}
