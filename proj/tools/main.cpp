// mlrules command-line front end.

#include "mlrules/cfsbe.hpp"
#include "mlrules/errors.hpp"
#include "mlrules/experiment.hpp"
#include "mlrules/model_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace mlrules;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitInvariant = 3;

void add_evolution_flags(CLI::App& cmd, ExperimentSpec& spec) {
    cmd.add_option("--dataset", spec.dataset, "CSV dataset (header row, labels trailing)")->required();
    cmd.add_option("--labels", spec.labels, "Number of trailing label columns")->required();
    cmd.add_option("--pop-size", spec.evolution.pop_size, "Population size")->capture_default_str();
    cmd.add_option("--generations", spec.evolution.max_generations, "Maximum number of generations")->capture_default_str();
    cmd.add_option("--mutants", spec.evolution.mutants_per_generation, "Mutants per generation (m)")->capture_default_str();
    cmd.add_option("--max-failed", spec.evolution.max_failed_attempts, "Failed mutation attempts that stop evolution")
        ->capture_default_str();
    cmd.add_option("--t", spec.evolution.t, "Instances a new rule tries to cover")->capture_default_str();
    cmd.add_option("--seed", spec.evolution.rng_seed, "Random seed")->capture_default_str();
    cmd.add_option("--out", spec.out, "Output directory")->required();
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw validation_error("not a number: '" + cell + "'");
        }
    }
    return out;
}

int trace_cfsbe(const std::filesystem::path& model_path, const std::string& point_text, const std::string& order_text) {
    const auto model = load_model(model_path);
    const auto point = parse_numbers(point_text);
    if (point.size() != model.num_features)
        throw validation_error("--point has " + std::to_string(point.size()) + " values; model has " +
                               std::to_string(model.num_features) + " features");
    auto order = ExpansionOrder::identity(model.num_features);
    if (!order_text.empty()) {
        std::vector<std::size_t> dims;
        for (double v : parse_numbers(order_text)) dims.push_back(static_cast<std::size_t>(v));
        if (dims.size() != model.num_features) throw validation_error("--order must list every feature once");
        order = ExpansionOrder(std::move(dims));
    }
    std::vector<ExpansionStep> trace;
    const auto box = enlarge_box(model.individual.rules, point, order, &trace);
    const auto bound = [](double v) { return std::isinf(v) ? (v < 0 ? std::string("-inf") : std::string("+inf")) : std::to_string(v); };
    for (const auto& step : trace) {
        std::cout << "dimension " << step.dimension << ": obstructors [";
        for (std::size_t k = 0; k < step.obstructors.size(); ++k) std::cout << (k ? "," : "") << step.obstructors[k];
        std::cout << "] -> [" << bound(step.lower) << ", " << bound(step.upper) << ")";
        if (step.lower_limiter >= 0) std::cout << " lower by rule " << step.lower_limiter;
        if (step.upper_limiter >= 0) std::cout << " upper by rule " << step.upper_limiter;
        std::cout << '\n';
    }
    std::cout << "box:";
    for (const auto& t : box) std::cout << " [" << bound(t.lower) << ", " << bound(t.upper) << ")";
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective evolution of consistent multi-label rule sets"};
    app.set_config("--config", "", "Key=value configuration file; command-line flags override it");
    app.require_subcommand(1);

    ExperimentSpec train_spec;
    auto* train = app.add_subcommand("train", "Evolve a population of models on a whole dataset");
    add_evolution_flags(*train, train_spec);

    ExperimentSpec eval_spec;
    eval_spec.jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* evaluate = app.add_subcommand("evaluate", "Cross-validated runs with per-fold statistics");
    add_evolution_flags(*evaluate, eval_spec);
    evaluate->add_option("--folds", eval_spec.folds, "Number of folds")->capture_default_str();
    evaluate->add_option("--runs", eval_spec.runs, "Runs per fold")->capture_default_str();
    evaluate->add_option("--jobs", eval_spec.jobs, "Worker threads (results do not depend on it)");

    std::filesystem::path predict_model, predict_dataset, predict_out;
    auto* predict = app.add_subcommand("predict", "Apply a model to a dataset file");
    predict->add_option("--model", predict_model, "Model document (best_model.json)")->required();
    predict->add_option("--dataset", predict_dataset, "CSV with the model's features, optionally followed by labels")->required();
    predict->add_option("--out", predict_out, "Prediction CSV (default: stdout)");

    std::vector<std::filesystem::path> pareto_archives;
    std::filesystem::path pareto_out;
    auto* pareto = app.add_subcommand("pareto", "Average final populations and export the non-dominated rows");
    pareto->add_option("archives", pareto_archives, "Archive files")->required();
    pareto->add_option("--out", pareto_out, "Output directory")->required();

    std::filesystem::path trace_model;
    std::string trace_point, trace_order;
    auto* trace = app.add_subcommand("cfsbe-trace", "Show how a box is enlarged around a point against a model's rules");
    trace->add_option("--model", trace_model, "Model document")->required();
    trace->add_option("--point", trace_point, "Comma-separated seed point")->required();
    trace->add_option("--order", trace_order, "Comma-separated expansion order (default 0,1,...)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*train) {
            const auto archive = cmd_train(train_spec);
            const auto& best = archive.population[archive.best].fitness;
            std::cout << "stop: " << to_string(archive.stop_reason) << ", generations: " << archive.generations
                      << ", best training F-Score " << best.fscore << " with " << best.size << " rules\n";
        } else if (*evaluate) {
            const auto table = cmd_evaluate(eval_spec);
            std::cout << table.to_csv();
        } else if (*predict) {
            const auto model = load_model(predict_model);
            const auto result = cmd_predict(model, predict_dataset);
            const auto csv = predictions_csv(result.predictions, model.label_names);
            if (predict_out.empty())
                std::cout << csv;
            else
                write_text_file(predict_out, csv);
            if (result.fscore) std::cerr << "micro F-Score: " << *result.fscore << '\n';
        } else if (*pareto) {
            const auto rows = cmd_pareto(pareto_archives, pareto_out);
            std::cout << pareto_csv(rows);
        } else if (*trace) {
            return trace_cfsbe(trace_model, trace_point, trace_order);
        }
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const invariant_violation& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return 0;
}
