#pragma once

#include "mlrules/binary_matrix.hpp"
#include "mlrules/dataset.hpp"
#include "mlrules/evolution.hpp"
#include "mlrules/model_io.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mlrules {

struct ExperimentSpec {
    std::filesystem::path dataset;
    std::size_t labels = 0;
    std::size_t folds = 10;
    std::size_t runs = 30;
    EvolutionConfig evolution;
    std::filesystem::path out;
    std::size_t jobs = 1;   // worker threads for independent (fold, run) jobs; output does not depend on it

    void validate(bool cross_validating) const;

    /// `key = value` lines with every setting that influences results.
    std::string resolved_config(bool cross_validating) const;
};

/// Final population of one run plus what is needed to reuse its models.
struct Archive {
    std::size_t num_features = 0;
    std::size_t num_labels = 0;
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;
    DefaultRule default_rule;
    std::vector<Member> population;
    std::size_t best = 0;
    StopReason stop_reason = StopReason::None;
    std::size_t generations = 0;

    std::vector<FitnessTuple> fitness() const;
    Model model(std::size_t index) const;
    Model best_model() const { return model(best); }
};

Archive make_archive(const Dataset& train, EvolutionResult result);
nlohmann::json archive_to_json(const Archive& archive);
/// Validates arities and the consistency of every stored model.
Archive archive_from_json(const nlohmann::json& j);
std::string serialize_archive(const Archive& archive);
Archive load_archive(const std::filesystem::path& path);

/// Trains on the whole dataset and writes archive.json, best_model.json, generations.jsonl
/// and config.txt into spec.out.
Archive cmd_train(const ExperimentSpec& spec);

struct PredictionResult {
    BinaryMatrix predictions;
    std::optional<double> fscore;   // when the file carries label columns
};

/// Predicts every row of a dataset file. The file holds either num_features columns or
/// num_features + num_labels columns (labels trailing).
PredictionResult cmd_predict(const Model& model, const std::filesystem::path& dataset_path);
std::string predictions_csv(const BinaryMatrix& predictions, const std::vector<std::string>& label_names);

struct RunRecord {
    std::size_t fold = 0;
    std::size_t run = 0;
    double train_fscore = 0.0;
    double test_fscore = 0.0;
    std::size_t rules = 0;
};

struct Aggregate {
    double train_fscore = 0.0;
    double test_fscore = 0.0;
    double test_fscore_std = 0.0;
    double rules = 0.0;
    double rules_std = 0.0;
};

/// Per (fold, run) results of the training-best model, per-fold aggregates across runs and
/// an overall aggregate (means over all rows; std is the mean of the per-fold stds).
struct StatisticsTable {
    std::vector<RunRecord> rows;
    std::vector<Aggregate> per_fold;
    Aggregate overall;

    std::string to_csv() const;
};

StatisticsTable summarize(std::vector<RunRecord> rows, std::size_t folds);

/// Cross-validation harness. Writes statistics.csv, folds.csv, config.txt and one archive per
/// (fold, run) under spec.out/archives. Job seeds derive from (seed, fold, run).
StatisticsTable cmd_evaluate(const ExperimentSpec& spec);

struct ParetoRow {
    double fscore = 0.0;
    double size = 0.0;
    double interpretability = 0.0;

    bool operator==(const ParetoRow&) const = default;
};

/// Sorts each population by (fscore desc, size asc) and averages them elementwise.
/// All populations must have the same length.
std::vector<ParetoRow> average_populations(const std::vector<std::vector<FitnessTuple>>& populations);

/// Non-dominated rows (max fscore, min size) of the averaged matrix, ascending by size.
std::vector<ParetoRow> pareto_rows(const std::vector<std::vector<FitnessTuple>>& populations);

std::string pareto_csv(const std::vector<ParetoRow>& rows);
/// Scatter of interpretability (x) against F-Score (y).
std::string pareto_svg(const std::vector<ParetoRow>& rows, const std::string& title);

/// Reads archives, writes pareto.csv and pareto.svg into @p out. Mixed arities are rejected.
std::vector<ParetoRow> cmd_pareto(const std::vector<std::filesystem::path>& archives, const std::filesystem::path& out);

}  // namespace mlrules
