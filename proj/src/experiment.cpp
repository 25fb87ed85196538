#include "mlrules/experiment.hpp"

#include "mlrules/errors.hpp"
#include "mlrules/metrics.hpp"
#include "text_util.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace mlrules {

using nlohmann::json;

void ExperimentSpec::validate(bool cross_validating) const {
    if (dataset.empty()) throw validation_error("--dataset is required");
    if (labels == 0) throw validation_error("--labels must be at least 1");
    if (runs == 0) throw validation_error("--runs must be at least 1");
    if (cross_validating && folds < 2) throw validation_error("--folds must be at least 2");
    if (jobs == 0) throw validation_error("--jobs must be at least 1");
    evolution.validate();
}

std::string ExperimentSpec::resolved_config(bool cross_validating) const {
    std::ostringstream out;
    out << "dataset=\"" << dataset.generic_string() << "\"\n";
    out << "labels=" << labels << '\n';
    if (cross_validating) {
        out << "folds=" << folds << '\n';
        out << "runs=" << runs << '\n';
    }
    out << "pop-size=" << evolution.pop_size << '\n';
    out << "generations=" << evolution.max_generations << '\n';
    out << "mutants=" << evolution.mutants_per_generation << '\n';
    out << "max-failed=" << evolution.max_failed_attempts << '\n';
    out << "t=" << evolution.t << '\n';
    out << "seed=" << evolution.rng_seed << '\n';
    return out.str();
}

std::vector<FitnessTuple> Archive::fitness() const {
    std::vector<FitnessTuple> out;
    out.reserve(population.size());
    for (const auto& m : population) out.push_back(m.fitness);
    return out;
}

Model Archive::model(std::size_t index) const {
    if (index >= population.size()) throw precondition_error("archive: model index out of range");
    return Model{num_features, num_labels, population[index].individual, default_rule, feature_names, label_names};
}

Archive make_archive(const Dataset& train, EvolutionResult result) {
    Archive archive;
    archive.num_features = train.num_features();
    archive.num_labels = train.num_labels();
    archive.feature_names = train.feature_names();
    archive.label_names = train.label_names();
    archive.default_rule = std::move(result.default_rule);
    archive.population = std::move(result.population);
    archive.best = best_member(archive.population);
    archive.stop_reason = result.stop_reason;
    archive.generations = result.logs.size();
    return archive;
}

json archive_to_json(const Archive& archive) {
    json population = json::array();
    for (const auto& m : archive.population) {
        json rules = json::array();
        for (const auto& r : m.individual.rules) rules.push_back(rule_to_json(r));
        population.push_back(json{{"fscore", m.fitness.fscore}, {"size", m.fitness.size}, {"rules", std::move(rules)}});
    }
    json labels = json::array();
    for (auto bit : archive.default_rule.consequent) labels.push_back(static_cast<int>(bit));
    return json{{"format", "mlrules-archive"},
                {"version", 1},
                {"num_features", archive.num_features},
                {"num_labels", archive.num_labels},
                {"feature_names", archive.feature_names},
                {"label_names", archive.label_names},
                {"default_rule", std::move(labels)},
                {"best", archive.best},
                {"stop_reason", to_string(archive.stop_reason)},
                {"generations", archive.generations},
                {"population", std::move(population)}};
}

Archive archive_from_json(const json& j) {
    try {
        if (j.value("format", std::string{}) != "mlrules-archive") throw validation_error("archive: unknown format tag");
        Archive archive;
        archive.num_features = j.at("num_features").get<std::size_t>();
        archive.num_labels = j.at("num_labels").get<std::size_t>();
        archive.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        archive.label_names = j.at("label_names").get<std::vector<std::string>>();
        archive.best = j.at("best").get<std::size_t>();
        archive.generations = j.at("generations").get<std::size_t>();
        const auto reason = j.at("stop_reason").get<std::string>();
        for (auto r : {StopReason::None, StopReason::GenerationsExhausted, StopReason::FailedAttempts})
            if (to_string(r) == reason) archive.stop_reason = r;

        // Reuse the model validator for every member.
        for (const auto& m : j.at("population")) {
            json doc{{"num_features", archive.num_features},
                     {"num_labels", archive.num_labels},
                     {"default_rule", j.at("default_rule")},
                     {"rules", m.at("rules")},
                     {"feature_names", archive.feature_names},
                     {"label_names", archive.label_names}};
            auto model = model_from_json(doc);
            archive.default_rule = model.default_rule;
            FitnessTuple fitness{m.at("fscore").get<double>(), m.at("size").get<std::size_t>()};
            if (fitness.size != model.individual.size()) throw validation_error("archive: stored size differs from rule count");
            archive.population.push_back(Member{std::move(model.individual), fitness});
        }
        if (archive.population.empty()) throw validation_error("archive: empty population");
        if (archive.best >= archive.population.size()) throw validation_error("archive: best index out of range");
        return archive;
    } catch (const json::exception& e) {
        throw validation_error(std::string("archive: malformed document: ") + e.what());
    }
}

std::string serialize_archive(const Archive& archive) { return dump_document(archive_to_json(archive)); }

Archive load_archive(const std::filesystem::path& path) { return archive_from_json(read_json_file(path)); }

Archive cmd_train(const ExperimentSpec& spec) {
    spec.validate(false);
    const auto columns = count_columns(spec.dataset);
    if (spec.labels >= columns)
        throw validation_error("--labels " + std::to_string(spec.labels) + " leaves no feature columns in '" +
                               spec.dataset.string() + "' (" + std::to_string(columns) + " columns)");
    const auto dataset = load_dataset(spec.dataset, spec.labels);

    std::string log_text;
    EvolutionHooks hooks;
    hooks.on_generation = [&](const GenerationLog& log) { log_text += log_record(log) + "\n"; };
    auto archive = make_archive(dataset, run_evolution(dataset, spec.evolution, hooks));

    write_text_file(spec.out / "archive.json", serialize_archive(archive));
    write_text_file(spec.out / "best_model.json", serialize_model(archive.best_model()));
    write_text_file(spec.out / "generations.jsonl", log_text);
    write_text_file(spec.out / "config.txt", spec.resolved_config(false));
    return archive;
}

PredictionResult cmd_predict(const Model& model, const std::filesystem::path& dataset_path) {
    const auto columns = count_columns(dataset_path);
    PredictionResult result;
    if (columns == model.num_features + model.num_labels) {
        const auto data = load_dataset(dataset_path, model.num_labels);
        result.predictions = predict_all(model.individual, model.default_rule, data);
        result.fscore = micro_fscore(result.predictions, data.labels());
        return result;
    }
    if (columns != model.num_features)
        throw validation_error("'" + dataset_path.string() + "' has " + std::to_string(columns) + " columns; model expects " +
                               std::to_string(model.num_features) + " features (optionally followed by " +
                               std::to_string(model.num_labels) + " labels)");
    std::ifstream in(dataset_path);
    if (!in) throw io_error("cannot open dataset '" + dataset_path.string() + "'");
    const auto features = parse_feature_rows(in, model.num_features);
    const std::size_t rows = features.size() / model.num_features;
    result.predictions = BinaryMatrix(rows, model.num_labels);
    for (std::size_t i = 0; i < rows; ++i) {
        std::span<const double> row(features.data() + i * model.num_features, model.num_features);
        std::ranges::copy(predict(model.individual, model.default_rule, row), result.predictions.row(i).begin());
    }
    return result;
}

std::string predictions_csv(const BinaryMatrix& predictions, const std::vector<std::string>& label_names) {
    std::string out;
    for (std::size_t l = 0; l < predictions.cols(); ++l) {
        if (l) out += ',';
        out += l < label_names.size() ? label_names[l] : "l" + std::to_string(l);
    }
    out += '\n';
    for (std::size_t i = 0; i < predictions.rows(); ++i) {
        for (std::size_t l = 0; l < predictions.cols(); ++l) {
            if (l) out += ',';
            out += predictions(i, l) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

namespace {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

// Sample standard deviation; 0 for fewer than two values.
MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    if (values.empty()) return out;
    for (auto v : values) out.mean += v;
    out.mean /= static_cast<double>(values.size());
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (auto v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return out;
}

}  // namespace

StatisticsTable summarize(std::vector<RunRecord> rows, std::size_t folds) {
    StatisticsTable table;
    table.rows = std::move(rows);
    std::vector<double> all_train, all_test, all_rules;
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<double> train, test, rules;
        for (const auto& r : table.rows) {
            if (r.fold != f) continue;
            train.push_back(r.train_fscore);
            test.push_back(r.test_fscore);
            rules.push_back(static_cast<double>(r.rules));
        }
        const auto t = mean_std(test);
        const auto k = mean_std(rules);
        table.per_fold.push_back(Aggregate{mean_std(train).mean, t.mean, t.std, k.mean, k.std});
        all_train.insert(all_train.end(), train.begin(), train.end());
        all_test.insert(all_test.end(), test.begin(), test.end());
        all_rules.insert(all_rules.end(), rules.begin(), rules.end());
    }
    table.overall.train_fscore = mean_std(all_train).mean;
    table.overall.test_fscore = mean_std(all_test).mean;
    table.overall.rules = mean_std(all_rules).mean;
    for (const auto& a : table.per_fold) {
        table.overall.test_fscore_std += a.test_fscore_std / static_cast<double>(folds);
        table.overall.rules_std += a.rules_std / static_cast<double>(folds);
    }
    return table;
}

std::string StatisticsTable::to_csv() const {
    using detail::format_fixed;
    std::string out = "fold,run,train_fscore,test_fscore,test_fscore_std,rules,rules_std\n";
    for (const auto& r : rows)
        out += std::to_string(r.fold) + "," + std::to_string(r.run) + "," + format_fixed(r.train_fscore) + "," +
               format_fixed(r.test_fscore) + ",," + std::to_string(r.rules) + ",\n";
    const auto aggregate_line = [](const std::string& fold, const Aggregate& a) {
        return fold + ",mean," + format_fixed(a.train_fscore) + "," + format_fixed(a.test_fscore) + "," +
               format_fixed(a.test_fscore_std) + "," + format_fixed(a.rules) + "," + format_fixed(a.rules_std) + "\n";
    };
    for (std::size_t f = 0; f < per_fold.size(); ++f) out += aggregate_line(std::to_string(f), per_fold[f]);
    out += aggregate_line("all", overall);
    return out;
}

StatisticsTable cmd_evaluate(const ExperimentSpec& spec) {
    spec.validate(true);
    const auto columns = count_columns(spec.dataset);
    if (spec.labels >= columns)
        throw validation_error("--labels " + std::to_string(spec.labels) + " leaves no feature columns in '" +
                               spec.dataset.string() + "'");
    const auto dataset = load_dataset(spec.dataset, spec.labels);

    Rng split_rng(derive_seed(spec.evolution.rng_seed, {spec.folds}));
    const auto split = split_folds(dataset.num_instances(), spec.folds, split_rng);

    struct Job {
        std::size_t fold;
        std::size_t run;
        RunRecord record;
        std::exception_ptr error;
    };
    std::vector<Job> jobs;
    for (std::size_t f = 0; f < spec.folds; ++f)
        for (std::size_t r = 0; r < spec.runs; ++r) jobs.push_back(Job{f, r, {}, nullptr});

    const auto archive_dir = spec.out / "archives";
    std::error_code ec;
    std::filesystem::create_directories(archive_dir, ec);
    if (ec) throw io_error("cannot create directory '" + archive_dir.string() + "': " + ec.message());

    const auto execute = [&](Job& job) {
        const auto train_idx = split.train_indices(job.fold);
        const auto test_idx = split.test_indices(job.fold);
        const auto train = dataset.subset(train_idx);
        const auto test = dataset.subset(test_idx);
        auto cfg = spec.evolution;
        cfg.rng_seed = derive_seed(spec.evolution.rng_seed, {job.fold, job.run});
        const auto archive = make_archive(train, run_evolution(train, cfg));
        const auto& best = archive.population[archive.best];
        job.record = RunRecord{job.fold, job.run, best.fitness.fscore,
                               evaluate(best.individual, archive.default_rule, test).fscore, best.fitness.size};
        write_text_file(archive_dir / ("fold" + std::to_string(job.fold) + "_run" + std::to_string(job.run) + ".json"),
                        serialize_archive(archive));
    };

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            try {
                execute(jobs[k]);
            } catch (...) {
                jobs[k].error = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(spec.jobs, jobs.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(worker);
        worker();
    }

    std::vector<RunRecord> rows;
    for (const auto& job : jobs) {
        if (job.error) std::rethrow_exception(job.error);
        rows.push_back(job.record);
    }
    auto table = summarize(std::move(rows), spec.folds);

    std::ostringstream folds_text;
    write_fold_split(folds_text, split);
    write_text_file(spec.out / "folds.csv", folds_text.str());
    write_text_file(spec.out / "config.txt", spec.resolved_config(true));
    write_text_file(spec.out / "statistics.csv", table.to_csv());
    return table;
}

}  // namespace mlrules
