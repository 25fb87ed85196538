#pragma once

#include "mlrules/rule_model.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace mlrules {

/// A trained model together with its fallback and the arities it was built for.
struct Model {
    std::size_t num_features = 0;
    std::size_t num_labels = 0;
    Individual individual;
    DefaultRule default_rule;
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;

    bool operator==(const Model&) const = default;
};

// JSON encoding. Infinite bounds are the strings "-inf" / "+inf"; finite bounds are numbers.
nlohmann::json bound_to_json(double v);
double bound_from_json(const nlohmann::json& j);

nlohmann::json rule_to_json(const Rule& rule);
Rule rule_from_json(const nlohmann::json& j, std::size_t num_features, std::size_t num_labels);

nlohmann::json model_to_json(const Model& model);

/// Validates arities, interval bounds and rule consistency; throws validation_error.
Model model_from_json(const nlohmann::json& j);

std::string serialize_model(const Model& model);
Model parse_model(const std::string& text);

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

/// Pretty-printed document text with a trailing newline; byte-stable for equal inputs.
std::string dump_document(const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mlrules
