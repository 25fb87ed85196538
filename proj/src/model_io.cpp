#include "mlrules/model_io.hpp"

#include "mlrules/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mlrules {

using nlohmann::json;

namespace {

LabelVector labels_from_json(const json& j, std::size_t num_labels, const char* what) {
    if (!j.is_array() || j.size() != num_labels)
        throw validation_error(std::string(what) + ": expected " + std::to_string(num_labels) + " label bits");
    LabelVector out;
    out.reserve(num_labels);
    for (const auto& bit : j) {
        if (!bit.is_number_integer() || (bit.get<int>() != 0 && bit.get<int>() != 1))
            throw validation_error(std::string(what) + ": label bits must be 0 or 1");
        out.push_back(static_cast<std::uint8_t>(bit.get<int>()));
    }
    return out;
}

json labels_to_json(const LabelVector& labels) {
    json out = json::array();
    for (auto bit : labels) out.push_back(static_cast<int>(bit));
    return out;
}

std::vector<std::string> names_from_json(const json& j, const char* key, std::size_t expected) {
    if (!j.contains(key)) return {};
    auto names = j.at(key).get<std::vector<std::string>>();
    if (names.size() != expected) throw validation_error(std::string("model: '") + key + "' has the wrong length");
    return names;
}

}  // namespace

json bound_to_json(double v) {
    if (v == -kInf) return "-inf";
    if (v == kInf) return "+inf";
    return v;
}

double bound_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "-inf") return -kInf;
        if (s == "+inf") return kInf;
        throw validation_error("model: unknown bound sentinel '" + s + "'");
    }
    if (!j.is_number()) throw validation_error("model: bound must be a number or \"-inf\"/\"+inf\"");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw validation_error("model: numeric bound must be finite");
    return v;
}

json rule_to_json(const Rule& rule) {
    json lower = json::array();
    json upper = json::array();
    for (const auto& t : rule.antecedent) {
        lower.push_back(bound_to_json(t.lower));
        upper.push_back(bound_to_json(t.upper));
    }
    return json{{"lower", std::move(lower)}, {"upper", std::move(upper)}, {"consequent", labels_to_json(rule.consequent)}};
}

Rule rule_from_json(const json& j, std::size_t num_features, std::size_t num_labels) {
    if (!j.is_object()) throw validation_error("model: rule must be an object");
    const auto& lower = j.at("lower");
    const auto& upper = j.at("upper");
    if (!lower.is_array() || !upper.is_array() || lower.size() != num_features || upper.size() != num_features)
        throw validation_error("model: rule bounds must list " + std::to_string(num_features) + " values");
    Rule rule;
    rule.antecedent.reserve(num_features);
    for (std::size_t d = 0; d < num_features; ++d) {
        FeatureTest t{bound_from_json(lower[d]), bound_from_json(upper[d])};
        if (!t.is_valid()) throw validation_error("model: empty interval on feature " + std::to_string(d));
        rule.antecedent.push_back(t);
    }
    rule.consequent = labels_from_json(j.at("consequent"), num_labels, "rule consequent");
    return rule;
}

json model_to_json(const Model& model) {
    json rules = json::array();
    for (const auto& r : model.individual.rules) rules.push_back(rule_to_json(r));
    json out{{"num_features", model.num_features},
             {"num_labels", model.num_labels},
             {"default_rule", labels_to_json(model.default_rule.consequent)},
             {"rules", std::move(rules)}};
    if (!model.feature_names.empty()) out["feature_names"] = model.feature_names;
    if (!model.label_names.empty()) out["label_names"] = model.label_names;
    return out;
}

Model model_from_json(const json& j) {
    try {
        Model model;
        model.num_features = j.at("num_features").get<std::size_t>();
        model.num_labels = j.at("num_labels").get<std::size_t>();
        if (model.num_features == 0 || model.num_labels == 0) throw validation_error("model: arities must be positive");
        model.default_rule.consequent = labels_from_json(j.at("default_rule"), model.num_labels, "default rule");
        const auto& rules = j.at("rules");
        if (!rules.is_array() || rules.empty()) throw validation_error("model: needs at least one rule");
        for (const auto& r : rules) model.individual.rules.push_back(rule_from_json(r, model.num_features, model.num_labels));
        if (!model_consistent(model.individual)) throw validation_error("model: rules are not mutually consistent");
        model.feature_names = names_from_json(j, "feature_names", model.num_features);
        model.label_names = names_from_json(j, "label_names", model.num_labels);
        return model;
    } catch (const json::exception& e) {
        throw validation_error(std::string("model: malformed document: ") + e.what());
    }
}

std::string serialize_model(const Model& model) { return dump_document(model_to_json(model)); }

Model parse_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("model: ") + e.what());
    }
    return model_from_json(j);
}

void save_model(const std::filesystem::path& path, const Model& model) { write_text_file(path, serialize_model(model)); }

Model load_model(const std::filesystem::path& path) { return model_from_json(read_json_file(path)); }

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw validation_error(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw io_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw io_error("write failed for '" + path.string() + "'");
}

}  // namespace mlrules
