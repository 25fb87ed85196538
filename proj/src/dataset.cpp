#include "mlrules/dataset.hpp"

#include "mlrules/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

namespace mlrules {

Dataset::Dataset(std::size_t num_features, std::vector<double> features, BinaryMatrix labels,
                 std::vector<std::string> feature_names, std::vector<std::string> label_names)
    : num_features_(num_features),
      features_(std::move(features)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      label_names_(std::move(label_names)) {
    if (num_features_ == 0) throw validation_error("dataset needs at least one feature");
    if (labels_.rows() == 0) throw validation_error("dataset needs at least one instance");
    if (labels_.cols() == 0) throw validation_error("dataset needs at least one label");
    if (features_.size() != labels_.rows() * num_features_)
        throw validation_error("feature matrix size does not match instance and feature counts");
    for (auto v : features_)
        if (!std::isfinite(v)) throw validation_error("feature values must be finite");
    for (auto c : labels_.cells())
        if (c > 1) throw validation_error("label values must be 0 or 1");

    if (feature_names_.empty())
        for (std::size_t j = 0; j < num_features_; ++j) feature_names_.push_back("f" + std::to_string(j));
    if (label_names_.empty())
        for (std::size_t l = 0; l < labels_.cols(); ++l) label_names_.push_back("l" + std::to_string(l));
    if (feature_names_.size() != num_features_ || label_names_.size() != labels_.cols())
        throw validation_error("name count does not match column count");

    feature_values_.resize(num_features_);
    for (std::size_t j = 0; j < num_features_; ++j) {
        auto& values = feature_values_[j];
        values.reserve(num_instances());
        for (std::size_t i = 0; i < num_instances(); ++i) values.push_back(feature(i, j));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
    }
}

double Dataset::next_value_above(std::size_t j, double v) const {
    const auto& values = feature_values_[j];
    const auto it = std::upper_bound(values.begin(), values.end(), v);
    return it == values.end() ? std::numeric_limits<double>::infinity() : *it;
}

double Dataset::feature_range(std::size_t j) const {
    const auto& values = feature_values_[j];
    return values.back() - values.front();
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<double> features;
    features.reserve(indices.size() * num_features_);
    BinaryMatrix labels(indices.size(), num_labels());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto i = indices[r];
        if (i >= num_instances()) throw validation_error("subset index out of range");
        const auto src = row(i);
        features.insert(features.end(), src.begin(), src.end());
        std::ranges::copy(labels_.row(i), labels.row(r).begin());
    }
    return Dataset(num_features_, std::move(features), std::move(labels), feature_names_, label_names_);
}

Dataset parse_dataset(std::istream& in, std::size_t label_count) {
    if (label_count == 0) throw validation_error("label count must be positive");

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        for (auto cell : detail::split(line, ',')) header.emplace_back(detail::trim(cell));
        break;
    }
    if (header.empty()) throw parse_error(line_no, 0, "missing header row");
    const std::size_t columns = header.size();
    if (label_count >= columns)
        throw validation_error("label count " + std::to_string(label_count) + " leaves no feature columns (file has " +
                               std::to_string(columns) + " columns)");
    const std::size_t num_features = columns - label_count;

    std::vector<double> features;
    std::vector<std::uint8_t> label_cells;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != columns)
            throw parse_error(line_no, std::min(cells.size(), columns) + 1,
                              "expected " + std::to_string(columns) + " columns, found " + std::to_string(cells.size()));
        for (std::size_t c = 0; c < columns; ++c) {
            const auto value = detail::parse_finite(cells[c]);
            if (c < num_features) {
                if (!value) throw parse_error(line_no, c + 1, "non-numeric feature value '" + std::string(detail::trim(cells[c])) + "'");
                features.push_back(*value);
            } else {
                if (!value || (*value != 0.0 && *value != 1.0))
                    throw parse_error(line_no, c + 1, "label value '" + std::string(detail::trim(cells[c])) + "' is not 0 or 1");
                label_cells.push_back(static_cast<std::uint8_t>(*value));
            }
        }
    }
    const std::size_t rows = features.size() / num_features;
    if (rows == 0) throw parse_error(line_no, 0, "no instances after the header row");

    BinaryMatrix labels(rows, label_count);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t l = 0; l < label_count; ++l) labels(r, l) = label_cells[r * label_count + l];

    std::vector<std::string> feature_names(header.begin(), header.begin() + static_cast<std::ptrdiff_t>(num_features));
    std::vector<std::string> label_names(header.begin() + static_cast<std::ptrdiff_t>(num_features), header.end());
    return Dataset(num_features, std::move(features), std::move(labels), std::move(feature_names), std::move(label_names));
}

Dataset load_dataset(const std::filesystem::path& path, std::size_t label_count) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open dataset '" + path.string() + "'");
    try {
        return parse_dataset(in, label_count);
    } catch (const parse_error& e) {
        throw parse_error(e.line(), e.column(), path.string() + ": " + e.reason());
    }
}

std::size_t count_columns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open dataset '" + path.string() + "'");
    std::string line;
    while (std::getline(in, line))
        if (!detail::trim(line).empty()) return detail::split(line, ',').size();
    throw parse_error(1, 0, path.string() + ": missing header row");
}

std::vector<double> parse_feature_rows(std::istream& in, std::size_t num_features) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<double> features;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split(line, ',');
        if (cells.size() != num_features)
            throw parse_error(line_no, std::min(cells.size(), num_features) + 1,
                              "expected " + std::to_string(num_features) + " columns, found " + std::to_string(cells.size()));
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto value = detail::parse_finite(cells[c]);
            if (!value) throw parse_error(line_no, c + 1, "non-numeric feature value '" + std::string(detail::trim(cells[c])) + "'");
            features.push_back(*value);
        }
    }
    if (features.empty()) throw parse_error(line_no, 0, "no instances after the header row");
    return features;
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
    bool first = true;
    for (const auto& name : dataset.feature_names()) {
        out << (first ? "" : ",") << name;
        first = false;
    }
    for (const auto& name : dataset.label_names()) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < dataset.num_instances(); ++i) {
        const auto row = dataset.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << detail::format_shortest(row[j]);
        for (auto l : dataset.labels().row(i)) out << ',' << static_cast<int>(l);
        out << '\n';
    }
}

std::vector<std::size_t> FoldSplit::test_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldSplit::train_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] != fold) out.push_back(i);
    return out;
}

FoldSplit split_folds(std::size_t num_instances, std::size_t fold_count, Rng& rng) {
    if (fold_count == 0) throw validation_error("fold count must be positive");
    if (fold_count > num_instances)
        throw validation_error("fold count " + std::to_string(fold_count) + " exceeds instance count " +
                               std::to_string(num_instances));
    std::vector<std::size_t> order(num_instances);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    FoldSplit split{fold_count, std::vector<std::size_t>(num_instances)};
    for (std::size_t k = 0; k < num_instances; ++k) split.assignment[order[k]] = k % fold_count;
    return split;
}

void write_fold_split(std::ostream& out, const FoldSplit& split) {
    out << "instance_index,fold_index\n";
    for (std::size_t i = 0; i < split.assignment.size(); ++i) out << i << ',' << split.assignment[i] << '\n';
}

FoldSplit read_fold_split(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (detail::trim(line) != "instance_index,fold_index") throw parse_error(line_no, 1, "unexpected fold header");
            continue;
        }
        const auto cells = detail::split(line, ',');
        if (cells.size() != 2) throw parse_error(line_no, 1, "expected instance_index,fold_index");
        const auto inst = detail::parse_index(cells[0]);
        const auto fold = detail::parse_index(cells[1]);
        if (!inst) throw parse_error(line_no, 1, "bad instance index");
        if (!fold) throw parse_error(line_no, 2, "bad fold index");
        pairs.emplace_back(*inst, *fold);
    }
    FoldSplit split;
    split.assignment.assign(pairs.size(), std::numeric_limits<std::size_t>::max());
    for (auto [inst, fold] : pairs) {
        if (inst >= pairs.size() || split.assignment[inst] != std::numeric_limits<std::size_t>::max())
            throw validation_error("fold file must list every instance exactly once");
        split.assignment[inst] = fold;
        split.fold_count = std::max(split.fold_count, fold + 1);
    }
    std::vector<std::size_t> sizes(split.fold_count, 0);
    for (auto f : split.assignment) ++sizes[f];
    if (std::ranges::find(sizes, std::size_t{0}) != sizes.end()) throw validation_error("fold file has an empty fold");
    return split;
}

}  // namespace mlrules
