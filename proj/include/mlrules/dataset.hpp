#pragma once

#include "mlrules/binary_matrix.hpp"
#include "mlrules/random.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mlrules {

/**
 * Multi-label dataset with continuous features and binary labels.
 *
 * Immutable after construction. Besides the raw matrices it keeps, per feature,
 * the sorted distinct values of that column; rule bounds are snapped to these.
 */
class Dataset {
public:
    /// @p features is row-major (num_instances x num_features). Throws validation_error on
    /// empty dimensions, non-finite features or shape mismatches.
    Dataset(std::size_t num_features, std::vector<double> features, BinaryMatrix labels,
            std::vector<std::string> feature_names = {}, std::vector<std::string> label_names = {});

    std::size_t num_instances() const noexcept { return labels_.rows(); }
    std::size_t num_features() const noexcept { return num_features_; }
    std::size_t num_labels() const noexcept { return labels_.cols(); }

    std::span<const double> row(std::size_t i) const { return {features_.data() + i * num_features_, num_features_}; }
    double feature(std::size_t i, std::size_t j) const { return features_[i * num_features_ + j]; }
    const std::vector<double>& features() const noexcept { return features_; }
    const BinaryMatrix& labels() const noexcept { return labels_; }

    /// Sorted distinct values of column @p j.
    const std::vector<double>& feature_values(std::size_t j) const { return feature_values_[j]; }

    /// Smallest value of column @p j strictly greater than @p v, or +inf.
    double next_value_above(std::size_t j, double v) const;

    /// max - min of column @p j.
    double feature_range(std::size_t j) const;

    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
    const std::vector<std::string>& label_names() const noexcept { return label_names_; }

    /// New dataset made of the given rows, in the given order. Feature values are recomputed.
    Dataset subset(std::span<const std::size_t> indices) const;

private:
    std::size_t num_features_;
    std::vector<double> features_;
    BinaryMatrix labels_;
    std::vector<std::vector<double>> feature_values_;
    std::vector<std::string> feature_names_;
    std::vector<std::string> label_names_;
};

/// Parses comma-separated text: one header row, then one instance per line. The trailing
/// @p label_count columns are labels and must hold 0 or 1.
Dataset parse_dataset(std::istream& in, std::size_t label_count);
Dataset load_dataset(const std::filesystem::path& path, std::size_t label_count);

/// Column count of the header row of a dataset file.
std::size_t count_columns(const std::filesystem::path& path);

/// Row-major feature matrix of a file without label columns (same text format).
std::vector<double> parse_feature_rows(std::istream& in, std::size_t num_features);

/// Writes the format read by parse_dataset. Numbers use the shortest round-trip representation.
void write_dataset(std::ostream& out, const Dataset& dataset);

/// Assignment of each instance to one of fold_count folds.
struct FoldSplit {
    std::size_t fold_count = 0;
    std::vector<std::size_t> assignment;

    std::vector<std::size_t> test_indices(std::size_t fold) const;
    std::vector<std::size_t> train_indices(std::size_t fold) const;
};

/// Random permutation of the instances dealt round-robin into folds.
FoldSplit split_folds(std::size_t num_instances, std::size_t fold_count, Rng& rng);

/// `instance_index,fold_index` lines under a header.
void write_fold_split(std::ostream& out, const FoldSplit& split);
FoldSplit read_fold_split(std::istream& in);

}  // namespace mlrules
