#pragma once

#include "mlrules/binary_matrix.hpp"
#include "mlrules/dataset.hpp"
#include "mlrules/nsga2.hpp"
#include "mlrules/rule_model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mlrules {

/// Confusion counts pooled over every (instance, label) cell.
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    void add(std::uint8_t predicted, std::uint8_t truth) noexcept {
        if (predicted) (truth ? tp : fp)++;
        else (truth ? fn : tn)++;
    }
    bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts confusion_counts(const BinaryMatrix& predicted, const BinaryMatrix& truth);

/// 2tp / (2tp + fp + fn); 0 when nothing is positive in either matrix.
double micro_fscore(const ConfusionCounts& counts) noexcept;
double micro_fscore(const BinaryMatrix& predicted, const BinaryMatrix& truth);

/// Per-label majority of the training labels, ties to 1.
DefaultRule default_rule(const Dataset& train);

BinaryMatrix predict_all(const Individual& individual, const DefaultRule& fallback, const Dataset& data);

/// (micro F-Score of the predictions on @p data, rule count).
FitnessTuple evaluate(const Individual& individual, const DefaultRule& fallback, const Dataset& data);

/// Indices of members no other member dominates, ascending.
std::vector<std::size_t> pareto_front(std::span<const FitnessTuple> population);

/// 1 / size.
double interpretability_score(std::size_t size);

}  // namespace mlrules
