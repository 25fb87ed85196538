#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mlrules {

/// Objectives of one model: maximize fscore, minimize size (rule count).
struct FitnessTuple {
    double fscore = 0.0;
    std::size_t size = 1;

    bool operator==(const FitnessTuple&) const = default;
};

bool dominates(const FitnessTuple& a, const FitnessTuple& b) noexcept;

/// Fast non-dominated sort. Each front lists population indices in ascending order.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const FitnessTuple> population);

/// Crowding distance of each member of @p front (same order). Boundary members get +inf.
std::vector<double> crowding_distance(std::span<const FitnessTuple> front);

/// Indices of the @p target survivors, ascending. Whole fronts are admitted in rank order;
/// the front that does not fit is filtered by descending crowding distance, ties to the
/// lower index. Throws precondition_error when population is smaller than target.
std::vector<std::size_t> select_survivors(std::span<const FitnessTuple> population, std::size_t target);

}  // namespace mlrules
