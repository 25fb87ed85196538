#pragma once

#include "mlrules/random.hpp"
#include "mlrules/rule_model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mlrules {

/// Permutation of feature indices fixing the order in which box dimensions are enlarged.
class ExpansionOrder {
public:
    /// Throws precondition_error unless @p order is a permutation of 0..n-1.
    explicit ExpansionOrder(std::vector<std::size_t> order);

    static ExpansionOrder identity(std::size_t num_features);
    static ExpansionOrder random(std::size_t num_features, Rng& rng);

    std::span<const std::size_t> dimensions() const noexcept { return order_; }
    std::size_t size() const noexcept { return order_.size(); }

private:
    std::vector<std::size_t> order_;
};

/// What happened to one dimension during enlargement.
struct ExpansionStep {
    std::size_t dimension = 0;
    double lower = -kInf;
    double upper = kInf;
    std::vector<std::size_t> obstructors;   // indices into the rule sequence
    std::ptrdiff_t lower_limiter = -1;      // rule that fixed `lower`, -1 if unbounded
    std::ptrdiff_t upper_limiter = -1;
};

/**
 * Constrained box enlargement.
 *
 * Grows a box around @p seed, one dimension at a time in @p order, until each dimension
 * touches the rules of @p rules that would otherwise be overlapped. Dimensions not yet
 * processed are the point `seed[d]`. A rule obstructs dimension d when it overlaps the
 * current box on every other dimension; the nearest obstructor below the seed fixes the
 * lower bound (its upper bound), the nearest above fixes the upper bound (its lower bound).
 *
 * The result contains the seed, overlaps no rule of @p rules, and cannot be widened on any
 * face without creating an overlap. Throws precondition_error when the seed is covered by a
 * rule, when @p rules is not consistent, or on arity mismatches.
 */
Box enlarge_box(std::span<const Rule> rules, std::span<const double> seed, const ExpansionOrder& order,
                std::vector<ExpansionStep>* trace = nullptr);

}  // namespace mlrules
