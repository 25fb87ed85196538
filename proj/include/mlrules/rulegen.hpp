#pragma once

#include "mlrules/cfsbe.hpp"
#include "mlrules/dataset.hpp"
#include "mlrules/random.hpp"
#include "mlrules/rule_model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mlrules {

struct RuleGenConfig {
    /// Number of instances a new rule tries to cover.
    std::size_t t = 1;
};

/// Indices of instances covered by none of @p rules, ascending.
std::vector<std::size_t> uncovered_instances(std::span<const Rule> rules, const Dataset& dataset);

/// Everything create_rule decided, for inspection and tests.
struct RuleCreation {
    Rule rule;
    std::size_t seed_index = 0;
    ExpansionOrder order = ExpansionOrder::identity(0);
    Box outer;                               // the conflict-free enlargement around the seed
    std::vector<std::size_t> covered;        // instances inside the new antecedent, ascending
};

/**
 * Creates a rule that is disjoint from every rule of @p existing.
 *
 * A seed is drawn among the uncovered instances and the conflict-free box around it is
 * computed for a random expansion order. Inside that box a second box starts at the seed's
 * snapped cell and absorbs the nearest uncovered instances (normalized Euclidean distance,
 * ties by index) while it covers at most cfg.t instances. A candidate whose absorption would
 * overshoot t is skipped. The consequent is the per-label majority of the covered instances
 * (a mean of exactly 0.5 maps to 1).
 *
 * Throws precondition_error when every instance is already covered.
 */
RuleCreation create_rule_detailed(std::span<const Rule> existing, const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng);

inline Rule create_rule(std::span<const Rule> existing, const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng) {
    return create_rule_detailed(existing, dataset, cfg, rng).rule;
}

/// Single-rule individual built against an empty rule set.
Individual init_individual(const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng);

/// Per-label majority (>= 0.5) over the given rows.
LabelVector majority_labels(const Dataset& dataset, std::span<const std::size_t> rows);

}  // namespace mlrules
