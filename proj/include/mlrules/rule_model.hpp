#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mlrules {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Half-open interval test `lower <= v < upper` on one feature. Bounds may be infinite.
struct FeatureTest {
    double lower = -kInf;
    double upper = kInf;

    bool passes(double v) const noexcept { return lower <= v && v < upper; }
    bool is_valid() const noexcept { return lower < upper && lower != kInf && upper != -kInf; }
    bool is_tautological() const noexcept { return lower == -kInf && upper == kInf; }

    bool operator==(const FeatureTest&) const = default;
};

/// Axis-aligned hyperrectangle: one FeatureTest per feature.
using Box = std::vector<FeatureTest>;

/// Box of tautological tests over @p num_features dimensions.
inline Box full_box(std::size_t num_features) { return Box(num_features); }

using LabelVector = std::vector<std::uint8_t>;

struct Rule {
    Box antecedent;
    LabelVector consequent;

    bool operator==(const Rule&) const = default;
};

/// One classification model: a set of mutually consistent rules.
struct Individual {
    std::vector<Rule> rules;

    std::size_t size() const noexcept { return rules.size(); }
    bool operator==(const Individual&) const = default;
};

/// Fallback prediction for instances no rule covers. Not counted in model size.
struct DefaultRule {
    LabelVector consequent;

    bool operator==(const DefaultRule&) const = default;
};

bool test_passes(const FeatureTest& test, double value) noexcept;
bool box_contains(const Box& box, std::span<const double> point) noexcept;
bool rule_covers(const Rule& rule, std::span<const double> instance) noexcept;

/// True iff the interiors intersect on every dimension; touching boxes do not overlap.
/// Throws precondition_error when dimensions differ.
bool boxes_overlap(const Box& a, const Box& b);

/// Equal consequents, or non-overlapping antecedents.
bool rules_consistent(const Rule& a, const Rule& b);
bool model_consistent(const Individual& individual);
bool model_consistent(std::span<const Rule> rules);

/// Number of rules whose antecedent contains @p instance.
std::size_t count_covering(std::span<const Rule> rules, std::span<const double> instance) noexcept;

/// Consequent of the covering rule, or the default consequent when none covers.
/// Two covering rules with different consequents raise invariant_violation.
const LabelVector& predict(const Individual& individual, const DefaultRule& fallback, std::span<const double> instance);

/// One condition of a simplified rule; absent bounds are tautological.
struct Condition {
    std::size_t feature = 0;
    std::optional<double> lower;
    std::optional<double> upper;

    bool operator==(const Condition&) const = default;
};

/// Reporting form of a rule: tautological tests dropped, half-tautological ones one-sided.
struct SimplifiedRule {
    std::vector<Condition> conditions;
    LabelVector consequent;

    bool covers(std::span<const double> instance) const noexcept;
};

SimplifiedRule simplify_rule(const Rule& rule);

/// Renders e.g. `IF 0 <= x1 < 5 AND x3 < 2 THEN {a, c}`. Empty antecedents render as `always`.
/// Names default to `x<index>` for features and `<index>` for labels.
std::string render_antecedent(const SimplifiedRule& rule, std::span<const std::string> feature_names = {});
std::string render_rule(const SimplifiedRule& rule, std::span<const std::string> feature_names = {},
                        std::span<const std::string> label_names = {});

}  // namespace mlrules
