#include "mlrules/rule_model.hpp"

#include "mlrules/errors.hpp"
#include "text_util.hpp"

#include <algorithm>

namespace mlrules {

bool test_passes(const FeatureTest& test, double value) noexcept { return test.passes(value); }

bool box_contains(const Box& box, std::span<const double> point) noexcept {
    if (box.size() != point.size()) return false;
    for (std::size_t d = 0; d < box.size(); ++d)
        if (!box[d].passes(point[d])) return false;
    return true;
}

bool rule_covers(const Rule& rule, std::span<const double> instance) noexcept {
    return box_contains(rule.antecedent, instance);
}

bool boxes_overlap(const Box& a, const Box& b) {
    if (a.size() != b.size())
        throw precondition_error("boxes_overlap: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()) + ")");
    for (std::size_t d = 0; d < a.size(); ++d)
        if (!(std::max(a[d].lower, b[d].lower) < std::min(a[d].upper, b[d].upper))) return false;
    return true;
}

bool rules_consistent(const Rule& a, const Rule& b) {
    if (a.consequent.size() != b.consequent.size()) throw precondition_error("rules_consistent: label arity mismatch");
    if (a.antecedent.size() != b.antecedent.size()) throw precondition_error("rules_consistent: feature arity mismatch");
    return a.consequent == b.consequent || !boxes_overlap(a.antecedent, b.antecedent);
}

bool model_consistent(std::span<const Rule> rules) {
    for (std::size_t i = 0; i < rules.size(); ++i)
        for (std::size_t j = i + 1; j < rules.size(); ++j)
            if (!rules_consistent(rules[i], rules[j])) return false;
    return true;
}

bool model_consistent(const Individual& individual) { return model_consistent(std::span<const Rule>(individual.rules)); }

std::size_t count_covering(std::span<const Rule> rules, std::span<const double> instance) noexcept {
    return static_cast<std::size_t>(std::ranges::count_if(rules, [&](const Rule& r) { return rule_covers(r, instance); }));
}

const LabelVector& predict(const Individual& individual, const DefaultRule& fallback, std::span<const double> instance) {
    const Rule* match = nullptr;
    for (const auto& rule : individual.rules) {
        if (!rule_covers(rule, instance)) continue;
        if (match && match->consequent != rule.consequent)
            throw invariant_violation("predict: two covering rules with different consequents");
        match = &rule;
    }
    return match ? match->consequent : fallback.consequent;
}

bool SimplifiedRule::covers(std::span<const double> instance) const noexcept {
    for (const auto& c : conditions) {
        const double v = instance[c.feature];
        if (c.lower && v < *c.lower) return false;
        if (c.upper && !(v < *c.upper)) return false;
    }
    return true;
}

SimplifiedRule simplify_rule(const Rule& rule) {
    SimplifiedRule out;
    out.consequent = rule.consequent;
    for (std::size_t d = 0; d < rule.antecedent.size(); ++d) {
        const auto& test = rule.antecedent[d];
        if (test.is_tautological()) continue;
        Condition c{d, std::nullopt, std::nullopt};
        if (test.lower != -kInf) c.lower = test.lower;
        if (test.upper != kInf) c.upper = test.upper;
        out.conditions.push_back(c);
    }
    return out;
}

std::string render_antecedent(const SimplifiedRule& rule, std::span<const std::string> feature_names) {
    if (rule.conditions.empty()) return "always";
    std::string out;
    for (const auto& c : rule.conditions) {
        if (!out.empty()) out += " AND ";
        const std::string name = c.feature < feature_names.size() ? feature_names[c.feature] : "x" + std::to_string(c.feature);
        if (c.lower) out += detail::format_shortest(*c.lower) + " <= ";
        out += name;
        if (c.upper) out += " < " + detail::format_shortest(*c.upper);
    }
    return out;
}

std::string render_rule(const SimplifiedRule& rule, std::span<const std::string> feature_names,
                        std::span<const std::string> label_names) {
    std::string labels;
    for (std::size_t l = 0; l < rule.consequent.size(); ++l) {
        if (!rule.consequent[l]) continue;
        if (!labels.empty()) labels += ", ";
        labels += l < label_names.size() ? label_names[l] : std::to_string(l);
    }
    return "IF " + render_antecedent(rule, feature_names) + " THEN {" + labels + "}";
}

}  // namespace mlrules
