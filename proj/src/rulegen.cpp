#include "mlrules/rulegen.hpp"

#include "mlrules/errors.hpp"

#include <algorithm>
#include <numeric>

namespace mlrules {

std::vector<std::size_t> uncovered_instances(std::span<const Rule> rules, const Dataset& dataset) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dataset.num_instances(); ++i) {
        const auto row = dataset.row(i);
        if (std::ranges::none_of(rules, [&](const Rule& r) { return rule_covers(r, row); })) out.push_back(i);
    }
    return out;
}

LabelVector majority_labels(const Dataset& dataset, std::span<const std::size_t> rows) {
    std::vector<std::size_t> ones(dataset.num_labels(), 0);
    for (auto i : rows) {
        const auto labels = dataset.labels().row(i);
        for (std::size_t l = 0; l < labels.size(); ++l) ones[l] += labels[l];
    }
    LabelVector out(dataset.num_labels());
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = (2 * ones[l] >= rows.size()) ? 1 : 0;
    return out;
}

namespace {

bool within(const Box& inner, const Box& outer) noexcept {
    for (std::size_t d = 0; d < inner.size(); ++d)
        if (inner[d].lower < outer[d].lower || inner[d].upper > outer[d].upper) return false;
    return true;
}

}  // namespace

RuleCreation create_rule_detailed(std::span<const Rule> existing, const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng) {
    if (cfg.t == 0) throw precondition_error("create_rule: t must be at least 1");
    const auto uncovered = uncovered_instances(existing, dataset);
    if (uncovered.empty()) throw precondition_error("create_rule: every instance is already covered");

    const std::size_t nf = dataset.num_features();
    RuleCreation out;
    out.seed_index = uncovered[std::uniform_int_distribution<std::size_t>(0, uncovered.size() - 1)(rng)];
    out.order = ExpansionOrder::random(nf, rng);
    const auto seed = dataset.row(out.seed_index);
    out.outer = enlarge_box(existing, seed, out.order);

    // Uncovered instances inside the outer box, nearest to the seed first.
    std::vector<double> scale(nf);
    for (std::size_t j = 0; j < nf; ++j) {
        const double range = dataset.feature_range(j);
        scale[j] = range > 0.0 ? 1.0 / range : 0.0;
    }
    struct Candidate {
        std::size_t index;
        double distance;
        bool inside;
    };
    std::vector<Candidate> candidates;
    for (auto i : uncovered) {
        const auto row = dataset.row(i);
        if (!box_contains(out.outer, row)) continue;
        double d2 = 0.0;
        for (std::size_t j = 0; j < nf; ++j) {
            const double diff = (row[j] - seed[j]) * scale[j];
            d2 += diff * diff;
        }
        candidates.push_back({i, d2, false});
    }
    std::ranges::sort(candidates, [](const Candidate& a, const Candidate& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
    });

    const auto snapped_upper = [&](std::size_t j, double v) {
        return std::min(dataset.next_value_above(j, v), out.outer[j].upper);
    };

    Box box(nf);
    for (std::size_t j = 0; j < nf; ++j) box[j] = FeatureTest{seed[j], snapped_upper(j, seed[j])};

    std::size_t covered = 0;
    for (auto& c : candidates)
        if (box_contains(box, dataset.row(c.index))) {
            c.inside = true;
            ++covered;
        }

    Box extended(nf);
    for (const auto& c : candidates) {
        if (covered >= cfg.t) break;
        if (c.inside) continue;
        const auto row = dataset.row(c.index);
        for (std::size_t j = 0; j < nf; ++j)
            extended[j] = FeatureTest{std::min(box[j].lower, row[j]), std::max(box[j].upper, snapped_upper(j, row[j]))};
        if (!within(extended, out.outer)) continue;

        std::size_t gained = 0;
        for (const auto& other : candidates)
            if (!other.inside && box_contains(extended, dataset.row(other.index))) ++gained;
        if (covered + gained > cfg.t) continue;

        box = extended;
        covered += gained;
        for (auto& other : candidates)
            if (!other.inside && box_contains(box, dataset.row(other.index))) other.inside = true;
    }

    for (const auto& c : candidates)
        if (c.inside) out.covered.push_back(c.index);
    std::ranges::sort(out.covered);

    out.rule.antecedent = std::move(box);
    out.rule.consequent = majority_labels(dataset, out.covered);
    for (const auto& r : existing)
        if (boxes_overlap(r.antecedent, out.rule.antecedent))
            throw invariant_violation("create_rule: new rule overlaps an existing rule");
    return out;
}

Individual init_individual(const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng) {
    return Individual{{create_rule(std::span<const Rule>{}, dataset, cfg, rng)}};
}

}  // namespace mlrules
