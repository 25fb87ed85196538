#include "mlrules/cfsbe.hpp"

#include "mlrules/errors.hpp"

#include <algorithm>
#include <numeric>

namespace mlrules {

ExpansionOrder::ExpansionOrder(std::vector<std::size_t> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (auto d : order_) {
        if (d >= order_.size() || seen[d]) throw precondition_error("expansion order is not a permutation");
        seen[d] = true;
    }
}

ExpansionOrder ExpansionOrder::identity(std::size_t num_features) {
    std::vector<std::size_t> order(num_features);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return ExpansionOrder(std::move(order));
}

ExpansionOrder ExpansionOrder::random(std::size_t num_features, Rng& rng) {
    std::vector<std::size_t> order(num_features);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    return ExpansionOrder(std::move(order));
}

namespace {

bool intervals_overlap(const FeatureTest& a, const FeatureTest& b) noexcept {
    return std::max(a.lower, b.lower) < std::min(a.upper, b.upper);
}

}  // namespace

Box enlarge_box(std::span<const Rule> rules, std::span<const double> seed, const ExpansionOrder& order,
                std::vector<ExpansionStep>* trace) {
    const std::size_t n = seed.size();
    if (order.size() != n) throw precondition_error("enlarge_box: expansion order length differs from seed length");
    for (const auto& r : rules) {
        if (r.antecedent.size() != n) throw precondition_error("enlarge_box: rule arity differs from seed length");
        if (rule_covers(r, seed)) throw precondition_error("enlarge_box: seed is covered by an existing rule");
    }
    if (!model_consistent(rules)) throw precondition_error("enlarge_box: existing rules are not consistent");

    // While a dimension is unprocessed its extent is the point seed[d], tracked separately
    // because a half-open interval cannot represent a single point.
    Box box(n);
    std::vector<bool> processed(n, false);

    const auto overlaps_on = [&](const Rule& r, std::size_t e) {
        const auto& t = r.antecedent[e];
        return processed[e] ? intervals_overlap(box[e], t) : t.passes(seed[e]);
    };

    if (trace) trace->clear();
    for (const auto d : order.dimensions()) {
        ExpansionStep step;
        step.dimension = d;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            const auto& r = rules[i];
            bool obstructs = true;
            for (std::size_t e = 0; e < n && obstructs; ++e)
                if (e != d) obstructs = overlaps_on(r, e);
            if (!obstructs) continue;
            step.obstructors.push_back(i);

            const auto& t = r.antecedent[d];
            if (t.upper <= seed[d]) {
                if (t.upper > step.lower) {
                    step.lower = t.upper;
                    step.lower_limiter = static_cast<std::ptrdiff_t>(i);
                }
            } else if (t.lower > seed[d]) {
                if (t.lower < step.upper) {
                    step.upper = t.lower;
                    step.upper_limiter = static_cast<std::ptrdiff_t>(i);
                }
            } else {
                // The rule would contain the current (seed-containing) box: it covers the seed
                // on d and overlaps it elsewhere, which the disjointness invariant rules out.
                throw invariant_violation("enlarge_box: obstructor straddles the seed");
            }
        }
        box[d] = FeatureTest{step.lower, step.upper};
        processed[d] = true;
        if (trace) trace->push_back(std::move(step));
    }
    return box;
}

}  // namespace mlrules
