#include "mlrules/metrics.hpp"

#include "mlrules/errors.hpp"
#include "mlrules/rulegen.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mlrules {

ConfusionCounts confusion_counts(const BinaryMatrix& predicted, const BinaryMatrix& truth) {
    if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols())
        throw precondition_error("micro_fscore: prediction and truth shapes differ");
    ConfusionCounts counts;
    const auto& p = predicted.cells();
    const auto& t = truth.cells();
    for (std::size_t k = 0; k < p.size(); ++k) counts.add(p[k], t[k]);
    return counts;
}

double micro_fscore(const ConfusionCounts& counts) noexcept {
    const auto denominator = 2 * counts.tp + counts.fp + counts.fn;
    if (denominator == 0) return 0.0;
    return static_cast<double>(2 * counts.tp) / static_cast<double>(denominator);
}

double micro_fscore(const BinaryMatrix& predicted, const BinaryMatrix& truth) {
    return micro_fscore(confusion_counts(predicted, truth));
}

DefaultRule default_rule(const Dataset& train) {
    std::vector<std::size_t> all(train.num_instances());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return DefaultRule{majority_labels(train, all)};
}

BinaryMatrix predict_all(const Individual& individual, const DefaultRule& fallback, const Dataset& data) {
    BinaryMatrix out(data.num_instances(), data.num_labels());
    for (std::size_t i = 0; i < data.num_instances(); ++i)
        std::ranges::copy(predict(individual, fallback, data.row(i)), out.row(i).begin());
    return out;
}

FitnessTuple evaluate(const Individual& individual, const DefaultRule& fallback, const Dataset& data) {
    if (fallback.consequent.size() != data.num_labels()) throw precondition_error("evaluate: label arity mismatch");
    ConfusionCounts counts;
    for (std::size_t i = 0; i < data.num_instances(); ++i) {
        const auto& predicted = predict(individual, fallback, data.row(i));
        const auto truth = data.labels().row(i);
        for (std::size_t l = 0; l < truth.size(); ++l) counts.add(predicted[l], truth[l]);
    }
    return FitnessTuple{micro_fscore(counts), individual.size()};
}

std::vector<std::size_t> pareto_front(std::span<const FitnessTuple> population) {
    // Sweep by descending fscore: a member survives iff it has the smallest size within its
    // fscore level and that size beats every strictly better-scoring member.
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::sort(order, [&](std::size_t a, std::size_t b) {
        const auto& x = population[a];
        const auto& y = population[b];
        if (x.fscore != y.fscore) return x.fscore > y.fscore;
        return x.size != y.size ? x.size < y.size : a < b;
    });

    std::vector<std::size_t> front;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < order.size();) {
        const double level = population[order[k]].fscore;
        const std::size_t level_min = population[order[k]].size;
        for (; k < order.size() && population[order[k]].fscore == level; ++k)
            if (population[order[k]].size == level_min && level_min < best_size) front.push_back(order[k]);
        best_size = std::min(best_size, level_min);
    }
    std::ranges::sort(front);
    return front;
}

double interpretability_score(std::size_t size) {
    if (size == 0) throw precondition_error("interpretability_score: size must be at least 1");
    return 1.0 / static_cast<double>(size);
}

}  // namespace mlrules
