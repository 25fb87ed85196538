#include "mlrules/nsga2.hpp"

#include "mlrules/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mlrules {

bool dominates(const FitnessTuple& a, const FitnessTuple& b) noexcept {
    return a.fscore >= b.fscore && a.size <= b.size && (a.fscore > b.fscore || a.size < b.size);
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const FitnessTuple> population) {
    const std::size_t n = population.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(population[p], population[q]))
                dominated_by[p].push_back(q);
            else if (dominates(population[q], population[p]))
                ++domination_count[p];
        }
        if (domination_count[p] == 0) current.push_back(p);
    }

    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto p : current)
            for (auto q : dominated_by[p])
                if (--domination_count[q] == 0) next.push_back(q);
        std::ranges::sort(next);
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const FitnessTuple> front) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = front.size();
    if (n == 0) throw precondition_error("crowding_distance: empty front");
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::ranges::fill(distance, inf);
        return distance;
    }

    const auto accumulate = [&](auto objective) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::ranges::stable_sort(idx, [&](std::size_t a, std::size_t b) { return objective(a) < objective(b); });
        distance[idx.front()] = inf;
        distance[idx.back()] = inf;
        const double range = objective(idx.back()) - objective(idx.front());
        if (range <= 0.0) return;
        for (std::size_t k = 1; k + 1 < n; ++k)
            distance[idx[k]] += (objective(idx[k + 1]) - objective(idx[k - 1])) / range;
    };
    accumulate([&](std::size_t i) { return front[i].fscore; });
    accumulate([&](std::size_t i) { return static_cast<double>(front[i].size); });
    return distance;
}

std::vector<std::size_t> select_survivors(std::span<const FitnessTuple> population, std::size_t target) {
    if (population.size() < target)
        throw precondition_error("select_survivors: population of " + std::to_string(population.size()) +
                                 " is smaller than target " + std::to_string(target));
    std::vector<std::size_t> survivors;
    survivors.reserve(target);
    for (const auto& front : non_dominated_sort(population)) {
        if (survivors.size() == target) break;
        if (survivors.size() + front.size() <= target) {
            survivors.insert(survivors.end(), front.begin(), front.end());
            continue;
        }
        std::vector<FitnessTuple> members;
        members.reserve(front.size());
        for (auto i : front) members.push_back(population[i]);
        const auto crowding = crowding_distance(members);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        // front is ascending by index, so a stable sort breaks crowding ties by index
        std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return crowding[a] > crowding[b]; });
        for (std::size_t k = 0; survivors.size() < target; ++k) survivors.push_back(front[order[k]]);
    }
    std::ranges::sort(survivors);
    return survivors;
}

}  // namespace mlrules
