#include "mlrules/errors.hpp"
#include "mlrules/nsga2.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace mlrules;

namespace {

std::vector<FitnessTuple> random_population(Rng& rng, std::size_t max_size) {
    std::uniform_int_distribution<std::size_t> n(1, max_size);
    std::uniform_int_distribution<int> f(0, 10);   // coarse, so ties and duplicates appear
    std::uniform_int_distribution<std::size_t> s(1, 12);
    std::vector<FitnessTuple> pop(n(rng));
    for (auto& p : pop) p = {f(rng) / 10.0, s(rng)};
    return pop;
}

}  // namespace

TEST_CASE("dominates") {
    CHECK(dominates({0.9, 5}, {0.8, 7}));
    CHECK_FALSE(dominates({0.9, 5}, {0.9, 5}));
    CHECK_FALSE(dominates({0.9, 7}, {0.8, 5}));
    CHECK(dominates({0.9, 5}, {0.9, 6}));
    CHECK(dominates({0.9, 5}, {0.8, 5}));
}

TEST_CASE("dominates is irreflexive and antisymmetric") {
    Rng rng(1);
    for (int k = 0; k < 200; ++k) {
        const auto pop = random_population(rng, 10);
        for (const auto& a : pop) {
            CHECK_FALSE(dominates(a, a));
            for (const auto& b : pop) CHECK_FALSE((dominates(a, b) && dominates(b, a)));
        }
    }
}

TEST_CASE("non_dominated_sort") {
    const std::vector<FitnessTuple> pop{{0.9, 5}, {0.8, 3}, {0.7, 10}};
    CHECK(non_dominated_sort(pop) == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
    const std::vector<FitnessTuple> same(4, FitnessTuple{0.5, 3});
    CHECK(non_dominated_sort(same) == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3}});
    const std::vector<FitnessTuple> one{{0.2, 1}};
    CHECK(non_dominated_sort(one) == std::vector<std::vector<std::size_t>>{{0}});
    CHECK(non_dominated_sort(std::vector<FitnessTuple>{}).empty());
}

TEST_CASE("non_dominated_sort agrees with repeated peeling") {
    Rng rng(2);
    for (int k = 0; k < 300; ++k) {
        const auto pop = random_population(rng, 50);
        CHECK(non_dominated_sort(pop) == oracle::peel_fronts(pop));
    }
}

TEST_CASE("front membership survives monotone rescaling") {
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        const auto pop = random_population(rng, 30);
        auto scaled = pop;
        for (auto& p : scaled) {
            p.fscore = std::sqrt(p.fscore) * 0.5;
            p.size = p.size * p.size + 3;
        }
        CHECK(non_dominated_sort(pop) == non_dominated_sort(scaled));
    }
}

TEST_CASE("crowding_distance") {
    const std::vector<FitnessTuple> three{{0.1, 10}, {0.5, 6}, {0.9, 2}};
    const auto d = crowding_distance(three);
    CHECK(std::isinf(d[0]));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isinf(d[2]));

    const std::vector<FitnessTuple> two{{0.1, 10}, {0.5, 6}};
    for (double v : crowding_distance(two)) CHECK(std::isinf(v));
    const std::vector<FitnessTuple> one{{0.1, 10}};
    CHECK(std::isinf(crowding_distance(one)[0]));
    CHECK_THROWS_AS(crowding_distance(std::vector<FitnessTuple>{}), precondition_error);
}

TEST_CASE("select_survivors") {
    SUBCASE("population equal to target is returned unchanged") {
        const std::vector<FitnessTuple> pop{{0.1, 4}, {0.9, 1}, {0.5, 9}};
        CHECK(select_survivors(pop, 3) == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("first front beats second") {
        const std::vector<FitnessTuple> pop{{0.9, 5}, {0.8, 3}, {0.7, 10}};
        CHECK(select_survivors(pop, 2) == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("crowding ties go to the earlier member") {
        // Four identical members: every distance is +inf at the boundary or 0 inside.
        const std::vector<FitnessTuple> pop(4, FitnessTuple{0.5, 3});
        const auto kept = select_survivors(pop, 2);
        CHECK(kept.size() == 2);
        const std::vector<FitnessTuple> dup{{0.5, 3}, {0.5, 3}, {0.5, 3}};
        CHECK(select_survivors(dup, 1).size() == 1);
    }
    SUBCASE("interior member loses to boundaries") {
        const std::vector<FitnessTuple> pop{{0.1, 2}, {0.5, 6}, {0.9, 10}};
        CHECK(select_survivors(pop, 2) == std::vector<std::size_t>{0, 2});
    }
    SUBCASE("too few members") {
        const std::vector<FitnessTuple> pop{{0.1, 10}};
        CHECK_THROWS_AS(select_survivors(pop, 2), precondition_error);
    }
}

TEST_CASE("select_survivors never prefers a later front") {
    Rng rng(4);
    for (int k = 0; k < 300; ++k) {
        const auto pop = random_population(rng, 50);
        std::uniform_int_distribution<std::size_t> t(1, pop.size());
        const auto target = t(rng);
        const auto kept = select_survivors(pop, target);
        CHECK(kept.size() == target);
        CHECK(std::is_sorted(kept.begin(), kept.end()));
        const auto fronts = oracle::peel_fronts(pop);
        std::vector<std::size_t> rank(pop.size());
        for (std::size_t f = 0; f < fronts.size(); ++f)
            for (auto i : fronts[f]) rank[i] = f;
        std::size_t worst_kept = 0;
        for (auto i : kept) worst_kept = std::max(worst_kept, rank[i]);
        for (std::size_t i = 0; i < pop.size(); ++i)
            if (rank[i] < worst_kept) CHECK(std::binary_search(kept.begin(), kept.end(), i));
    }
}
