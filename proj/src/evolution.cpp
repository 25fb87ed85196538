#include "mlrules/evolution.hpp"

#include "mlrules/errors.hpp"
#include "mlrules/metrics.hpp"

#include <algorithm>

#include <json.hpp>

namespace mlrules {

std::string to_string(Mutation m) {
    switch (m) {
        case Mutation::Add: return "add";
        case Mutation::Remove: return "remove";
        case Mutation::Substitute: return "substitute";
    }
    return "unknown";
}

Mutation mutation_for_draw(int draw) {
    if (draw < 1 || draw > 7) throw precondition_error("mutation draw must lie in [1, 7]");
    if (draw == 7) return Mutation::Add;
    if (draw >= 5) return Mutation::Remove;
    return Mutation::Substitute;
}

Mutation pick_mutation(Rng& rng) { return mutation_for_draw(std::uniform_int_distribution<int>(1, 7)(rng)); }

std::optional<Individual> mutate_add(const Individual& parent, const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng) {
    if (uncovered_instances(parent.rules, dataset).empty()) return std::nullopt;
    Individual child = parent;
    child.rules.push_back(create_rule(parent.rules, dataset, cfg, rng));
    return child;
}

std::optional<Individual> mutate_remove(const Individual& parent, Rng& rng) {
    if (parent.rules.size() <= 1) return std::nullopt;
    Individual child = parent;
    std::shuffle(child.rules.begin(), child.rules.end(), rng);
    child.rules.pop_back();
    return child;
}

Individual mutate_substitute(const Individual& parent, const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng) {
    if (parent.rules.empty()) throw precondition_error("mutate_substitute: individual has no rules");
    Individual child = parent;
    const auto victim = std::uniform_int_distribution<std::size_t>(0, child.rules.size() - 1)(rng);
    child.rules.erase(child.rules.begin() + static_cast<std::ptrdiff_t>(victim));
    if (uncovered_instances(child.rules, dataset).empty())
        throw invariant_violation("mutate_substitute: removed rule left no uncovered instance");
    child.rules.push_back(create_rule(child.rules, dataset, cfg, rng));
    return child;
}

void EvolutionConfig::validate() const {
    if (pop_size == 0) throw validation_error("pop-size must be at least 1");
    if (max_generations == 0) throw validation_error("generations must be at least 1");
    if (mutants_per_generation == 0) throw validation_error("mutants must be at least 1");
    if (max_failed_attempts == 0) throw validation_error("max-failed must be at least 1");
    if (t == 0) throw validation_error("t must be at least 1");
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::None: return "none";
        case StopReason::GenerationsExhausted: return "generations_exhausted";
        case StopReason::FailedAttempts: return "failed_attempts";
    }
    return "unknown";
}

std::string log_record(const GenerationLog& log) {
    std::vector<double> scores;
    std::vector<std::size_t> sizes;
    for (const auto& f : log.fitness) {
        scores.push_back(f.fscore);
        sizes.push_back(f.size);
    }
    std::ranges::sort(scores);
    std::ranges::sort(sizes);
    nlohmann::ordered_json j;
    j["generation"] = log.generation;
    if (!scores.empty()) {
        const auto mid = scores.size() / 2;
        const bool even = scores.size() % 2 == 0;
        j["best_fscore"] = scores.back();
        j["median_fscore"] = even ? (scores[mid - 1] + scores[mid]) / 2.0 : scores[mid];
        j["min_size"] = sizes.front();
        j["median_size"] = even ? (static_cast<double>(sizes[mid - 1]) + static_cast<double>(sizes[mid])) / 2.0
                                : static_cast<double>(sizes[mid]);
        j["max_size"] = sizes.back();
    }
    j["failed_attempts"] = log.failed_attempts;
    j["stop_reason"] = to_string(log.stop_reason);
    return j.dump();
}

std::size_t best_member(const std::vector<Member>& population) {
    if (population.empty()) throw precondition_error("best_member: empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        const auto& a = population[i].fitness;
        const auto& b = population[best].fitness;
        if (a.fscore > b.fscore || (a.fscore == b.fscore && a.size < b.size)) best = i;
    }
    return best;
}

EvolutionResult run_evolution(const Dataset& train, const EvolutionConfig& cfg, const EvolutionHooks& hooks) {
    cfg.validate();
    Rng rng(cfg.rng_seed);
    const RuleGenConfig rule_cfg{cfg.t};

    EvolutionResult result;
    result.default_rule = default_rule(train);

    const auto make_member = [&](Individual ind) {
        if (hooks.on_individual) hooks.on_individual(ind);
        auto fitness = evaluate(ind, result.default_rule, train);
        return Member{std::move(ind), fitness};
    };
    const auto fitness_of = [](const std::vector<Member>& pop) {
        std::vector<FitnessTuple> out;
        out.reserve(pop.size());
        for (const auto& m : pop) out.push_back(m.fitness);
        return out;
    };
    const auto emit = [&](GenerationLog log) {
        if (hooks.on_generation) hooks.on_generation(log);
        result.logs.push_back(std::move(log));
    };

    auto& population = result.population;
    population.reserve(cfg.pop_size + cfg.mutants_per_generation);
    for (std::size_t i = 0; i < cfg.pop_size; ++i) population.push_back(make_member(init_individual(train, rule_cfg, rng)));

    std::uniform_int_distribution<std::size_t> pick_parent(0, cfg.pop_size - 1);
    for (std::size_t generation = 0; generation < cfg.max_generations; ++generation) {
        std::vector<Member> mutants;
        std::size_t failed = 0;
        while (mutants.size() < cfg.mutants_per_generation) {
            const auto& parent = population[pick_parent(rng)].individual;
            std::optional<Individual> child;
            switch (pick_mutation(rng)) {
                case Mutation::Add: child = mutate_add(parent, train, rule_cfg, rng); break;
                case Mutation::Remove: child = mutate_remove(parent, rng); break;
                case Mutation::Substitute: child = mutate_substitute(parent, train, rule_cfg, rng); break;
            }
            if (child) {
                mutants.push_back(make_member(std::move(*child)));
                continue;
            }
            if (++failed >= cfg.max_failed_attempts) {
                result.stop_reason = StopReason::FailedAttempts;
                emit(GenerationLog{generation, fitness_of(population), failed, result.stop_reason});
                return result;
            }
        }

        for (auto& m : mutants) population.push_back(std::move(m));
        const auto survivors = select_survivors(fitness_of(population), cfg.pop_size);
        std::vector<Member> next;
        next.reserve(cfg.pop_size + cfg.mutants_per_generation);
        for (auto i : survivors) next.push_back(std::move(population[i]));
        population = std::move(next);

        const bool last = generation + 1 == cfg.max_generations;
        if (last) result.stop_reason = StopReason::GenerationsExhausted;
        emit(GenerationLog{generation, fitness_of(population), failed, result.stop_reason});
    }
    return result;
}

}  // namespace mlrules
