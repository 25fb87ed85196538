#pragma once

#include "mlrules/dataset.hpp"
#include "mlrules/nsga2.hpp"
#include "mlrules/random.hpp"
#include "mlrules/rule_model.hpp"
#include "mlrules/rulegen.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mlrules {

enum class Mutation { Add, Remove, Substitute };

std::string to_string(Mutation m);

/// Maps a draw in [1, 7] to an operator: 7 adds, 5-6 remove, 1-4 substitute.
Mutation mutation_for_draw(int draw);
Mutation pick_mutation(Rng& rng);

/// Clone of @p parent with one more rule, or nullopt when every instance is covered.
std::optional<Individual> mutate_add(const Individual& parent, const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng);

/// Clone with its rules shuffled and the last one dropped, or nullopt for a single-rule parent.
std::optional<Individual> mutate_remove(const Individual& parent, Rng& rng);

/// Clone with one random rule replaced by a rule created against the remaining ones. Never fails.
Individual mutate_substitute(const Individual& parent, const Dataset& dataset, const RuleGenConfig& cfg, Rng& rng);

struct EvolutionConfig {
    std::size_t pop_size = 80;
    std::size_t max_generations = 200;
    std::size_t mutants_per_generation = 40;
    std::size_t max_failed_attempts = 2000;
    std::size_t t = 128;
    std::uint64_t rng_seed = 0;

    /// Throws validation_error if any count is zero.
    void validate() const;
};

enum class StopReason { None, GenerationsExhausted, FailedAttempts };

std::string to_string(StopReason reason);

struct GenerationLog {
    std::size_t generation = 0;
    std::vector<FitnessTuple> fitness;
    std::size_t failed_attempts = 0;
    StopReason stop_reason = StopReason::None;

    bool operator==(const GenerationLog&) const = default;
};

/// One-line JSON summary: generation, best/median fscore, min/median/max size,
/// failed attempts, stop reason.
std::string log_record(const GenerationLog& log);

struct Member {
    Individual individual;
    FitnessTuple fitness;

    bool operator==(const Member&) const = default;
};

struct EvolutionResult {
    std::vector<Member> population;
    std::vector<GenerationLog> logs;
    DefaultRule default_rule;
    StopReason stop_reason = StopReason::None;
};

/// Observation points; all optional.
struct EvolutionHooks {
    std::function<void(const Individual&)> on_individual;       // every initial individual and mutant
    std::function<void(const GenerationLog&)> on_generation;
};

/**
 * Mutation-selection loop on a training partition.
 *
 * Starts from pop_size single-rule individuals. Each generation draws (parent, operator)
 * pairs from the pre-generation population until m mutants exist, counting failures; if the
 * count reaches max_failed_attempts first, the partial mutants are discarded and the run stops
 * with the last selected population. Otherwise parents and mutants are merged and NSGA-II keeps
 * pop_size of them. Fitness is the training micro F-Score (with the training default rule)
 * and the rule count.
 *
 * Single-threaded and fully determined by cfg.rng_seed.
 */
EvolutionResult run_evolution(const Dataset& train, const EvolutionConfig& cfg, const EvolutionHooks& hooks = {});

/// Index of the member with the highest fscore; ties go to fewer rules, then lower index.
std::size_t best_member(const std::vector<Member>& population);

}  // namespace mlrules
