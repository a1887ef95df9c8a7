#pragma once

// Elitist multi-objective evolution of rule-set prescriptors: binary
// tournament parent selection on (rank, crowding, lower cost), rule-level
// crossover, bit-toggle mutation, behavior-based duplicate removal, and
// Pareto-rank/crowding truncation.
// Every individual ever created is written to a LineageLog.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rhea/domain.hpp"
#include "rhea/lineage.hpp"
#include "rhea/prescriptor.hpp"

namespace rhea {

using Rng = std::mt19937_64;

enum class InitMode { distilled, random };

struct MutationRates {
  double action_toggle = 0.005;  // per (rule, intervention) bit
  double context_toggle = 0.05;  // per (rule, context) bit
  double rule_add = 0.1;
  double rule_delete = 0.1;
};

struct EvolveConfig {
  std::size_t population_size = 100;
  std::size_t generations = 2000;
  InitMode init_mode = InitMode::distilled;
  bool reinject_experts = true;
  // Offspring per generation with a reintroduced expert as one parent (the
  // mate still comes from a tournament). Without it a dominated expert rarely
  // wins a tournament and stops contributing.
  std::size_t expert_matings = 1;
  MutationRates mutation;
  // Probability that a crossover also emits one merge of a rule from each
  // parent.
  double rule_recombination = 0.5;
  std::uint64_t seed = 0;

  // Throws ConfigError. `experts` is the number of gathered experts.
  void validate(std::size_t experts) const;
};

struct Individual {
  IndividualId id = 0;
  RuleSetPrescriptor genome;
  std::optional<ParentPair> parents;
  OutcomePair outcome;
  std::size_t generation = 0;
  std::optional<std::size_t> expert;  // index into expert_labels()
};

struct EvolveResult {
  std::vector<Individual> population;
  std::vector<IndividualId> front_ids;  // every rank-0 survivor
  std::vector<OutcomePair> front;       // distinct rank-0 outcomes, ascending cost
  // Distinct rank-0 outcomes after initialization and after each generation.
  std::vector<std::vector<OutcomePair>> front_history;
  LineageLog log;
};

// Rank 0 is the nondominated set; rank k is nondominated once ranks < k are
// removed. Maximize utility, minimize cost.
[[nodiscard]] std::vector<std::size_t> non_dominated_sort(const std::vector<OutcomePair>& points);

// NSGA-II crowding distance of each point within its rank. Exact duplicates in
// objective space share one distance: the first occurrence gets it, later
// copies get 0.
[[nodiscard]] std::vector<double> crowding_distances(const std::vector<OutcomePair>& points,
                                                     const std::vector<std::size_t>& ranks);

// Rule-level crossover.
//
// Identical parents reproduce themselves. Otherwise one parent is picked as
// the lead; rules present in both parents are always inherited, every other
// rule independently with probability 1/2, lead rules first and in order,
// then the other parent's in order. With probability `rule_recombination`
// (and both parents non-empty) a merged rule is prepended: one rule taken
// uniformly from each parent, the contexts of either with probability 1/2 and
// the union of both actions.
[[nodiscard]] RuleSetPrescriptor crossover(const RuleSetPrescriptor& p1,
                                           const RuleSetPrescriptor& p2, Rng& rng,
                                           double rule_recombination = 0.5);

// Each (rule, intervention) bit toggles with rates.action_toggle; each
// (rule, context) bit with rates.context_toggle unless it would empty the
// rule's contexts; then with rates.rule_add a random rule is appended (one
// random context, a random action of 0..3 interventions) and with
// rates.rule_delete a uniformly chosen rule is removed.
[[nodiscard]] RuleSetPrescriptor mutate(const RuleSetPrescriptor& pi, const DomainConfig& cfg,
                                        const MutationRates& rates, Rng& rng);

// 0..3 rules, each with one random context and each intervention included
// with probability 0.2.
[[nodiscard]] RuleSetPrescriptor random_genome(const DomainConfig& cfg, Rng& rng);

// Deterministic for a given (config, domain). Throws ConfigError / DomainError
// before any work when either is invalid.
[[nodiscard]] EvolveResult evolve(const EvolveConfig& config, const DomainConfig& domain);

// Fraction of the optimal front's outcomes present in `front`.
[[nodiscard]] double recovered_fraction(const std::vector<OutcomePair>& front,
                                        const std::vector<OutcomePair>& optimal);

// Least-squares fit of child cost on the mean of its parents' costs over every
// recombination in a log.
struct InterpolationFit {
  std::size_t samples = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

[[nodiscard]] InterpolationFit child_cost_interpolation(const LineageLog& log);

[[nodiscard]] std::string to_string(InitMode mode);
[[nodiscard]] InitMode init_mode_from_string(const std::string& s);

}  // namespace rhea
