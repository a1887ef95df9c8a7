#pragma once

// Non-evolutionary ways of combining the gathered experts.

#include <cstddef>
#include <vector>

#include "rhea/domain.hpp"
#include "rhea/evolve.hpp"
#include "rhea/prescriptor.hpp"

namespace rhea {

// Mixture of experts: every context independently picks one expert's action.
[[nodiscard]] std::vector<OutcomePair> moe_front(const std::vector<RuleSetPrescriptor>& experts,
                                                 const DomainConfig& domain);

struct WeightVector {
  std::vector<double> weights;  // one per expert, in [0, 1], summing to 1
  double threshold = 0.5;       // in (0, 1]

  // Throws DomainError.
  void validate(std::size_t expert_count) const;
};

// A single global weighting applied in every context: an intervention is
// prescribed where the total weight of experts prescribing it reaches the
// threshold.
[[nodiscard]] InterventionSet ensemble_action(const std::vector<RuleSetPrescriptor>& experts,
                                              const WeightVector& w, ContextId c);

[[nodiscard]] OutcomePair evaluate_ensemble(const std::vector<RuleSetPrescriptor>& experts,
                                            const WeightVector& w, const DomainConfig& domain);

// Pareto filter over every weight vector on the simplex grid with the given
// resolution (weights k_i / resolution, sum k_i = resolution).
[[nodiscard]] std::vector<OutcomePair> weighted_ensemble_front(
    const std::vector<RuleSetPrescriptor>& experts, const DomainConfig& domain,
    std::size_t grid_resolution = 20, double threshold = 0.5);

// Same search without expert knowledge: random initialization, no reinjection.
[[nodiscard]] EvolveResult evolution_alone(EvolveConfig config, const DomainConfig& domain);

}  // namespace rhea
