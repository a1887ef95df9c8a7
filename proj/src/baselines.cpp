#include "rhea/baselines.hpp"

#include <cmath>

namespace rhea {

std::vector<OutcomePair> moe_front(const std::vector<RuleSetPrescriptor>& experts,
                                   const DomainConfig& domain) {
  domain.validate();
  if (experts.empty()) throw DomainError("moe_front needs at least one expert");
  std::vector<std::vector<OutcomePair>> options(domain.m);
  for (std::size_t c = 0; c < domain.m; ++c) {
    for (const auto& e : experts) {
      const auto a = e(ContextId(c));
      options[c].push_back({utility(ContextId(c), a, domain), action_cost(a)});
    }
  }
  return minkowski_front(options);
}

void WeightVector::validate(std::size_t expert_count) const {
  if (weights.size() != expert_count) {
    throw DomainError("weight vector has " + std::to_string(weights.size()) +
                      " entries for " + std::to_string(expert_count) + " experts");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("ensemble weight outside [0, 1]");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("ensemble weights do not sum to 1");
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw DomainError("ensemble threshold outside (0, 1]");
  }
}

InterventionSet ensemble_action(const std::vector<RuleSetPrescriptor>& experts,
                                const WeightVector& w, ContextId c) {
  std::vector<InterventionSet> actions;
  actions.reserve(experts.size());
  InterventionSet any;
  for (const auto& e : experts) {
    actions.push_back(e(c));
    any = any | actions.back();
  }
  InterventionSet out;
  for (std::size_t a : any.indices()) {
    double vote = 0.0;
    for (std::size_t i = 0; i < experts.size(); ++i) {
      if (actions[i].contains(a)) vote += w.weights[i];
    }
    // Grid weights are sums of multiples of 1/resolution; absorb their rounding.
    if (vote >= w.threshold - 1e-12) out.insert(a);
  }
  return out;
}

OutcomePair evaluate_ensemble(const std::vector<RuleSetPrescriptor>& experts,
                              const WeightVector& w, const DomainConfig& domain) {
  w.validate(experts.size());
  return evaluate([&](ContextId c) { return ensemble_action(experts, w, c); }, domain);
}

namespace {

void enumerate_grid(std::size_t experts, std::size_t remaining, std::vector<std::size_t>& counts,
                    const auto& visit) {
  if (counts.size() + 1 == experts) {
    counts.push_back(remaining);
    visit(counts);
    counts.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= remaining; ++k) {
    counts.push_back(k);
    enumerate_grid(experts, remaining - k, counts, visit);
    counts.pop_back();
  }
}

}  // namespace

std::vector<OutcomePair> weighted_ensemble_front(const std::vector<RuleSetPrescriptor>& experts,
                                                 const DomainConfig& domain,
                                                 std::size_t grid_resolution, double threshold) {
  domain.validate();
  if (experts.empty()) throw DomainError("weighted ensemble needs at least one expert");
  if (grid_resolution == 0) throw DomainError("grid_resolution must be at least 1");
  std::vector<OutcomePair> points;
  std::vector<std::size_t> counts;
  enumerate_grid(experts.size(), grid_resolution, counts, [&](const std::vector<std::size_t>& k) {
    WeightVector w;
    w.threshold = threshold;
    for (std::size_t ki : k) {
      w.weights.push_back(static_cast<double>(ki) / static_cast<double>(grid_resolution));
    }
    points.push_back(evaluate_ensemble(experts, w, domain));
  });
  return outcome_pareto_filter(std::move(points));
}

EvolveResult evolution_alone(EvolveConfig config, const DomainConfig& domain) {
  config.init_mode = InitMode::random;
  config.reinject_experts = false;
  return evolve(config, domain);
}

}  // namespace rhea
