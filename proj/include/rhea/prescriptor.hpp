#pragma once

// Policy representations (ordered rule sets, bias-free ReLU networks), the
// gathered expert policies, and the exact distillation of a black-box policy
// from its full behavior table.

#include <concepts>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rhea/domain.hpp"

namespace rhea {

struct Rule {
  ContextSet contexts;  // never empty
  InterventionSet action;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// [C_1 -> A_1, ..., C_r -> A_r]; a context gets the action of the first rule
// containing it, or the empty action when no rule does.
struct RuleSetPrescriptor {
  std::vector<Rule> rules;

  [[nodiscard]] InterventionSet operator()(ContextId c) const;

  friend bool operator==(const RuleSetPrescriptor&, const RuleSetPrescriptor&) = default;
};

[[nodiscard]] inline InterventionSet apply_rules(const RuleSetPrescriptor& pi, ContextId c) {
  return pi(c);
}

// One-hot context input, ReLU hidden layer, unit weights, no biases. An
// intervention is prescribed when its output activation is positive.
struct NeuralPrescriptor {
  std::size_t hidden_count = 0;
  std::set<std::pair<std::size_t, std::size_t>> in_edges;   // (context, hidden)
  std::set<std::pair<std::size_t, std::size_t>> out_edges;  // (hidden, intervention)

  [[nodiscard]] InterventionSet operator()(ContextId c) const;

  friend bool operator==(const NeuralPrescriptor&, const NeuralPrescriptor&) = default;
};

[[nodiscard]] inline InterventionSet apply_nn(const NeuralPrescriptor& pi, ContextId c) {
  return pi(c);
}

// m x n binary grid: row c holds the interventions prescribed in context c.
class BehaviorTable {
 public:
  BehaviorTable(std::size_t m, std::size_t n);

  [[nodiscard]] std::size_t contexts() const { return rows_.size(); }
  [[nodiscard]] std::size_t interventions() const { return n_; }

  [[nodiscard]] bool at(std::size_t c, std::size_t a) const { return rows_.at(c).contains(a); }
  [[nodiscard]] const InterventionSet& row(std::size_t c) const { return rows_.at(c); }
  [[nodiscard]] const std::vector<InterventionSet>& rows() const { return rows_; }

  // Throws DomainError when the row holds interventions >= n.
  void set_row(std::size_t c, const InterventionSet& action);

  friend bool operator==(const BehaviorTable&, const BehaviorTable&) = default;

 private:
  std::size_t n_;
  std::vector<InterventionSet> rows_;
};

template <typename Prescriptor>
  requires std::invocable<const Prescriptor&, ContextId>
[[nodiscard]] BehaviorTable behavior_table(const Prescriptor& pi, const DomainConfig& cfg) {
  BehaviorTable t(cfg.m, cfg.n);
  for (std::size_t c = 0; c < cfg.m; ++c) t.set_row(c, pi(ContextId(c)));
  return t;
}

[[nodiscard]] OutcomePair evaluate_table(const BehaviorTable& t);

// One rule per distinct non-empty row action, grouping the contexts sharing
// it; rules ordered by their smallest context. Context sets are disjoint.
[[nodiscard]] RuleSetPrescriptor distill_to_rules(const BehaviorTable& t);

// One hidden node per distinct non-empty row action, wired from every context
// sharing it to every intervention in it. Hidden nodes numbered in the same
// order as distill_to_rules emits rules.
[[nodiscard]] NeuralPrescriptor distill_to_nn(const BehaviorTable& t);

// The generalist and two specialists, in the order [pi1, pi2, pi3]:
//   pi1 = [{c1} -> {a1, a2}]
//   pi2 = [{c2} -> {a3, a4, a5}]
//   pi3 = [{c1..c7} -> {a7, a8, a9, a10}]
// Throws DomainError for a config below m=7, n=10.
[[nodiscard]] std::vector<RuleSetPrescriptor> gather_experts(const DomainConfig& cfg);

// Labels used for expert-origin accounting, aligned with gather_experts().
[[nodiscard]] const std::vector<std::string>& expert_labels();

// Gather followed by distillation through the behavior table, as used to seed
// evolution.
[[nodiscard]] std::vector<RuleSetPrescriptor> distilled_experts(const DomainConfig& cfg);

// Throws DomainError if a rule has an empty context set or out-of-range indices.
void validate(const RuleSetPrescriptor& pi, const DomainConfig& cfg);

// {"rules": [{"contexts": [0], "action": [0, 1]}, ...]}
void to_json(nlohmann::json& j, const Rule& r);
void from_json(const nlohmann::json& j, Rule& r);
void to_json(nlohmann::json& j, const RuleSetPrescriptor& pi);
void from_json(const nlohmann::json& j, RuleSetPrescriptor& pi);

}  // namespace rhea
