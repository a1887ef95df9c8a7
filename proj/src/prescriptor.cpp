#include "rhea/prescriptor.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace rhea {

InterventionSet RuleSetPrescriptor::operator()(ContextId c) const {
  for (const auto& rule : rules) {
    if (rule.contexts.contains(c.index)) return rule.action;
  }
  return {};
}

InterventionSet NeuralPrescriptor::operator()(ContextId c) const {
  // One-hot input: hidden h receives 1 per edge (c, h); ReLU keeps it as is.
  std::vector<double> hidden(hidden_count, 0.0);
  for (const auto& [ctx, h] : in_edges) {
    if (ctx == c.index && h < hidden_count) hidden[h] += 1.0;
  }
  for (auto& v : hidden) v = std::max(0.0, v);

  std::map<std::size_t, double> out;
  for (const auto& [h, a] : out_edges) {
    if (h < hidden_count) out[a] += hidden[h];
  }
  InterventionSet action;
  for (const auto& [a, activation] : out) {
    if (activation > 0.0) action.insert(a);
  }
  return action;
}

BehaviorTable::BehaviorTable(std::size_t m, std::size_t n) : n_(n), rows_(m) {}

void BehaviorTable::set_row(std::size_t c, const InterventionSet& action) {
  if (!action.within(n_)) {
    throw DomainError("behavior row for context " + std::to_string(c) +
                      " references an intervention >= n=" + std::to_string(n_));
  }
  rows_.at(c) = action;
}

OutcomePair evaluate_table(const BehaviorTable& t) {
  OutcomePair total;
  for (std::size_t c = 0; c < t.contexts(); ++c) {
    total.utility += utility_unchecked(ContextId(c), t.row(c));
    total.cost += action_cost(t.row(c));
  }
  return total;
}

namespace {

// Distinct non-empty row actions with the contexts that share each, ordered by
// first occurrence (that is, by smallest context).
std::vector<Rule> group_rows(const BehaviorTable& t) {
  std::vector<Rule> groups;
  std::unordered_map<InterventionSet, std::size_t> index;
  for (std::size_t c = 0; c < t.contexts(); ++c) {
    const auto& action = t.row(c);
    if (action.empty()) continue;
    auto [it, inserted] = index.try_emplace(action, groups.size());
    if (inserted) groups.push_back({ContextSet{}, action});
    groups[it->second].contexts.insert(c);
  }
  return groups;
}

}  // namespace

RuleSetPrescriptor distill_to_rules(const BehaviorTable& t) { return {group_rows(t)}; }

NeuralPrescriptor distill_to_nn(const BehaviorTable& t) {
  NeuralPrescriptor net;
  const auto groups = group_rows(t);
  net.hidden_count = groups.size();
  for (std::size_t h = 0; h < groups.size(); ++h) {
    for (std::size_t c : groups[h].contexts.indices()) net.in_edges.emplace(c, h);
    for (std::size_t a : groups[h].action.indices()) net.out_edges.emplace(h, a);
  }
  return net;
}

std::vector<RuleSetPrescriptor> gather_experts(const DomainConfig& cfg) {
  cfg.validate();
  RuleSetPrescriptor specialist_c1{{Rule{{0}, {0, 1}}}};
  RuleSetPrescriptor specialist_c2{{Rule{{1}, {2, 3, 4}}}};
  RuleSetPrescriptor generalist{{Rule{ContextSet::range(0, 7), {6, 7, 8, 9}}}};
  return {specialist_c1, specialist_c2, generalist};
}

const std::vector<std::string>& expert_labels() {
  static const std::vector<std::string> labels = {"pi1", "pi2", "pi3"};
  return labels;
}

std::vector<RuleSetPrescriptor> distilled_experts(const DomainConfig& cfg) {
  std::vector<RuleSetPrescriptor> out;
  for (const auto& expert : gather_experts(cfg)) {
    out.push_back(distill_to_rules(behavior_table(expert, cfg)));
  }
  return out;
}

void validate(const RuleSetPrescriptor& pi, const DomainConfig& cfg) {
  for (std::size_t i = 0; i < pi.rules.size(); ++i) {
    const auto& rule = pi.rules[i];
    if (rule.contexts.empty()) {
      throw DomainError("rule " + std::to_string(i) + " has an empty context set");
    }
    if (!rule.contexts.within(cfg.m)) {
      throw DomainError("rule " + std::to_string(i) + " references a context >= m");
    }
    check_action(rule.action, cfg);
  }
}

void to_json(nlohmann::json& j, const Rule& r) {
  j = nlohmann::json{{"contexts", r.contexts.indices()}, {"action", r.action.indices()}};
}

void from_json(const nlohmann::json& j, Rule& r) {
  r.contexts = ContextSet::from_indices(j.at("contexts").get<std::vector<std::size_t>>());
  r.action = InterventionSet::from_indices(j.at("action").get<std::vector<std::size_t>>());
}

void to_json(nlohmann::json& j, const RuleSetPrescriptor& pi) {
  j = nlohmann::json{{"rules", pi.rules}};
}

void from_json(const nlohmann::json& j, RuleSetPrescriptor& pi) {
  pi.rules = j.at("rules").get<std::vector<Rule>>();
}

}  // namespace rhea
