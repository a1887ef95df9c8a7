#include "rhea/domain.hpp"

#include <algorithm>
#include <set>

namespace rhea {

void DomainConfig::validate() const {
  if (m < 7 || m > kMaxContexts) {
    throw DomainError("context count m=" + std::to_string(m) + " outside [7, " +
                      std::to_string(kMaxContexts) + "]");
  }
  if (n < 10 || n > kMaxInterventions) {
    throw DomainError("intervention count n=" + std::to_string(n) + " outside [10, " +
                      std::to_string(kMaxInterventions) + "]");
  }
}

bool outcome_dominates(const OutcomePair& a, const OutcomePair& b) {
  return (a.utility > b.utility && a.cost <= b.cost) ||
         (a.utility >= b.utility && a.cost < b.cost);
}

std::vector<OutcomePair> outcome_pareto_filter(std::vector<OutcomePair> points) {
  // Ascending cost, descending utility within a cost: a point survives iff its
  // utility beats everything cheaper.
  std::sort(points.begin(), points.end(), [](const OutcomePair& x, const OutcomePair& y) {
    if (x.cost != y.cost) return x.cost < y.cost;
    return x.utility > y.utility;
  });
  std::vector<OutcomePair> front;
  for (const auto& p : points) {
    if (front.empty() || p.utility > front.back().utility) front.push_back(p);
  }
  return front;
}

std::vector<OutcomePair> minkowski_front(
    const std::vector<std::vector<OutcomePair>>& per_context_options) {
  std::vector<OutcomePair> acc{OutcomePair{}};
  for (const auto& options : per_context_options) {
    const auto local = outcome_pareto_filter(options);
    std::vector<OutcomePair> next;
    next.reserve(acc.size() * local.size());
    for (const auto& a : acc) {
      for (const auto& o : local) {
        next.push_back({a.utility + o.utility, a.cost + o.cost});
      }
    }
    acc = outcome_pareto_filter(std::move(next));
  }
  return acc;
}

void check_context(ContextId c, const DomainConfig& cfg) {
  if (c.index >= cfg.m) {
    throw DomainError("context index " + std::to_string(c.index) + " out of range for m=" +
                      std::to_string(cfg.m));
  }
}

void check_action(const InterventionSet& a, const DomainConfig& cfg) {
  if (!a.within(cfg.n)) {
    throw DomainError("action references an intervention outside [0, " + std::to_string(cfg.n) +
                      ")");
  }
}

const std::vector<NamedAction>& named_actions() {
  static const std::vector<NamedAction> table = {
      {0, {0, 1}, 1},
      {0, {0, 1, 2, 3, 4}, 2},
      {0, {0, 1, 2, 3, 4, 5}, 3},
      {1, {0, 1, 2, 3, 4, 5}, 4},
      {1, {0, 1, 2, 3, 5}, 5},
      {1, {2, 3, 4}, 1},
      {std::nullopt, {6, 7, 8, 9}, 1},
  };
  return table;
}

std::int64_t utility_unchecked(ContextId c, const InterventionSet& a) {
  for (const auto& entry : named_actions()) {
    if (entry.context && *entry.context != c.index) continue;
    if (entry.action == a) return entry.utility;
  }
  return 0;
}

std::int64_t utility(ContextId c, const InterventionSet& a, const DomainConfig& cfg) {
  check_context(c, cfg);
  check_action(a, cfg);
  return utility_unchecked(c, a);
}

std::vector<OutcomePair> optimal_front(const DomainConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<OutcomePair>> options(cfg.m);
  for (std::size_t c = 0; c < cfg.m; ++c) {
    options[c].push_back({0, 0});
    for (const auto& entry : named_actions()) {
      if (entry.context && *entry.context != c) continue;
      options[c].push_back({entry.utility, action_cost(entry.action)});
    }
  }
  return minkowski_front(options);
}

std::int64_t max_utility(const DomainConfig& cfg) { return optimal_front(cfg).back().utility; }

}  // namespace rhea
