#include "rhea/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace rhea {

void EvolveConfig::validate(std::size_t experts) const {
  if (population_size == 0) throw ConfigError("population_size must be positive");
  if (init_mode == InitMode::distilled && population_size < experts) {
    throw ConfigError("population_size " + std::to_string(population_size) +
                      " is smaller than the " + std::to_string(experts) + " injected experts");
  }
  auto check_rate = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError(std::string(name) + " must be a probability in [0, 1]");
    }
  };
  check_rate(mutation.action_toggle, "mutation.action_toggle");
  check_rate(mutation.context_toggle, "mutation.context_toggle");
  check_rate(mutation.rule_add, "mutation.rule_add");
  check_rate(mutation.rule_delete, "mutation.rule_delete");
  check_rate(rule_recombination, "rule_recombination");
  if (reinject_experts && experts * expert_matings > population_size) {
    throw ConfigError("expert_matings leaves no offspring slots for tournament selection");
  }
}

std::string to_string(InitMode mode) {
  return mode == InitMode::distilled ? "distilled" : "random";
}

InitMode init_mode_from_string(const std::string& s) {
  if (s == "distilled") return InitMode::distilled;
  if (s == "random") return InitMode::random;
  throw ConfigError("unknown init_mode '" + s + "'");
}

std::vector<std::size_t> non_dominated_sort(const std::vector<OutcomePair>& points) {
  // Sweep in (utility desc, cost asc) order. A point can only be dominated by
  // points already swept, and within a front those have strictly decreasing
  // cost, so the front's most recent point is the only one that can dominate
  // the next candidate.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].utility != points[b].utility) return points[a].utility > points[b].utility;
    return points[a].cost < points[b].cost;
  });
  std::vector<std::size_t> rank(points.size(), 0);
  std::vector<OutcomePair> tail;  // most recent point of each front
  for (std::size_t idx : order) {
    const auto& p = points[idx];
    std::size_t k = 0;
    while (k < tail.size() && outcome_dominates(tail[k], p)) ++k;
    if (k == tail.size()) {
      tail.push_back(p);
    } else {
      tail[k] = p;
    }
    rank[idx] = k;
  }
  return rank;
}

std::vector<double> crowding_distances(const std::vector<OutcomePair>& points,
                                       const std::vector<std::size_t>& ranks) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(points.size(), 0.0);
  if (points.empty()) return dist;
  const std::size_t fronts = *std::max_element(ranks.begin(), ranks.end()) + 1;

  for (std::size_t r = 0; r < fronts; ++r) {
    // First occurrence of each distinct outcome in this front.
    std::vector<std::size_t> reps;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> by_utility;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (ranks[i] != r) continue;
      auto& bucket = by_utility[points[i].utility];
      bool dup = false;
      for (std::size_t j : bucket) dup = dup || points[j] == points[i];
      if (!dup) {
        bucket.push_back(i);
        reps.push_back(i);
      }
    }
    if (reps.size() <= 2) {
      for (std::size_t i : reps) dist[i] = kInf;
      continue;
    }
    auto accumulate = [&](auto key) {
      std::vector<std::size_t> sorted = reps;
      std::stable_sort(sorted.begin(), sorted.end(),
                       [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
      const double lo = key(sorted.front());
      const double hi = key(sorted.back());
      dist[sorted.front()] = kInf;
      dist[sorted.back()] = kInf;
      if (hi <= lo) return;
      for (std::size_t i = 1; i + 1 < sorted.size(); ++i) {
        dist[sorted[i]] += (key(sorted[i + 1]) - key(sorted[i - 1])) / (hi - lo);
      }
    };
    accumulate([&](std::size_t i) { return static_cast<double>(points[i].utility); });
    accumulate([&](std::size_t i) { return static_cast<double>(points[i].cost); });
  }
  return dist;
}

namespace {

bool coin(Rng& rng) { return (rng() >> 63) != 0; }

bool chance(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::bernoulli_distribution(p)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t size) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

// Calls f(i) for each i in [0, size) selected independently with probability p.
template <typename F>
void for_each_hit(std::size_t size, double p, Rng& rng, F&& f) {
  if (p <= 0.0 || size == 0) return;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < size; ++i) f(i);
    return;
  }
  std::geometric_distribution<std::size_t> gap(p);
  for (std::size_t i = gap(rng); i < size; i += 1 + gap(rng)) f(i);
}

Rule random_rule(const DomainConfig& cfg, Rng& rng) {
  Rule rule;
  rule.contexts.insert(uniform_index(rng, cfg.m));
  const std::size_t size = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  while (rule.action.size() < size) rule.action.insert(uniform_index(rng, cfg.n));
  return rule;
}

}  // namespace

RuleSetPrescriptor crossover(const RuleSetPrescriptor& p1, const RuleSetPrescriptor& p2,
                             Rng& rng, double rule_recombination) {
  if (p1 == p2) return p1;
  const bool first_leads = coin(rng);
  const auto& lead = first_leads ? p1.rules : p2.rules;
  const auto& other = first_leads ? p2.rules : p1.rules;

  std::vector<char> lead_shared(lead.size(), 0);
  std::vector<char> other_shared(other.size(), 0);
  for (std::size_t i = 0; i < lead.size(); ++i) {
    for (std::size_t j = 0; j < other.size(); ++j) {
      if (!other_shared[j] && lead[i] == other[j]) {
        lead_shared[i] = other_shared[j] = 1;
        break;
      }
    }
  }

  RuleSetPrescriptor child;
  for (std::size_t i = 0; i < lead.size(); ++i) {
    if (lead_shared[i] || coin(rng)) child.rules.push_back(lead[i]);
  }
  for (std::size_t j = 0; j < other.size(); ++j) {
    if (!other_shared[j] && coin(rng)) child.rules.push_back(other[j]);
  }

  if (!lead.empty() && !other.empty() && chance(rng, rule_recombination)) {
    const Rule& x = lead[uniform_index(rng, lead.size())];
    const Rule& y = other[uniform_index(rng, other.size())];
    Rule z{coin(rng) ? x.contexts : y.contexts, x.action | y.action};
    child.rules.insert(child.rules.begin(), std::move(z));
  }
  return child;
}

RuleSetPrescriptor mutate(const RuleSetPrescriptor& pi, const DomainConfig& cfg,
                          const MutationRates& rates, Rng& rng) {
  RuleSetPrescriptor out = pi;
  for (auto& rule : out.rules) {
    for_each_hit(cfg.n, rates.action_toggle, rng, [&](std::size_t a) { rule.action.toggle(a); });
    for_each_hit(cfg.m, rates.context_toggle, rng, [&](std::size_t c) {
      if (rule.contexts.contains(c) && rule.contexts.size() == 1) return;
      rule.contexts.toggle(c);
    });
  }
  if (chance(rng, rates.rule_add)) out.rules.push_back(random_rule(cfg, rng));
  if (!out.rules.empty() && chance(rng, rates.rule_delete)) {
    out.rules.erase(out.rules.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, out.rules.size())));
  }
  return out;
}

RuleSetPrescriptor random_genome(const DomainConfig& cfg, Rng& rng) {
  RuleSetPrescriptor pi;
  const std::size_t r = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  for (std::size_t i = 0; i < r; ++i) {
    Rule rule;
    rule.contexts.insert(uniform_index(rng, cfg.m));
    for_each_hit(cfg.n, 0.2, rng, [&](std::size_t a) { rule.action.insert(a); });
    pi.rules.push_back(std::move(rule));
  }
  return pi;
}

namespace {

struct Candidate {
  Individual ind;
  std::vector<InterventionSet> behavior;
  std::size_t hash = 0;
};

std::size_t behavior_hash(const std::vector<InterventionSet>& rows) {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& row : rows) {
    h ^= std::hash<InterventionSet>{}(row) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

class Run {
 public:
  Run(const EvolveConfig& config, const DomainConfig& domain)
      : config_(config), domain_(domain), rng_(config.seed) {}

  EvolveResult execute() {
    if (config_.init_mode == InitMode::distilled || config_.reinject_experts) {
      experts_ = distilled_experts(domain_);
    }
    initialize();
    rank_population();
    result_.front_history.push_back(current_front());

    for (std::size_t g = 1; g <= config_.generations; ++g) {
      // Reintroduced experts join the breeding pool before parent selection,
      // so they stay available as parents even when dominated.
      std::vector<std::size_t> expert_slots;
      if (config_.reinject_experts) {
        for (std::size_t e = 0; e < experts_.size(); ++e) {
          expert_slots.push_back(population_.size());
          population_.push_back(make(experts_[e], std::nullopt, g, e));
        }
        rank_population();
      }
      std::vector<Candidate> offspring;
      offspring.reserve(config_.population_size);
      for (std::size_t i = 0; i < config_.population_size; ++i) {
        const std::size_t forced = expert_slots.size() * config_.expert_matings;
        const Candidate& a = i < forced ? population_[expert_slots[i % expert_slots.size()]]
                                        : population_[tournament(population_)];
        const Candidate& b = population_[tournament(population_)];
        auto genome = crossover(a.ind.genome, b.ind.genome, rng_, config_.rule_recombination);
        genome = mutate(genome, domain_, config_.mutation, rng_);
        offspring.push_back(make(std::move(genome), ParentPair{a.ind.id, b.ind.id}, g, {}));
      }
      std::vector<Candidate> merged = std::move(population_);
      for (auto& c : offspring) merged.push_back(std::move(c));
      population_ = deduplicate(std::move(merged));
      truncate();
      result_.front_history.push_back(current_front());
    }

    for (std::size_t i = 0; i < population_.size(); ++i) {
      if (ranks_[i] == 0) result_.front_ids.push_back(population_[i].ind.id);
      result_.population.push_back(population_[i].ind);
    }
    result_.front = result_.front_history.back();
    return std::move(result_);
  }

 private:
  Candidate make(RuleSetPrescriptor genome, std::optional<ParentPair> parents,
                 std::size_t generation, std::optional<std::size_t> expert) {
    Candidate c;
    c.behavior.resize(domain_.m);
    c.ind.outcome = {};
    for (std::size_t ctx = 0; ctx < domain_.m; ++ctx) {
      c.behavior[ctx] = genome(ContextId(ctx));
      c.ind.outcome.utility += utility_unchecked(ContextId(ctx), c.behavior[ctx]);
      c.ind.outcome.cost += action_cost(c.behavior[ctx]);
    }
    c.hash = behavior_hash(c.behavior);
    c.ind.id = next_id_++;
    c.ind.genome = std::move(genome);
    c.ind.parents = parents;
    c.ind.generation = generation;
    c.ind.expert = expert;
    LineageRecord rec{c.ind.id, parents, c.ind.outcome, generation, std::nullopt};
    if (expert) rec.expert_label = expert_labels().at(*expert);
    result_.log.add(std::move(rec));
    return c;
  }

  void initialize() {
    std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
    auto is_new = [&](const std::vector<InterventionSet>& behavior, std::size_t hash) {
      for (std::size_t i : seen[hash]) {
        if (population_[i].behavior == behavior) return false;
      }
      return true;
    };
    const std::size_t seeded = config_.init_mode == InitMode::distilled ? experts_.size() : 0;
    for (std::size_t e = 0; e < seeded; ++e) {
      auto c = make(experts_[e], std::nullopt, 0, e);
      if (!is_new(c.behavior, c.hash)) continue;
      seen[c.hash].push_back(population_.size());
      population_.push_back(std::move(c));
    }
    // Draw genomes until the population holds enough distinct behaviors; ids
    // are only issued to accepted genomes.
    const std::size_t max_attempts = 1000 * config_.population_size;
    for (std::size_t attempt = 0;
         population_.size() < config_.population_size && attempt < max_attempts; ++attempt) {
      auto genome = random_genome(domain_, rng_);
      std::vector<InterventionSet> behavior(domain_.m);
      for (std::size_t ctx = 0; ctx < domain_.m; ++ctx) behavior[ctx] = genome(ContextId(ctx));
      const std::size_t h = behavior_hash(behavior);
      if (!is_new(behavior, h)) continue;
      seen[h].push_back(population_.size());
      population_.push_back(make(std::move(genome), std::nullopt, 0, {}));
    }
  }

  // First occurrence of each behavior wins, so older individuals survive.
  static std::vector<Candidate> deduplicate(std::vector<Candidate> merged) {
    std::vector<Candidate> out;
    out.reserve(merged.size());
    std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
    for (auto& c : merged) {
      auto& bucket = seen[c.hash];
      bool dup = false;
      for (std::size_t i : bucket) {
        if (out[i].behavior == c.behavior) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      bucket.push_back(out.size());
      out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<OutcomePair> outcomes() const {
    std::vector<OutcomePair> pts;
    pts.reserve(population_.size());
    for (const auto& c : population_) pts.push_back(c.ind.outcome);
    return pts;
  }

  void rank_population() {
    const auto pts = outcomes();
    ranks_ = non_dominated_sort(pts);
    crowd_ = crowding_distances(pts, ranks_);
  }

  void truncate() {
    const auto pts = outcomes();
    const auto ranks = non_dominated_sort(pts);
    const auto crowd = crowding_distances(pts, ranks);
    std::vector<std::size_t> order(population_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (ranks[a] != ranks[b]) return ranks[a] < ranks[b];
      return crowd[a] > crowd[b];
    });
    order.resize(std::min(order.size(), config_.population_size));
    std::sort(order.begin(), order.end());  // keep age order for deduplication
    std::vector<Candidate> kept;
    kept.reserve(order.size());
    for (std::size_t i : order) kept.push_back(std::move(population_[i]));
    population_ = std::move(kept);
    rank_population();
  }

  std::size_t tournament(const std::vector<Candidate>& pool) {
    const std::size_t a = uniform_index(rng_, pool.size());
    const std::size_t b = uniform_index(rng_, pool.size());
    if (ranks_[a] != ranks_[b]) return ranks_[a] < ranks_[b] ? a : b;
    if (crowd_[a] != crowd_[b]) return crowd_[a] > crowd_[b] ? a : b;
    return pool[b].ind.outcome.cost < pool[a].ind.outcome.cost ? b : a;
  }

  std::vector<OutcomePair> current_front() const {
    std::vector<OutcomePair> front;
    for (std::size_t i = 0; i < population_.size(); ++i) {
      if (ranks_[i] == 0) front.push_back(population_[i].ind.outcome);
    }
    return outcome_pareto_filter(std::move(front));
  }

  const EvolveConfig& config_;
  const DomainConfig& domain_;
  Rng rng_;
  std::vector<RuleSetPrescriptor> experts_;
  std::vector<Candidate> population_;
  std::vector<std::size_t> ranks_;
  std::vector<double> crowd_;
  IndividualId next_id_ = 0;
  EvolveResult result_;
};

}  // namespace

EvolveResult evolve(const EvolveConfig& config, const DomainConfig& domain) {
  domain.validate();
  config.validate(gather_experts(domain).size());
  return Run(config, domain).execute();
}

double recovered_fraction(const std::vector<OutcomePair>& front,
                          const std::vector<OutcomePair>& optimal) {
  if (optimal.empty()) return 1.0;
  std::size_t hits = 0;
  for (const auto& p : optimal) {
    if (std::find(front.begin(), front.end(), p) != front.end()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(optimal.size());
}

InterpolationFit child_cost_interpolation(const LineageLog& log) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : log.records()) {
    if (!r.parents) continue;
    const double c1 = static_cast<double>(log.at(r.parents->first).outcome.cost);
    const double c2 = static_cast<double>(log.at(r.parents->second).outcome.cost);
    xs.push_back(0.5 * (c1 + c2));
    ys.push_back(static_cast<double>(r.outcome.cost));
  }
  InterpolationFit fit;
  fit.samples = xs.size();
  if (xs.size() < 3) return fit;
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    sse += e * e;
  }
  fit.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
  return fit;
}

}  // namespace rhea
