#pragma once

// Synthetic policy domain: m contexts, n interventions, a closed-form utility
// predictor with context-dependent synergies, and a cost equal to the number
// of prescribed interventions.

#include <bitset>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "rhea/error.hpp"

namespace rhea {

inline constexpr std::size_t kMaxContexts = 64;
inline constexpr std::size_t kMaxInterventions = 256;

struct DomainConfig {
  std::size_t m = 7;   // contexts
  std::size_t n = 10;  // available interventions

  // Throws DomainError unless 7 <= m <= kMaxContexts and 10 <= n <= kMaxInterventions.
  void validate() const;

  friend bool operator==(const DomainConfig&, const DomainConfig&) = default;
};

struct ContextId {
  std::size_t index = 0;

  constexpr ContextId() = default;
  constexpr explicit ContextId(std::size_t i) : index(i) {}

  friend constexpr auto operator<=>(const ContextId&, const ContextId&) = default;
};

// Fixed-capacity set of small indices. Set semantics, order-free.
template <std::size_t Capacity, typename Tag>
class IndexSet {
 public:
  using Bits = std::bitset<Capacity>;
  static constexpr std::size_t capacity = Capacity;

  IndexSet() = default;
  explicit IndexSet(const Bits& bits) : bits_(bits) {}
  IndexSet(std::initializer_list<std::size_t> indices) {
    for (std::size_t i : indices) insert(i);
  }

  static IndexSet from_indices(const std::vector<std::size_t>& indices) {
    IndexSet s;
    for (std::size_t i : indices) s.insert(i);
    return s;
  }

  // Every index in [first, last).
  static IndexSet range(std::size_t first, std::size_t last) {
    IndexSet s;
    for (std::size_t i = first; i < last; ++i) s.insert(i);
    return s;
  }

  void insert(std::size_t i) { bits_.set(checked(i)); }
  void erase(std::size_t i) { bits_.reset(checked(i)); }
  void toggle(std::size_t i) { bits_.flip(checked(i)); }
  [[nodiscard]] bool contains(std::size_t i) const { return i < Capacity && bits_.test(i); }

  [[nodiscard]] std::size_t size() const { return bits_.count(); }
  [[nodiscard]] bool empty() const { return bits_.none(); }

  // True when every member is < limit.
  [[nodiscard]] bool within(std::size_t limit) const {
    if (limit >= Capacity) return true;
    return (bits_ >> limit).none();
  }

  [[nodiscard]] std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::size_t i = 0; i < Capacity; ++i) {
      if (bits_.test(i)) out.push_back(i);
    }
    return out;
  }

  [[nodiscard]] const Bits& bits() const { return bits_; }

  IndexSet operator|(const IndexSet& o) const { return IndexSet(bits_ | o.bits_); }
  IndexSet operator&(const IndexSet& o) const { return IndexSet(bits_ & o.bits_); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  static std::size_t checked(std::size_t i) {
    if (i >= Capacity) {
      throw DomainError("index " + std::to_string(i) + " exceeds set capacity " +
                        std::to_string(Capacity));
    }
    return i;
  }

  Bits bits_;
};

struct InterventionTag {};
struct ContextTag {};

// Intervention a_k is stored as index k-1.
using InterventionSet = IndexSet<kMaxInterventions, InterventionTag>;
using ContextSet = IndexSet<kMaxContexts, ContextTag>;

struct OutcomePair {
  std::int64_t utility = 0;
  std::int64_t cost = 0;

  friend auto operator<=>(const OutcomePair&, const OutcomePair&) = default;
};

// Maximize utility, minimize cost.
[[nodiscard]] bool outcome_dominates(const OutcomePair& a, const OutcomePair& b);

// Mutually nondominated subset with duplicates collapsed, sorted by ascending cost.
[[nodiscard]] std::vector<OutcomePair> outcome_pareto_filter(std::vector<OutcomePair> points);

// Pareto filter of the Minkowski sum of per-context option sets.
[[nodiscard]] std::vector<OutcomePair> minkowski_front(
    const std::vector<std::vector<OutcomePair>>& per_context_options);

// Throws DomainError for an out-of-range context or intervention.
void check_context(ContextId c, const DomainConfig& cfg);
void check_action(const InterventionSet& a, const DomainConfig& cfg);

// Piecewise synergy table. Validates inputs.
[[nodiscard]] std::int64_t utility(ContextId c, const InterventionSet& a, const DomainConfig& cfg);

// Same table without range checks; callers guarantee validity.
[[nodiscard]] std::int64_t utility_unchecked(ContextId c, const InterventionSet& a);

[[nodiscard]] inline std::int64_t action_cost(const InterventionSet& a) {
  return static_cast<std::int64_t>(a.size());
}

// One non-zero-utility entry of the synergy table. `context` empty means the
// entry applies in every context.
struct NamedAction {
  std::optional<std::size_t> context;
  InterventionSet action;
  std::int64_t utility;
};

[[nodiscard]] const std::vector<NamedAction>& named_actions();

// Sums per-context utility and cost of an arbitrary policy over all contexts.
template <typename Prescriptor>
  requires std::invocable<const Prescriptor&, ContextId>
[[nodiscard]] OutcomePair evaluate(const Prescriptor& pi, const DomainConfig& cfg) {
  OutcomePair total;
  for (std::size_t c = 0; c < cfg.m; ++c) {
    const InterventionSet a = pi(ContextId(c));
    total.utility += utility(ContextId(c), a, cfg);
    total.cost += action_cost(a);
  }
  return total;
}

// Exact Pareto-optimal (utility, cost) totals over all 2^(mn) prescriptors.
//
// Per context the only candidates that can be optimal are the empty action and
// the named synergy sets valid there: any other action has zero utility and
// strictly positive cost, so it is dominated by the empty action, and adding
// anything to a named set drops its utility to zero. Since totals are sums,
// the global front is the Pareto filter of the Minkowski sum of the per-context
// fronts.
[[nodiscard]] std::vector<OutcomePair> optimal_front(const DomainConfig& cfg);

// Largest utility reachable by any prescriptor.
[[nodiscard]] std::int64_t max_utility(const DomainConfig& cfg);

}  // namespace rhea

template <std::size_t C, typename T>
struct std::hash<rhea::IndexSet<C, T>> {
  std::size_t operator()(const rhea::IndexSet<C, T>& s) const noexcept {
    return std::hash<std::bitset<C>>{}(s.bits());
  }
};
