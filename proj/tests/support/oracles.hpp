#pragma once

// Slow, direct reference implementations used to cross-check the library.
// Nothing here calls the code under test except for plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "rhea/domain.hpp"
#include "rhea/lineage.hpp"
#include "rhea/metrics.hpp"
#include "rhea/schedule.hpp"

namespace oracle {

// Synergy table written out case by case with 1-based labels.
inline int utility(int context, const std::set<int>& a) {
  using S = std::set<int>;
  if (context == 1 && a == S{1, 2}) return 1;
  if (context == 1 && a == S{1, 2, 3, 4, 5}) return 2;
  if (context == 1 && a == S{1, 2, 3, 4, 5, 6}) return 3;
  if (context == 2 && a == S{1, 2, 3, 4, 5, 6}) return 4;
  if (context == 2 && a == S{1, 2, 3, 4, 6}) return 5;
  if (context == 2 && a == S{3, 4, 5}) return 1;
  if (a == S{7, 8, 9, 10}) return 1;
  return 0;
}

inline std::set<int> labels(const rhea::InterventionSet& a) {
  std::set<int> out;
  for (std::size_t i : a.indices()) out.insert(static_cast<int>(i) + 1);
  return out;
}

using Pair = std::pair<std::int64_t, std::int64_t>;  // (utility, cost)

// O(k^2) maximize-first / minimize-second filter, ascending cost.
inline std::vector<Pair> naive_outcome_front(const std::set<Pair>& pts) {
  std::vector<Pair> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) {
      if (q != p && q.first >= p.first && q.second <= p.second) dominated = true;
    }
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Pair& x, const Pair& y) { return x.second < y.second; });
  return out;
}

// Every one of the 2^n actions in every context, summed over contexts.
inline std::vector<Pair> brute_force_front(std::size_t m, std::size_t n) {
  std::set<Pair> sums{{0, 0}};
  for (std::size_t c = 1; c <= m; ++c) {
    std::set<Pair> options;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::set<int> a;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (1u << k)) a.insert(static_cast<int>(k) + 1);
      }
      options.insert({utility(static_cast<int>(c), a), static_cast<std::int64_t>(a.size())});
    }
    std::set<Pair> next;
    for (const auto& s : sums) {
      for (const auto& o : options) next.insert({s.first + o.first, s.second + o.second});
    }
    // Keep the set small without losing any front point: drop exact
    // duplicates only (std::set) and anything strictly dominated.
    const auto f = naive_outcome_front(next);
    sums = std::set<Pair>(f.begin(), f.end());
  }
  return naive_outcome_front(sums);
}

// Unions of boxes [c, ref.c] x [a, ref.a] measured by coordinate-compressed
// cell counting.
inline double box_union_area(const std::vector<rhea::metrics::Point2>& pts,
                             const rhea::metrics::Point2& ref) {
  std::vector<double> xs{ref.c};
  std::vector<double> ys{ref.a};
  for (const auto& p : pts) {
    xs.push_back(p.c);
    ys.push_back(p.a);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const bool covered = std::any_of(pts.begin(), pts.end(), [&](const auto& p) {
        return p.c <= xs[i] && p.a <= ys[j];
      });
      if (covered) area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
    }
  }
  return area;
}

inline bool dominates_outcome(const rhea::OutcomePair& p, const rhea::OutcomePair& q) {
  return p.utility >= q.utility && p.cost <= q.cost && p != q;
}

// Ranks by repeated peeling of the nondominated layer.
inline std::vector<std::size_t> peel_ranks(const std::vector<rhea::OutcomePair>& pts) {
  std::vector<std::size_t> rank(pts.size(), SIZE_MAX);
  std::size_t assigned = 0;
  for (std::size_t r = 0; assigned < pts.size(); ++r) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (rank[i] != SIZE_MAX) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (rank[j] == SIZE_MAX && dominates_outcome(pts[j], pts[i])) dominated = true;
      }
      if (!dominated) layer.push_back(i);
    }
    for (std::size_t i : layer) rank[i] = r;
    assigned += layer.size();
  }
  return rank;
}

template <typename F>
double trapezoid(F&& f, double lo, double hi, double step) {
  const auto steps = static_cast<std::size_t>(std::llround((hi - lo) / step));
  double total = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i < steps; ++i) total += f(lo + step * static_cast<double>(i));
  return total * step;
}

// ---------------------------------------------------------------------------
// Schedule measures, transcribed directly.

namespace sched {

using rhea::schedule::kDays;
using rhea::schedule::kIps;

inline std::vector<double> daily(const rhea::schedule::Grid& g) {
  std::vector<double> d;
  for (std::size_t t = 0; t < kDays; ++t) {
    double s = 0;
    for (std::size_t k = 0; k < kIps; ++k) s += g[t][k];
    d.push_back(s);
  }
  return d;
}

inline double swing(const rhea::schedule::Grid& g) {
  const auto d = daily(g);
  double best = 0;
  for (double x : d) {
    for (double y : d) best = std::max(best, std::abs(x - y));
  }
  return best;
}

inline double separability(const rhea::schedule::Grid& g) {
  const auto d = daily(g);
  double best = 0;
  for (std::size_t t = 1; t < kDays; ++t) {
    double m1 = 0;
    double m2 = 0;
    for (std::size_t i = 0; i < t; ++i) m1 += d[i];
    for (std::size_t i = t; i < kDays; ++i) m2 += d[i];
    m1 /= static_cast<double>(t);
    m2 /= static_cast<double>(kDays - t);
    if (m1 + m2 == 0) continue;
    best = std::max(best, std::abs(m1 - m2) / ((m1 + m2) / 2));
  }
  return best;
}

inline int focus(const rhea::schedule::Grid& g) {
  int unused = 0;
  for (std::size_t k = 0; k < kIps; ++k) {
    double mean = 0;
    for (std::size_t t = 0; t < kDays; ++t) mean += g[t][k];
    if (mean / kDays == 0) ++unused;
  }
  return unused;
}

inline int agility(const rhea::schedule::Grid& g) {
  int best = 0;
  for (std::size_t k = 0; k < kIps; ++k) {
    int n = 0;
    for (std::size_t t = 1; t <= 89; ++t) n += g[t][k] != g[t - 1][k];
    best = std::max(best, n);
  }
  return best;
}

inline double periodicity(const rhea::schedule::Grid& g) {
  double best = -1e300;
  for (std::size_t k = 0; k < kIps; ++k) {
    int d1 = 0;
    int d7 = 0;
    for (std::size_t t = 1; t <= 82; ++t) d1 += g[t][k] != g[t - 1][k];
    for (std::size_t t = 7; t <= 89; ++t) d7 += g[t][k] != g[t - 7][k];
    const double ratio = d1 == 0 ? 0.0 : static_cast<double>(d1 - d7) / d1;
    best = std::max(best, ratio);
  }
  return std::max(0.0, best);
}

inline std::vector<double> means(const rhea::schedule::Grid& g) {
  std::vector<double> out;
  for (std::size_t k = 0; k < kIps; ++k) {
    double s = 0;
    for (std::size_t t = 0; t < kDays; ++t) s += g[t][k];
    out.push_back(s / kDays);
  }
  return out;
}

// Random schedule within the ceilings. Each IP holds a level for a random run
// length so that changes, plateaus and unused IPs all occur.
inline rhea::schedule::Grid random_grid(std::mt19937_64& rng,
                                        const rhea::schedule::IpMaxima& maxima = {}) {
  rhea::schedule::Grid g{};
  std::uniform_int_distribution<int> style(0, 3);
  for (std::size_t k = 0; k < kIps; ++k) {
    const int mode = style(rng);
    std::uniform_int_distribution<int> level(0, maxima.max_level[k]);
    std::uniform_int_distribution<int> run(1, 15);
    int current = mode == 0 ? 0 : level(rng);
    int left = run(rng);
    for (std::size_t t = 0; t < kDays; ++t) {
      if (mode == 3) {
        current = level(rng);
      } else if (mode != 0 && --left == 0) {
        current = level(rng);
        left = run(rng);
      }
      g[t][k] = current;
    }
  }
  return g;
}

}  // namespace sched

// ---------------------------------------------------------------------------
// Lineage

// Log with `initial` parentless records followed by `children` records whose
// parents are drawn uniformly from earlier records (possibly the same one
// twice).
inline rhea::LineageLog random_log(std::mt19937_64& rng, std::size_t initial, std::size_t children) {
  rhea::LineageLog log;
  for (std::size_t i = 0; i < initial; ++i) log.add({i, std::nullopt, {}, 0, std::nullopt});
  for (std::size_t i = initial; i < initial + children; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    log.add({i, rhea::ParentPair{pick(rng), pick(rng)}, {}, 1, std::nullopt});
  }
  return log;
}

// APercent by direct memoized recursion over parent pointers.
inline double a_percent(std::uint64_t ancestor, std::uint64_t id, const rhea::LineageLog& log,
                        std::map<std::uint64_t, double>& memo) {
  if (auto it = memo.find(id); it != memo.end()) return it->second;
  const auto& r = log.at(id);
  double v = 0.0;
  if (!r.parents) {
    v = id == ancestor ? 1.0 : 0.0;
  } else {
    v = 0.5 * (a_percent(ancestor, r.parents->first, log, memo) +
               a_percent(ancestor, r.parents->second, log, memo));
  }
  memo[id] = v;
  return v;
}

}  // namespace oracle
