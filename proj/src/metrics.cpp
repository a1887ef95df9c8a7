#include "rhea/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace rhea::metrics {

bool dominates(const Point2& s1, const Point2& s2) {
  return (s1.c < s2.c && s1.a <= s2.a) || (s1.c <= s2.c && s1.a < s2.a);
}

bool Front::contains(const Point2& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

Front pareto_filter(std::vector<Point2> points) {
  std::sort(points.begin(), points.end());
  Front f;
  for (const auto& p : points) {
    if (f.points_.empty() || p.a < f.points_.back().a) {
      if (!f.points_.empty() && f.points_.back().c == p.c) continue;
      f.points_.push_back(p);
    }
  }
  return f;
}

double hypervolume(const Front& f, const Point2& ref) {
  for (const auto& p : f.points()) {
    if (!dominates(p, ref)) {
      throw DomainError("front point (" + std::to_string(p.c) + ", " + std::to_string(p.a) +
                        ") does not dominate the reference point");
    }
  }
  // Ascending c with strictly descending a: each point adds the strip between
  // its cost and the next point's cost.
  const auto& pts = f.points();
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double next_c = i + 1 < pts.size() ? pts[i + 1].c : ref.c;
    area += (next_c - pts[i].c) * (ref.a - pts[i].a);
  }
  return area;
}

double hvi(const Front& m, const Front& reference, const Point2& ref) {
  return hypervolume(m, ref) - hypervolume(reference, ref);
}

double domination_rate(const Front& m, const Front& reference) {
  return domination_rate(m, reference.points());
}

double domination_rate(const Front& m, const std::vector<Point2>& reference) {
  if (reference.empty()) throw DomainError("domination rate needs a non-empty reference front");
  std::size_t dominated = 0;
  for (const auto& so : reference) {
    const bool hit = std::any_of(m.points().begin(), m.points().end(),
                                 [&](const Point2& s) { return dominates(s, so); });
    if (hit) ++dominated;
  }
  return static_cast<double>(dominated) / static_cast<double>(reference.size());
}

double mcr(const Front& m, const Front& reference) {
  double best = 0.0;
  bool any = false;
  for (const auto& so : reference.points()) {
    for (const auto& s : m.points()) {
      if (!dominates(s, so)) continue;
      best = any ? std::max(best, so.a - s.a) : so.a - s.a;
      any = true;
    }
  }
  return any ? best : 0.0;
}

KdeModel kde_fit(std::vector<double> samples) {
  if (samples.size() < 2) throw DomainError("kernel density needs at least two samples");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw DomainError("kernel density samples have zero spread");
  }
  KdeModel model;
  model.samples = std::move(samples);
  model.bandwidth = sd * std::pow(n, -0.2);
  return model;
}

double kde_eval(const KdeModel& model, double c) {
  const double h = model.bandwidth;
  double total = 0.0;
  for (double x : model.samples) {
    const double z = (c - x) / h;
    total += std::exp(-0.5 * z * z);
  }
  return total / (static_cast<double>(model.samples.size()) * h *
                  std::sqrt(2.0 * std::numbers::pi));
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

double kde_mass(const KdeModel& model, double lo, double hi) {
  if (hi <= lo) return 0.0;
  double total = 0.0;
  for (double x : model.samples) {
    total += normal_cdf((hi - x) / model.bandwidth) - normal_cdf((lo - x) / model.bandwidth);
  }
  return total / static_cast<double>(model.samples.size());
}

namespace {

template <typename Mass>
std::map<std::string, double> nearest_owner_credit(const MethodFronts& fronts, double c_min,
                                                   double c_max, Mass&& mass) {
  if (!(c_min < c_max)) throw DomainError("cost range needs c_min < c_max");
  std::vector<Point2> all;
  for (const auto& [name, f] : fronts) all.insert(all.end(), f.points().begin(), f.points().end());
  if (all.empty()) throw DomainError("every method front is empty");
  const Front combined = pareto_filter(std::move(all));
  const auto& pts = combined.points();

  std::map<std::string, double> credit;
  for (const auto& [name, f] : fronts) credit[name] = 0.0;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double lo_edge = i == 0 ? -kInf : 0.5 * (pts[i - 1].c + pts[i].c);
    const double hi_edge = i + 1 == pts.size() ? kInf : 0.5 * (pts[i].c + pts[i + 1].c);
    const double lo = std::max(lo_edge, c_min);
    const double hi = std::min(hi_edge, c_max);
    if (hi <= lo) continue;
    std::vector<const std::string*> owners;
    for (const auto& [name, f] : fronts) {
      if (f.contains(pts[i])) owners.push_back(&name);
    }
    const double share = mass(lo, hi) / static_cast<double>(owners.size());
    for (const auto* name : owners) credit[*name] += share;
  }
  return credit;
}

}  // namespace

std::map<std::string, double> run_metric(const MethodFronts& fronts, double c_min, double c_max) {
  return nearest_owner_credit(fronts, c_min, c_max,
                              [&](double lo, double hi) { return (hi - lo) / (c_max - c_min); });
}

std::map<std::string, double> rem(const MethodFronts& fronts, const CostPreference& preference,
                                  double c_min, double c_max) {
  if (const auto* kde = std::get_if<KdeModel>(&preference)) {
    return nearest_owner_credit(fronts, c_min, c_max,
                                [&](double lo, double hi) { return kde_mass(*kde, lo, hi); });
  }
  return run_metric(fronts, c_min, c_max);
}

Point2 to_point(const OutcomePair& o, std::int64_t max_utility) {
  return {static_cast<double>(o.cost), static_cast<double>(max_utility - o.utility)};
}

Front to_front(const std::vector<OutcomePair>& outcomes, std::int64_t max_utility) {
  std::vector<Point2> pts;
  pts.reserve(outcomes.size());
  for (const auto& o : outcomes) pts.push_back(to_point(o, max_utility));
  return pareto_filter(std::move(pts));
}

Point2 reference_point(const DomainConfig& cfg) {
  return {static_cast<double>(cfg.m * cfg.n), static_cast<double>(max_utility(cfg))};
}

}  // namespace rhea::metrics
