#pragma once

// Two-objective Pareto-front comparison toolkit. Both objectives are
// minimized: `c` is a cost and `a` a case count (or, for utility-maximizing
// domains, a utility deficit).

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rhea/domain.hpp"

namespace rhea::metrics {

struct Point2 {
  double c = 0.0;
  double a = 0.0;

  friend auto operator<=>(const Point2&, const Point2&) = default;
};

// (c1 < c2 and a1 <= a2) or (c1 <= c2 and a1 < a2).
[[nodiscard]] bool dominates(const Point2& s1, const Point2& s2);

// Mutually nondominated point set, stored in ascending c (hence descending a).
class Front {
 public:
  Front() = default;

  [[nodiscard]] const std::vector<Point2>& points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] bool empty() const { return points_.empty(); }
  [[nodiscard]] bool contains(const Point2& p) const;

  friend Front pareto_filter(std::vector<Point2> points);
  friend bool operator==(const Front&, const Front&) = default;

 private:
  std::vector<Point2> points_;
};

// Maximal nondominated subset; duplicates collapse to one point.
[[nodiscard]] Front pareto_filter(std::vector<Point2> points);

// Area of the union of boxes [c_i, ref.c] x [a_i, ref.a], by a sorted sweep.
// Throws DomainError when a front point does not dominate `ref`.
[[nodiscard]] double hypervolume(const Front& f, const Point2& ref);

// HV(m) - HV(reference method).
[[nodiscard]] double hvi(const Front& m, const Front& reference, const Point2& ref);

// Share of reference points dominated by some point of m. Throws DomainError
// on an empty reference front.
[[nodiscard]] double domination_rate(const Front& m, const Front& reference);
// Same count over a raw reference point set, which may hold dominated points.
[[nodiscard]] double domination_rate(const Front& m, const std::vector<Point2>& reference);

// Largest a_o - a_* over pairs where s_* in m dominates s_o in the reference;
// 0 when no such pair exists.
[[nodiscard]] double mcr(const Front& m, const Front& reference);

// Gaussian kernel density with Scott's bandwidth: h = sd * n^(-1/5), sd with
// the n-1 denominator.
struct KdeModel {
  std::vector<double> samples;
  double bandwidth = 1.0;
};

// Throws DomainError for fewer than 2 samples or zero spread.
[[nodiscard]] KdeModel kde_fit(std::vector<double> samples);
[[nodiscard]] double kde_eval(const KdeModel& model, double c);
// Probability mass of the density on [lo, hi].
[[nodiscard]] double kde_mass(const KdeModel& model, double lo, double hi);

// Uniform density 1 / (c_max - c_min) on the RUN interval.
struct UniformPreference {};

using CostPreference = std::variant<UniformPreference, KdeModel>;

using MethodFronts = std::map<std::string, Front>;

// Share of costs in [c_min, c_max] whose nearest point (in cost) on the
// combined front belongs to each method. Computed exactly from the midpoints
// between adjacent combined-front costs; a point owned by several methods
// splits its credit equally. Throws DomainError if c_min >= c_max or every
// front is empty.
[[nodiscard]] std::map<std::string, double> run_metric(const MethodFronts& fronts, double c_min,
                                                       double c_max);

// run_metric with every segment weighted by the preference density's exact
// mass on it (Gaussian CDF differences for a KDE).
[[nodiscard]] std::map<std::string, double> rem(const MethodFronts& fronts,
                                                const CostPreference& preference, double c_min,
                                                double c_max);

// Converts (utility, cost) outcomes to minimized points (cost, max_utility - utility).
[[nodiscard]] Point2 to_point(const OutcomePair& o, std::int64_t max_utility);
[[nodiscard]] Front to_front(const std::vector<OutcomePair>& outcomes, std::int64_t max_utility);

// (m * n, max utility): the cost of prescribing everything everywhere paired
// with the deficit of prescribing nothing.
[[nodiscard]] Point2 reference_point(const DomainConfig& cfg);

}  // namespace rhea::metrics
