#pragma once

// Behavioral measures of 90-day x 12-IP stringency schedules.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "rhea/error.hpp"

namespace rhea::schedule {

inline constexpr std::size_t kDays = 90;
inline constexpr std::size_t kIps = 12;

// Per-IP ordinal ceilings. The default sums to 34, the maximum daily cost.
struct IpMaxima {
  std::array<int, kIps> max_level{3, 3, 2, 4, 2, 3, 2, 4, 2, 3, 2, 4};

  // Throws ConfigError unless every ceiling is in [1, 4] and they sum to 34.
  void validate() const;
  [[nodiscard]] int total() const;
};

using Grid = std::array<std::array<int, kIps>, kDays>;

class Schedule {
 public:
  // Throws DomainError if any entry lies outside [0, ceiling].
  explicit Schedule(const Grid& grid, const IpMaxima& maxima = {});

  [[nodiscard]] int at(std::size_t day, std::size_t ip) const { return grid_[day][ip]; }
  [[nodiscard]] const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
};

using DailyCost = std::array<double, kDays>;

[[nodiscard]] DailyCost daily_cost(const Schedule& s);
// max(S+) - min(S+).
[[nodiscard]] double swing(const Schedule& s);
// Largest relative gap between the mean daily cost before and after a split
// day t in [1, 89]; 0 when both phase means are 0.
[[nodiscard]] double separability(const Schedule& s);
// 12 minus the number of IPs ever used.
[[nodiscard]] int focus(const Schedule& s);
// Most day-over-day changes seen in a single IP.
[[nodiscard]] int agility(const Schedule& s);
// Largest per-IP share of lag-1 changes not repeated at lag 7, clamped to [0, 1].
[[nodiscard]] double periodicity(const Schedule& s);
[[nodiscard]] std::array<double, kIps> mean_reduce(const Schedule& s);

struct Measures {
  double swing = 0.0;
  double separability = 0.0;
  int focus = 0;
  int agility = 0;
  double periodicity = 0.0;
};

[[nodiscard]] Measures measure(const Schedule& s);

struct NamedSchedule {
  std::string id;
  Schedule schedule;
};

// Long-format CSV with header `id,day,ip_1,...,ip_12`: 90 rows per id, days
// 0..89 in any order, ids in first-appearance order. Throws DomainError naming
// the offending id (or line) on a malformed block.
[[nodiscard]] std::vector<NamedSchedule> read_schedules_csv(std::istream& in,
                                                            const IpMaxima& maxima = {});

// Header `id,swing,separability,focus,agility,periodicity`.
void write_measures_csv(std::ostream& out, const std::vector<NamedSchedule>& schedules);

}  // namespace rhea::schedule
