#include "rhea/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>

#include "rhea/io.hpp"

namespace rhea::schedule {

void IpMaxima::validate() const {
  for (std::size_t k = 0; k < kIps; ++k) {
    if (max_level[k] < 1 || max_level[k] > 4) {
      throw ConfigError("IP ceiling " + std::to_string(k + 1) + " must be in [1, 4]");
    }
  }
  if (total() != 34) throw ConfigError("IP ceilings must sum to 34, got " + std::to_string(total()));
}

int IpMaxima::total() const { return std::accumulate(max_level.begin(), max_level.end(), 0); }

Schedule::Schedule(const Grid& grid, const IpMaxima& maxima) : grid_(grid) {
  for (std::size_t t = 0; t < kDays; ++t) {
    for (std::size_t k = 0; k < kIps; ++k) {
      const int v = grid_[t][k];
      if (v < 0 || v > maxima.max_level[k]) {
        throw DomainError("day " + std::to_string(t) + ", IP " + std::to_string(k + 1) +
                          ": level " + std::to_string(v) + " outside [0, " +
                          std::to_string(maxima.max_level[k]) + "]");
      }
    }
  }
}

DailyCost daily_cost(const Schedule& s) {
  DailyCost out{};
  for (std::size_t t = 0; t < kDays; ++t) {
    const auto& row = s.grid()[t];
    out[t] = std::accumulate(row.begin(), row.end(), 0);
  }
  return out;
}

double swing(const Schedule& s) {
  const auto d = daily_cost(s);
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  return *hi - *lo;
}

double separability(const Schedule& s) {
  const auto d = daily_cost(s);
  std::array<double, kDays + 1> prefix{};
  for (std::size_t t = 0; t < kDays; ++t) prefix[t + 1] = prefix[t] + d[t];
  double best = 0.0;
  for (std::size_t t = 1; t < kDays; ++t) {
    const double before = prefix[t] / static_cast<double>(t);
    const double after = (prefix[kDays] - prefix[t]) / static_cast<double>(kDays - t);
    const double avg = 0.5 * (before + after);
    if (avg == 0.0) continue;
    best = std::max(best, std::abs(before - after) / avg);
  }
  return best;
}

int focus(const Schedule& s) {
  int used = 0;
  for (std::size_t k = 0; k < kIps; ++k) {
    const bool any = std::any_of(s.grid().begin(), s.grid().end(),
                                 [k](const auto& row) { return row[k] != 0; });
    if (any) ++used;
  }
  return static_cast<int>(kIps) - used;
}

namespace {

int changes(const Schedule& s, std::size_t k, std::size_t lag, std::size_t first,
            std::size_t last) {
  int count = 0;
  for (std::size_t t = first; t <= last; ++t) {
    if (s.at(t, k) != s.at(t - lag, k)) ++count;
  }
  return count;
}

}  // namespace

int agility(const Schedule& s) {
  int best = 0;
  for (std::size_t k = 0; k < kIps; ++k) best = std::max(best, changes(s, k, 1, 1, kDays - 1));
  return best;
}

double periodicity(const Schedule& s) {
  double best = 0.0;
  for (std::size_t k = 0; k < kIps; ++k) {
    // Both windows cover the same 83 day pairs shifted by the lag.
    const int lag1 = changes(s, k, 1, 1, kDays - 8);
    if (lag1 == 0) continue;
    const int lag7 = changes(s, k, 7, 7, kDays - 1);
    best = std::max(best, static_cast<double>(lag1 - lag7) / static_cast<double>(lag1));
  }
  return best;
}

std::array<double, kIps> mean_reduce(const Schedule& s) {
  std::array<double, kIps> out{};
  for (const auto& row : s.grid()) {
    for (std::size_t k = 0; k < kIps; ++k) out[k] += row[k];
  }
  for (double& v : out) v /= static_cast<double>(kDays);
  return out;
}

Measures measure(const Schedule& s) {
  return {swing(s), separability(s), focus(s), agility(s), periodicity(s)};
}

std::vector<NamedSchedule> read_schedules_csv(std::istream& in, const IpMaxima& maxima) {
  std::string line;
  if (!io::read_line(in, line)) throw DomainError("schedule CSV is empty");
  const auto header = io::split_csv_line(line);
  if (header.size() != kIps + 2 || header[0] != "id" || header[1] != "day") {
    throw DomainError("schedule CSV header must be id,day,ip_1,...,ip_12");
  }

  struct Block {
    Grid grid{};
    std::array<bool, kDays> seen{};
    std::size_t rows = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Block> blocks;

  std::size_t line_no = 1;
  while (io::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = io::split_csv_line(line);
    const std::string where = "line " + std::to_string(line_no);
    if (cells.size() != kIps + 2) {
      throw DomainError(where + (cells.empty() ? "" : " (schedule " + cells[0] + ")") +
                        ": expected " + std::to_string(kIps + 2) + " cells");
    }
    const std::string& id = cells[0];
    const std::string ctx = "schedule " + id + ", " + where;
    auto [it, fresh] = blocks.try_emplace(id);
    if (fresh) order.push_back(id);
    Block& b = it->second;
    const long long day = io::parse_int(cells[1], ctx);
    if (day < 0 || day >= static_cast<long long>(kDays)) {
      throw DomainError(ctx + ": day " + std::to_string(day) + " outside [0, 89]");
    }
    if (b.seen[day]) throw DomainError(ctx + ": day " + std::to_string(day) + " repeated");
    b.seen[day] = true;
    ++b.rows;
    for (std::size_t k = 0; k < kIps; ++k) {
      b.grid[day][k] = static_cast<int>(io::parse_int(cells[k + 2], ctx));
    }
  }

  std::vector<NamedSchedule> out;
  out.reserve(order.size());
  for (const auto& id : order) {
    const Block& b = blocks.at(id);
    if (b.rows != kDays) {
      throw DomainError("schedule " + id + ": " + std::to_string(b.rows) + " days, expected 90");
    }
    try {
      out.push_back({id, Schedule(b.grid, maxima)});
    } catch (const DomainError& e) {
      throw DomainError("schedule " + id + ": " + e.what());
    }
  }
  return out;
}

void write_measures_csv(std::ostream& out, const std::vector<NamedSchedule>& schedules) {
  out << "id,swing,separability,focus,agility,periodicity\n";
  for (const auto& [id, s] : schedules) {
    const auto m = measure(s);
    out << id << ',' << io::format_double(m.swing) << ',' << io::format_double(m.separability)
        << ',' << m.focus << ',' << m.agility << ',' << io::format_double(m.periodicity) << '\n';
  }
}

}  // namespace rhea::schedule
