#include "rhea/lineage.hpp"

#include <algorithm>

#include "json.hpp"

namespace rhea {

void LineageLog::add(LineageRecord record) {
  if (index_.contains(record.id)) {
    throw DomainError("duplicate lineage id " + std::to_string(record.id));
  }
  if (record.parents) {
    for (IndividualId p : {record.parents->first, record.parents->second}) {
      if (!index_.contains(p)) {
        throw DomainError("parent " + std::to_string(p) + " of " + std::to_string(record.id) +
                          " is not in the log");
      }
    }
  }
  index_.emplace(record.id, records_.size());
  records_.push_back(std::move(record));
}

std::size_t LineageLog::position(IndividualId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw LookupError("unknown lineage id " + std::to_string(id));
  return it->second;
}

const LineageRecord& LineageLog::at(IndividualId id) const { return records_[position(id)]; }

void LineageLog::write_jsonl(std::ostream& os) const {
  for (const auto& r : records_) {
    nlohmann::json j;
    j["id"] = r.id;
    j["parents"] = nlohmann::json::array();
    if (r.parents) j["parents"] = {r.parents->first, r.parents->second};
    j["generation"] = r.generation;
    j["utility"] = r.outcome.utility;
    j["cost"] = r.outcome.cost;
    j["expert"] = r.expert_label ? nlohmann::json(*r.expert_label) : nlohmann::json(nullptr);
    os << j.dump() << '\n';
  }
}

bool operator==(const LineageLog& a, const LineageLog& b) {
  if (a.records_.size() != b.records_.size()) return false;
  for (std::size_t i = 0; i < a.records_.size(); ++i) {
    const auto& x = a.records_[i];
    const auto& y = b.records_[i];
    if (x.id != y.id || x.parents != y.parents || x.outcome != y.outcome ||
        x.generation != y.generation || x.expert_label != y.expert_label) {
      return false;
    }
  }
  return true;
}

namespace {

// Log positions of `id` and everything it descends from, ascending.
std::vector<std::size_t> closure_positions(IndividualId id, const LineageLog& log) {
  std::vector<char> seen(log.size(), 0);
  std::vector<std::size_t> stack{log.position(id)};
  std::vector<std::size_t> out;
  seen[stack.back()] = 1;
  while (!stack.empty()) {
    const std::size_t pos = stack.back();
    stack.pop_back();
    out.push_back(pos);
    const auto& parents = log.records()[pos].parents;
    if (!parents) continue;
    for (IndividualId p : {parents->first, parents->second}) {
      const std::size_t pp = log.position(p);
      if (!seen[pp]) {
        seen[pp] = 1;
        stack.push_back(pp);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::set<IndividualId> ancestors(IndividualId id, const LineageLog& log) {
  std::set<IndividualId> out;
  for (std::size_t pos : closure_positions(id, log)) out.insert(log.records()[pos].id);
  out.erase(id);
  return out;
}

std::size_t pc_count(IndividualId id, const LineageLog& log,
                     const std::vector<IndividualId>& front_ids) {
  (void)log.position(id);
  std::size_t count = 0;
  for (IndividualId f : front_ids) {
    if (ancestors(f, log).contains(id)) ++count;
  }
  return count;
}

double a_percent(IndividualId ancestor, IndividualId id, const LineageLog& log) {
  (void)log.position(ancestor);
  const auto closure = closure_positions(id, log);
  std::unordered_map<std::size_t, double> share;
  share.reserve(closure.size());
  for (std::size_t pos : closure) {
    const auto& r = log.records()[pos];
    if (!r.parents) {
      share[pos] = r.id == ancestor ? 1.0 : 0.0;
    } else {
      share[pos] = 0.5 * (share.at(log.position(r.parents->first)) +
                          share.at(log.position(r.parents->second)));
    }
  }
  return share.at(log.position(id));
}

std::vector<double> ancestry_shares(IndividualId ancestor, const LineageLog& log) {
  (void)log.position(ancestor);
  std::vector<double> share(log.size(), 0.0);
  for (std::size_t pos = 0; pos < log.size(); ++pos) {
    const auto& r = log.records()[pos];
    if (!r.parents) {
      share[pos] = r.id == ancestor ? 1.0 : 0.0;
    } else {
      share[pos] = 0.5 * (share[log.position(r.parents->first)] +
                          share[log.position(r.parents->second)]);
    }
  }
  return share;
}

double pc_percent(IndividualId id, const LineageLog& log,
                  const std::vector<IndividualId>& front_ids) {
  if (front_ids.empty()) throw DomainError("pc_percent needs a non-empty front");
  double total = 0.0;
  for (IndividualId f : front_ids) total += a_percent(id, f, log);
  return total / static_cast<double>(front_ids.size());
}

std::map<std::string, double> origin_contributions(const LineageLog& log,
                                                   const std::vector<IndividualId>& front_ids,
                                                   const std::string& unlabeled) {
  if (front_ids.empty()) throw DomainError("origin_contributions needs a non-empty front");

  std::map<std::string, std::size_t> slot;
  for (const auto& r : log.records()) {
    if (!r.parents) slot.try_emplace(r.expert_label.value_or(unlabeled), 0);
  }
  std::size_t k = 0;
  for (auto& [label, s] : slot) s = k++;

  // Label composition propagated forward; linear in the log, exact because
  // a_percent is linear in its initial-individual indicator.
  const std::size_t width = slot.size();
  std::vector<double> comp(log.size() * width, 0.0);
  for (std::size_t pos = 0; pos < log.size(); ++pos) {
    const auto& r = log.records()[pos];
    double* row = &comp[pos * width];
    if (!r.parents) {
      row[slot.at(r.expert_label.value_or(unlabeled))] = 1.0;
      continue;
    }
    const double* a = &comp[log.position(r.parents->first) * width];
    const double* b = &comp[log.position(r.parents->second) * width];
    for (std::size_t i = 0; i < width; ++i) row[i] = 0.5 * (a[i] + b[i]);
  }

  std::map<std::string, double> out;
  for (const auto& [label, s] : slot) {
    double total = 0.0;
    for (IndividualId f : front_ids) total += comp[log.position(f) * width + s];
    out[label] = total / static_cast<double>(front_ids.size());
  }
  return out;
}

}  // namespace rhea
