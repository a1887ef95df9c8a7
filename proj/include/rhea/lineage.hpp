#pragma once

// Genealogy store and the ancestry-based credit measures computed over it.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rhea/domain.hpp"

namespace rhea {

using IndividualId = std::uint64_t;
using ParentPair = std::pair<IndividualId, IndividualId>;

struct LineageRecord {
  IndividualId id = 0;
  std::optional<ParentPair> parents;  // empty for initial and reinjected individuals
  OutcomePair outcome;
  std::size_t generation = 0;
  std::optional<std::string> expert_label;  // set on copies of gathered experts
};

// Append-only log. Parents must be recorded before their children, which keeps
// the graph acyclic and lets every recursion run as a single forward pass.
class LineageLog {
 public:
  // Throws DomainError on a duplicate id or a parent not yet in the log.
  void add(LineageRecord record);

  [[nodiscard]] bool contains(IndividualId id) const { return index_.contains(id); }
  // Throws LookupError for an unknown id.
  [[nodiscard]] const LineageRecord& at(IndividualId id) const;
  [[nodiscard]] std::size_t position(IndividualId id) const;

  [[nodiscard]] std::size_t size() const { return records_.size(); }
  [[nodiscard]] const std::vector<LineageRecord>& records() const { return records_; }

  // One JSON object per line: id, parents, generation, utility, cost, expert.
  void write_jsonl(std::ostream& os) const;

  friend bool operator==(const LineageLog& a, const LineageLog& b);

 private:
  std::vector<LineageRecord> records_;
  std::unordered_map<IndividualId, std::size_t> index_;
};

// Anc(x): empty for parentless x, otherwise the parents plus their ancestors.
[[nodiscard]] std::set<IndividualId> ancestors(IndividualId id, const LineageLog& log);

// Number of front members that have `id` as an ancestor.
[[nodiscard]] std::size_t pc_count(IndividualId id, const LineageLog& log,
                                   const std::vector<IndividualId>& front_ids);

// Fraction of the ancestry of `id` that traces back to initial individual
// `ancestor`: 1 or 0 for parentless ids, the mean over parents otherwise.
[[nodiscard]] double a_percent(IndividualId ancestor, IndividualId id, const LineageLog& log);

// a_percent(ancestor, x) for every record x, aligned with log.records().
[[nodiscard]] std::vector<double> ancestry_shares(IndividualId ancestor, const LineageLog& log);

// Mean of a_percent(id, f) over the front members f. Throws DomainError on an
// empty front.
[[nodiscard]] double pc_percent(IndividualId id, const LineageLog& log,
                                const std::vector<IndividualId>& front_ids);

// pc_percent aggregated by origin label: every parentless individual counts
// toward its expert label, or toward `unlabeled` when it has none. Values sum
// to 1 over the labels present.
[[nodiscard]] std::map<std::string, double> origin_contributions(
    const LineageLog& log, const std::vector<IndividualId>& front_ids,
    const std::string& unlabeled = "random");

}  // namespace rhea
