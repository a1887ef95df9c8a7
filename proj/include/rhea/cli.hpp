#pragma once

// Experiment configuration and the batch commands behind the rhea tool.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rhea/domain.hpp"
#include "rhea/evolve.hpp"
#include "rhea/schedule.hpp"

namespace rhea::cli {

inline constexpr const char* kModeRhea = "rhea";
inline constexpr const char* kModeAlone = "evolution-alone";

// Search settings shared by both modes; the mode fixes initialization and
// reinjection.
struct ModeSettings {
  std::size_t population_size = EvolveConfig{}.population_size;
  std::size_t generations = EvolveConfig{}.generations;
  MutationRates mutation;
  double rule_recombination = EvolveConfig{}.rule_recombination;
  std::size_t expert_matings = EvolveConfig{}.expert_matings;
};

struct ExperimentConfig {
  DomainConfig domain;
  std::string mode = kModeRhea;
  std::size_t trials = 100;
  std::vector<std::size_t> n_sweep{10, 30, 50};
  std::uint64_t base_seed = 0;
  std::map<std::string, ModeSettings> evolve{{kModeRhea, {}}, {kModeAlone, {}}};
  std::size_t ensemble_grid = 20;
  double ensemble_threshold = 0.5;
  std::optional<std::vector<double>> kde_samples;  // preference over cost for REM
  schedule::IpMaxima ip_maxima;

  // Throws ConfigError.
  void validate() const;
};

// Missing keys take defaults; unknown keys and ill-typed values throw
// ConfigError.
[[nodiscard]] ExperimentConfig parse_config(const nlohmann::json& j);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);
[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& cfg);

[[nodiscard]] EvolveConfig evolve_config(const ExperimentConfig& cfg, const std::string& mode,
                                         std::uint64_t seed);

struct TrialResult {
  std::string mode;
  std::size_t n = 0;
  std::size_t trial = 0;
  double recovered_fraction = 0.0;
  std::vector<OutcomePair> front;
  double seconds = 0.0;
};

// Every (n, mode, trial) cell of the sweep, ordered by n, then mode (rhea
// first), then trial. Seeds are base_seed + trial. Trials run on `jobs`
// worker threads; the result order does not depend on `jobs`.
[[nodiscard]] std::vector<TrialResult> run_scaling(const ExperimentConfig& cfg, std::size_t jobs);

// Runs `fn(i)` for i in [0, count) on up to `jobs` threads. The first
// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

struct CompareOptions {
  std::vector<std::filesystem::path> fronts;
  std::string reference;
  std::optional<std::filesystem::path> kde_samples;
  std::optional<std::pair<double, double>> ref_point;   // (c, a)
  std::optional<std::pair<double, double>> cost_range;  // (c_min, c_max)
};

// Output files are written under `out`, which is created when missing.
void cmd_run(const ExperimentConfig& cfg, const std::filesystem::path& out);
void cmd_scaling(const ExperimentConfig& cfg, const std::filesystem::path& out, std::size_t jobs,
                 bool timing);
// Returns the warnings it emitted.
std::vector<std::string> cmd_compare(const ExperimentConfig& cfg, const CompareOptions& opts,
                                     const std::filesystem::path& out);
void cmd_schedules(const ExperimentConfig& cfg, const std::filesystem::path& input,
                   const std::filesystem::path& out);

// Full command-line entry point; returns the process exit code (0 success,
// 2 configuration or input error, 3 internal invariant violation).
int run_main(int argc, char** argv);

}  // namespace rhea::cli
