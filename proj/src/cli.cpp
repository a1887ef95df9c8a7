#include "rhea/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "rhea/baselines.hpp"
#include "rhea/io.hpp"
#include "rhea/lineage.hpp"
#include "rhea/metrics.hpp"
#include "rhea/prescriptor.hpp"

namespace rhea::cli {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const {
  try {
    domain.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
  if (mode != kModeRhea && mode != kModeAlone) throw ConfigError("unknown mode '" + mode + "'");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (n_sweep.empty()) throw ConfigError("n_sweep must not be empty");
  for (std::size_t n : n_sweep) {
    if (n < 10 || n > kMaxInterventions) {
      throw ConfigError("n_sweep value " + std::to_string(n) + " outside [10, " +
                        std::to_string(kMaxInterventions) + "]");
    }
  }
  const std::size_t experts = gather_experts(domain).size();
  for (const auto& [name, s] : evolve) {
    EvolveConfig probe = evolve_config(*this, name, 0);
    try {
      probe.validate(experts);
    } catch (const ConfigError& e) {
      throw ConfigError("evolve." + name + ": " + e.what());
    }
  }
  if (ensemble_grid < 1) throw ConfigError("ensemble.grid must be at least 1");
  if (!(ensemble_threshold > 0.0 && ensemble_threshold <= 1.0)) {
    throw ConfigError("ensemble.threshold must be in (0, 1]");
  }
  ip_maxima.validate();
}

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
        allowed.end()) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("'" + (where.empty() ? std::string(key) : where + "." + key) +
                      "' has the wrong type");
  }
}

void read_count(const json& j, const char* key, std::size_t& out, const std::string& where) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("'" + where + "." + key + "' must be a non-negative integer");
  }
  out = v.get<std::size_t>();
}

ModeSettings parse_mode(const json& j, const std::string& where) {
  check_keys(j, {"population_size", "generations", "mutation", "rule_recombination",
                 "expert_matings"},
             where);
  ModeSettings s;
  read_count(j, "population_size", s.population_size, where);
  read_count(j, "generations", s.generations, where);
  read_count(j, "expert_matings", s.expert_matings, where);
  read(j, "rule_recombination", s.rule_recombination, where);
  if (j.contains("mutation")) {
    const auto& m = j.at("mutation");
    const std::string w = where + ".mutation";
    check_keys(m, {"action_toggle", "context_toggle", "rule_add", "rule_delete"}, w);
    read(m, "action_toggle", s.mutation.action_toggle, w);
    read(m, "context_toggle", s.mutation.context_toggle, w);
    read(m, "rule_add", s.mutation.rule_add, w);
    read(m, "rule_delete", s.mutation.rule_delete, w);
  }
  return s;
}

json mode_to_json(const ModeSettings& s) {
  return {{"population_size", s.population_size},
          {"generations", s.generations},
          {"expert_matings", s.expert_matings},
          {"rule_recombination", s.rule_recombination},
          {"mutation",
           {{"action_toggle", s.mutation.action_toggle},
            {"context_toggle", s.mutation.context_toggle},
            {"rule_add", s.mutation.rule_add},
            {"rule_delete", s.mutation.rule_delete}}}};
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  check_keys(j, {"domain", "mode", "trials", "n_sweep", "base_seed", "evolve", "ensemble",
                 "kde_samples", "ip_maxima"},
             "");
  ExperimentConfig cfg;
  if (j.contains("domain")) {
    const auto& d = j.at("domain");
    check_keys(d, {"m", "n"}, "domain");
    read_count(d, "m", cfg.domain.m, "domain");
    read_count(d, "n", cfg.domain.n, "domain");
  }
  read(j, "mode", cfg.mode, "");
  read_count(j, "trials", cfg.trials, "");
  read(j, "n_sweep", cfg.n_sweep, "");
  if (j.contains("base_seed")) {
    const auto& v = j.at("base_seed");
    if (!v.is_number_unsigned()) {
      throw ConfigError("'base_seed' must be a non-negative integer");
    }
    cfg.base_seed = v.get<std::uint64_t>();
  }
  if (j.contains("evolve")) {
    const auto& e = j.at("evolve");
    check_keys(e, {kModeRhea, kModeAlone}, "evolve");
    for (const auto& [name, value] : e.items()) cfg.evolve[name] = parse_mode(value, "evolve." + name);
  }
  if (j.contains("ensemble")) {
    const auto& e = j.at("ensemble");
    check_keys(e, {"grid", "threshold"}, "ensemble");
    read_count(e, "grid", cfg.ensemble_grid, "ensemble");
    read(e, "threshold", cfg.ensemble_threshold, "ensemble");
  }
  if (j.contains("kde_samples") && !j.at("kde_samples").is_null()) {
    std::vector<double> samples;
    read(j, "kde_samples", samples, "");
    cfg.kde_samples = std::move(samples);
  }
  if (j.contains("ip_maxima")) {
    std::vector<int> levels;
    read(j, "ip_maxima", levels, "");
    if (levels.size() != schedule::kIps) throw ConfigError("ip_maxima must list 12 ceilings");
    std::copy(levels.begin(), levels.end(), cfg.ip_maxima.max_level.begin());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  json evolve = json::object();
  for (const auto& [name, s] : cfg.evolve) evolve[name] = mode_to_json(s);
  return {{"domain", {{"m", cfg.domain.m}, {"n", cfg.domain.n}}},
          {"mode", cfg.mode},
          {"trials", cfg.trials},
          {"n_sweep", cfg.n_sweep},
          {"base_seed", cfg.base_seed},
          {"evolve", evolve},
          {"ensemble", {{"grid", cfg.ensemble_grid}, {"threshold", cfg.ensemble_threshold}}},
          {"kde_samples", cfg.kde_samples ? json(*cfg.kde_samples) : json(nullptr)},
          {"ip_maxima", cfg.ip_maxima.max_level}};
}

EvolveConfig evolve_config(const ExperimentConfig& cfg, const std::string& mode,
                           std::uint64_t seed) {
  const auto it = cfg.evolve.find(mode);
  if (it == cfg.evolve.end()) throw ConfigError("no evolve settings for mode '" + mode + "'");
  const ModeSettings& s = it->second;
  EvolveConfig e;
  e.population_size = s.population_size;
  e.generations = s.generations;
  e.mutation = s.mutation;
  e.rule_recombination = s.rule_recombination;
  e.expert_matings = s.expert_matings;
  e.seed = seed;
  const bool rhea = mode == kModeRhea;
  e.init_mode = rhea ? InitMode::distilled : InitMode::random;
  e.reinject_experts = rhea;
  return e;
}

// ---------------------------------------------------------------------------
// Trials

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<TrialResult> run_scaling(const ExperimentConfig& cfg, std::size_t jobs) {
  cfg.validate();
  const std::vector<std::string> modes{kModeRhea, kModeAlone};
  std::vector<TrialResult> results;
  for (std::size_t n : cfg.n_sweep) {
    for (const auto& mode : modes) {
      for (std::size_t t = 0; t < cfg.trials; ++t) results.push_back({mode, n, t, 0.0, {}, 0.0});
    }
  }
  parallel_for(results.size(), jobs, [&](std::size_t i) {
    TrialResult& r = results[i];
    const DomainConfig domain{cfg.domain.m, r.n};
    const auto start = std::chrono::steady_clock::now();
    const EvolveResult run = evolve(evolve_config(cfg, r.mode, cfg.base_seed + r.trial), domain);
    r.front = run.front;
    r.recovered_fraction = recovered_fraction(run.front, optimal_front(domain));
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!(r.recovered_fraction >= 0.0 && r.recovered_fraction <= 1.0)) {
      throw InvariantError("recovered fraction outside [0, 1]");
    }
  });
  return results;
}

// ---------------------------------------------------------------------------
// Output helpers

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw ConfigError("failed writing " + path.string());
}

void prepare_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw ConfigError("cannot create output directory " + out.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void append_front_rows(std::ostringstream& os, const std::string& method,
                       const std::vector<OutcomePair>& points) {
  for (const auto& p : points) os << method << ',' << p.utility << ',' << p.cost << '\n';
}

json fit_to_json(const InterpolationFit& fit) {
  return {{"samples", fit.samples},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"slope_stderr", fit.slope_stderr}};
}

json nullable(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

}  // namespace

// ---------------------------------------------------------------------------
// run

void cmd_run(const ExperimentConfig& cfg, const fs::path& out) {
  cfg.validate();
  prepare_dir(out);
  const DomainConfig& domain = cfg.domain;
  const EvolveResult run = evolve(evolve_config(cfg, cfg.mode, cfg.base_seed), domain);

  const auto experts = gather_experts(domain);
  std::vector<OutcomePair> expert_points;
  for (const auto& e : experts) expert_points.push_back(evaluate(e, domain));
  const auto optimal = optimal_front(domain);
  const std::map<std::string, std::vector<OutcomePair>> baselines{
      {"moe", moe_front(experts, domain)},
      {"ensemble",
       weighted_ensemble_front(experts, domain, cfg.ensemble_grid, cfg.ensemble_threshold)},
      {"experts", outcome_pareto_filter(expert_points)},
  };

  std::ostringstream front_csv;
  front_csv << "method,utility,cost\n";
  append_front_rows(front_csv, cfg.mode, run.front);
  write_file(out / "front.csv", front_csv.str());

  std::ostringstream baselines_csv;
  baselines_csv << "method,utility,cost\n";
  for (const char* name : {"moe", "ensemble"}) append_front_rows(baselines_csv, name, baselines.at(name));
  append_front_rows(baselines_csv, "experts", expert_points);
  append_front_rows(baselines_csv, "optimal", optimal);
  write_file(out / "baselines.csv", baselines_csv.str());

  std::ostringstream lineage;
  run.log.write_jsonl(lineage);
  write_file(out / "lineage.jsonl", lineage.str());

  const std::int64_t u_max = max_utility(domain);
  const metrics::Point2 ref = metrics::reference_point(domain);
  const double c_min = 0.0;
  const double c_max = static_cast<double>(domain.m * domain.n);
  metrics::MethodFronts fronts{{cfg.mode, metrics::to_front(run.front, u_max)}};
  for (const auto& [name, pts] : baselines) fronts[name] = metrics::to_front(pts, u_max);

  metrics::CostPreference preference = metrics::UniformPreference{};
  if (cfg.kde_samples) preference = metrics::kde_fit(*cfg.kde_samples);
  const auto run_shares = metrics::run_metric(fronts, c_min, c_max);
  const auto rem_shares = metrics::rem(fronts, preference, c_min, c_max);
  double run_total = 0.0;
  for (const auto& [name, v] : run_shares) run_total += v;
  if (std::abs(run_total - 1.0) > 1e-9) throw InvariantError("RUN shares do not sum to 1");

  json methods = json::object();
  for (const auto& [name, f] : fronts) {
    methods[name] = {{"hv", metrics::hypervolume(f, ref)},
                     {"run", run_shares.at(name)},
                     {"rem", rem_shares.at(name)}};
  }
  json versus = json::object();
  const auto& own = fronts.at(cfg.mode);
  for (const auto& [name, pts] : baselines) {
    const auto& other = fronts.at(name);
    versus[name] = {{"hvi", metrics::hvi(own, other, ref)},
                    {"dr", metrics::domination_rate(own, other)},
                    {"mcr", metrics::mcr(own, other)}};
  }

  const double recovered = recovered_fraction(run.front, optimal);
  if (!(recovered >= 0.0 && recovered <= 1.0)) throw InvariantError("recovered fraction outside [0, 1]");

  const json config = to_json(cfg);
  json report = {
      {"config", config},
      {"mode", cfg.mode},
      {"seed", cfg.base_seed},
      {"recovered_fraction", recovered},
      {"front_size", run.front.size()},
      {"optimal_front_size", optimal.size()},
      {"individuals_created", run.log.size()},
      {"reference_point", {ref.c, ref.a}},
      {"cost_range", {c_min, c_max}},
      {"rem_preference", cfg.kde_samples ? "kde" : "uniform"},
      {"methods", methods},
      {"versus", versus},
      {"contributions", origin_contributions(run.log, run.front_ids)},
      {"interpolation", fit_to_json(child_cost_interpolation(run.log))},
  };
  write_file(out / "metrics.json", dump(report));

  std::vector<const Individual*> members;
  for (const auto& ind : run.population) {
    if (std::find(run.front_ids.begin(), run.front_ids.end(), ind.id) != run.front_ids.end()) {
      members.push_back(&ind);
    }
  }
  std::sort(members.begin(), members.end(), [](const Individual* a, const Individual* b) {
    if (a->outcome.cost != b->outcome.cost) return a->outcome.cost < b->outcome.cost;
    return a->id < b->id;
  });
  json genomes = json::array();
  for (const auto* ind : members) {
    genomes.push_back({{"id", ind->id},
                       {"utility", ind->outcome.utility},
                       {"cost", ind->outcome.cost},
                       {"genome", ind->genome}});
  }
  write_file(out / "front_genomes.json",
             dump({{"config", config}, {"mode", cfg.mode}, {"front", genomes}}));
  write_file(out / "resolved_config.json", dump(config));
}

// ---------------------------------------------------------------------------
// scaling

void cmd_scaling(const ExperimentConfig& cfg, const fs::path& out, std::size_t jobs, bool timing) {
  prepare_dir(out);
  const auto results = run_scaling(cfg, jobs);
  std::ostringstream csv;
  csv << "mode,n,trial,recovered_fraction,seconds\n";
  for (const auto& r : results) {
    csv << r.mode << ',' << r.n << ',' << r.trial << ',' << io::format_double(r.recovered_fraction)
        << ',' << (timing ? io::format_double(r.seconds) : "") << '\n';
  }
  write_file(out / "scaling.csv", csv.str());
  write_file(out / "resolved_config.json", dump(to_json(cfg)));
}

// ---------------------------------------------------------------------------
// compare

namespace {

struct LoadedFronts {
  std::map<std::string, std::vector<metrics::Point2>> points;
  bool utility_form = false;
};

void read_front_file(const fs::path& path, std::int64_t u_max, LoadedFronts& acc, bool& first) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read front file " + path.string());
  std::string line;
  if (!io::read_line(in, line)) throw DomainError(path.string() + ": empty file");
  const auto header = io::split_csv_line(line);
  bool utility_form = false;
  if (header == std::vector<std::string>{"method", "utility", "cost"}) {
    utility_form = true;
  } else if (header != std::vector<std::string>{"method", "c", "a"}) {
    throw DomainError(path.string() + ": header must be method,utility,cost or method,c,a");
  }
  if (first) {
    acc.utility_form = utility_form;
    first = false;
  } else if (acc.utility_form != utility_form) {
    throw DomainError(path.string() + ": front files mix utility and (c, a) formats");
  }
  std::size_t line_no = 1;
  while (io::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = io::split_csv_line(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (cells.size() != 3 || cells[0].empty()) throw DomainError(where + ": expected 3 cells");
    metrics::Point2 p;
    if (utility_form) {
      p.c = io::parse_double(cells[2], where);
      p.a = static_cast<double>(u_max) - io::parse_double(cells[1], where);
    } else {
      p.c = io::parse_double(cells[1], where);
      p.a = io::parse_double(cells[2], where);
    }
    acc.points[cells[0]].push_back(p);
  }
}

std::vector<double> read_samples(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read KDE sample file " + path.string());
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (io::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = io::split_csv_line(line);
    if (line_no == 1 && cells[0] == "cost") continue;
    samples.push_back(io::parse_double(cells[0], path.string() + ":" + std::to_string(line_no)));
  }
  return samples;
}

}  // namespace

std::vector<std::string> cmd_compare(const ExperimentConfig& cfg, const CompareOptions& opts,
                                     const fs::path& out) {
  if (opts.fronts.empty()) throw ConfigError("compare needs at least one front file");
  prepare_dir(out);
  const std::int64_t u_max = max_utility(cfg.domain);
  LoadedFronts loaded;
  bool first = true;
  for (const auto& p : opts.fronts) read_front_file(p, u_max, loaded, first);
  if (!loaded.points.contains(opts.reference)) {
    throw ConfigError("reference method '" + opts.reference + "' not found in the front files");
  }

  metrics::MethodFronts fronts;
  double max_c = 0.0;
  double max_a = 0.0;
  double min_c = std::numeric_limits<double>::infinity();
  for (const auto& [name, pts] : loaded.points) {
    fronts[name] = metrics::pareto_filter(pts);
    for (const auto& p : pts) {
      max_c = std::max(max_c, p.c);
      max_a = std::max(max_a, p.a);
      min_c = std::min(min_c, p.c);
    }
  }

  metrics::Point2 ref;
  if (opts.ref_point) {
    ref = {opts.ref_point->first, opts.ref_point->second};
  } else if (loaded.utility_form) {
    ref = metrics::reference_point(cfg.domain);
  } else {
    ref = {max_c + 1.0, max_a + 1.0};
  }
  std::pair<double, double> range;
  if (opts.cost_range) {
    range = *opts.cost_range;
  } else if (loaded.utility_form) {
    range = {0.0, static_cast<double>(cfg.domain.m * cfg.domain.n)};
  } else {
    range = {min_c, max_c};
  }
  if (!(range.first < range.second)) {
    throw ConfigError("cost range is empty; pass --cost-range LO,HI");
  }

  metrics::CostPreference preference = metrics::UniformPreference{};
  std::string preference_name = "uniform";
  if (opts.kde_samples) {
    preference = metrics::kde_fit(read_samples(*opts.kde_samples));
    preference_name = "kde";
  } else if (cfg.kde_samples) {
    preference = metrics::kde_fit(*cfg.kde_samples);
    preference_name = "kde";
  }

  const auto run_shares = metrics::run_metric(fronts, range.first, range.second);
  const auto rem_shares = metrics::rem(fronts, preference, range.first, range.second);

  std::vector<std::string> warnings;
  const auto& reference = fronts.at(opts.reference);
  json methods = json::object();
  for (const auto& [name, f] : fronts) {
    std::optional<double> hvi, dr, mcr;
    if (name != opts.reference) {
      hvi = metrics::hvi(f, reference, ref);
      dr = metrics::domination_rate(f, reference);
      mcr = metrics::mcr(f, reference);
    }
    methods[name] = {{"hv", metrics::hypervolume(f, ref)},
                     {"hvi", nullable(hvi)},
                     {"dr", nullable(dr)},
                     {"mcr", nullable(mcr)},
                     {"run", run_shares.at(name)},
                     {"rem", rem_shares.at(name)}};
  }
  warnings.push_back("hvi, dr and mcr are undefined for the reference method '" + opts.reference +
                     "' and are reported as null");

  json report = {{"config", to_json(cfg)},
                 {"reference", opts.reference},
                 {"objectives", loaded.utility_form ? "utility,cost" : "c,a"},
                 {"reference_point", {ref.c, ref.a}},
                 {"cost_range", {range.first, range.second}},
                 {"rem_preference", preference_name},
                 {"methods", methods},
                 {"warnings", warnings}};
  write_file(out / "metrics.json", dump(report));
  return warnings;
}

// ---------------------------------------------------------------------------
// schedules

void cmd_schedules(const ExperimentConfig& cfg, const fs::path& input, const fs::path& out) {
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot read schedule file " + input.string());
  const auto schedules = schedule::read_schedules_csv(in, cfg.ip_maxima);
  prepare_dir(out);
  std::ostringstream csv;
  schedule::write_measures_csv(csv, schedules);
  write_file(out / "measures.csv", csv.str());
}

// ---------------------------------------------------------------------------
// entry point

namespace {

std::pair<double, double> parse_pair(const std::string& text, const std::string& flag) {
  const auto cells = io::split_csv_line(text);
  if (cells.size() != 2) throw ConfigError(flag + " expects two comma-separated numbers");
  return {io::parse_double(cells[0], flag), io::parse_double(cells[1], flag)};
}

}  // namespace

int run_main(int argc, char** argv) {
  CLI::App app{"Expert-knowledge evolution experiments on the synthetic policy domain"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config (defaults when omitted)");
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Override base_seed");
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "Run one mode once and write fronts, lineage, metrics");
  add_common(run);

  bool timing = false;
  auto* scaling = app.add_subcommand("scaling", "Recovery sweep over n for both modes");
  add_common(scaling);
  scaling->add_flag("--timing", timing, "Fill the seconds column (breaks byte reproducibility)");

  CompareOptions copts;
  std::vector<std::string> front_files;
  std::string kde_file, ref_point, cost_range;
  auto* compare = app.add_subcommand("compare", "Pareto metrics across front CSV files");
  add_common(compare);
  compare->add_option("--fronts", front_files, "Front CSV files")->required();
  compare->add_option("--reference", copts.reference, "Reference method label")->required();
  compare->add_option("--kde-samples", kde_file, "Cost samples defining the REM preference");
  compare->add_option("--ref-point", ref_point, "Hypervolume reference point C,A");
  compare->add_option("--cost-range", cost_range, "RUN/REM cost interval LO,HI");

  std::string schedule_file;
  auto* schedules = app.add_subcommand("schedules", "Behavioral measures of IP schedules");
  add_common(schedules);
  schedules->add_option("--input", schedule_file, "Schedule CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg = config_path.empty() ? parse_config(json::object()) : load_config(config_path);
    if (seed) cfg.base_seed = *seed;
    const fs::path out = out_dir;
    if (*run) {
      cmd_run(cfg, out);
    } else if (*scaling) {
      cmd_scaling(cfg, out, jobs, timing);
    } else if (*compare) {
      for (const auto& f : front_files) copts.fronts.emplace_back(f);
      if (!kde_file.empty()) copts.kde_samples = kde_file;
      if (!ref_point.empty()) copts.ref_point = parse_pair(ref_point, "--ref-point");
      if (!cost_range.empty()) copts.cost_range = parse_pair(cost_range, "--cost-range");
      for (const auto& w : cmd_compare(cfg, copts, out)) std::cerr << "warning: " << w << '\n';
    } else if (*schedules) {
      cmd_schedules(cfg, schedule_file, out);
    }
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace rhea::cli
