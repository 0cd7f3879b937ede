#pragma once

// Run configuration for the verification harness: the model, the rational
// grid, the seed, the suites to run and per-suite parameter overrides.
// Every tunable has a default matching the shipped verification targets, so
// a minimal config only names the suites and a seed.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prodsys/serialization.hpp"

namespace prodsys {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "unit-laws",        "isometry",          "associativity-3.2",
      "right-dilation-law", "discrete-A1",     "coherence-identities",
      "frame-convergence", "continuity-4.1"};
  return names;
}

inline bool is_suite_name(const std::string& s) {
  for (const auto& n : suite_names())
    if (n == s) return true;
  return false;
}

struct SuiteParams {
  std::optional<long> cases;
  std::optional<double> tolerance;
  std::optional<double> value_bound;
  std::optional<double> norm_bound;
  std::optional<int> max_pieces;
  std::optional<int> max_terms;
  std::optional<int> max_sections;
  std::optional<std::int64_t> t_ticks_min;
  std::optional<std::int64_t> t_ticks_max;
  std::optional<int> frame_level;
  std::optional<double> frame_clip;
  std::optional<double> frame_max_condition;
  std::optional<int> delta_max;   // discrete local dimension cap
  std::optional<int> level_max;   // discrete level budget
  std::optional<int> halvings;
  std::optional<int> window_steps;
  std::optional<std::int64_t> fine_ticks;
};

struct ScenarioConfig {
  Model model = exponential_model(1);
  std::int64_t grid_denominator = 10080;  // 2^5 * 3^2 * 5 * 7
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::vector<std::string> suites;
  std::map<std::string, SuiteParams> params;
};

namespace detail {

inline SuiteParams suite_params_from_json(const Json& j) {
  SuiteParams p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    try {
      if (key == "cases") p.cases = v.get<long>();
      else if (key == "tolerance") p.tolerance = v.get<double>();
      else if (key == "value_bound") p.value_bound = v.get<double>();
      else if (key == "norm_bound") p.norm_bound = v.get<double>();
      else if (key == "max_pieces") p.max_pieces = v.get<int>();
      else if (key == "max_terms") p.max_terms = v.get<int>();
      else if (key == "max_sections") p.max_sections = v.get<int>();
      else if (key == "t_ticks_min") p.t_ticks_min = v.get<std::int64_t>();
      else if (key == "t_ticks_max") p.t_ticks_max = v.get<std::int64_t>();
      else if (key == "frame_level") p.frame_level = v.get<int>();
      else if (key == "frame_clip") p.frame_clip = v.get<double>();
      else if (key == "frame_max_condition") p.frame_max_condition = v.get<double>();
      else if (key == "delta_max") p.delta_max = v.get<int>();
      else if (key == "level_max") p.level_max = v.get<int>();
      else if (key == "halvings") p.halvings = v.get<int>();
      else if (key == "window_steps") p.window_steps = v.get<int>();
      else if (key == "fine_ticks") p.fine_ticks = v.get<std::int64_t>();
      else throw ConfigError("unknown suite parameter \"" + key + "\"");
    } catch (const Json::exception&) {
      throw ConfigError("suite parameter \"" + key + "\" has the wrong type");
    }
  }
  if (p.cases && *p.cases <= 0) throw ConfigError("cases must be positive");
  if (p.tolerance && !(*p.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (p.norm_bound && !(*p.norm_bound > 0.0)) throw ConfigError("norm_bound must be positive");
  if (p.value_bound && !(*p.value_bound > 0.0)) throw ConfigError("value_bound must be positive");
  if (p.frame_level && *p.frame_level < 0) throw ConfigError("frame_level must be >= 0");
  if (p.halvings && *p.halvings < 1) throw ConfigError("halvings must be >= 1");
  return p;
}

}  // namespace detail

inline ScenarioConfig scenario_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ScenarioConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (key == "model") {
      cfg.model = model_from_json(v);
    } else if (key == "grid_denominator") {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
        throw ConfigError("grid_denominator must be a positive integer");
      cfg.grid_denominator = v.get<std::int64_t>();
    } else if (key == "seed") {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ConfigError("seed must be a nonnegative integer");
      cfg.seed = v.get<std::uint64_t>();
      cfg.has_seed = true;
    } else if (key == "suites") {
      if (!v.is_array()) throw ConfigError("suites must be an array of suite names");
      for (const Json& s : v) {
        if (!s.is_string()) throw ConfigError("suites must be an array of suite names");
        std::string name = s.get<std::string>();
        if (!is_suite_name(name)) throw ConfigError("unknown suite \"" + name + "\"");
        for (const auto& existing : cfg.suites)
          if (existing == name) throw ConfigError("suite \"" + name + "\" listed twice");
        cfg.suites.push_back(std::move(name));
      }
    } else if (key == "suite_params") {
      if (!v.is_object()) throw ConfigError("suite_params must be an object keyed by suite name");
      for (auto pit = v.begin(); pit != v.end(); ++pit) {
        if (!is_suite_name(pit.key()))
          throw ConfigError("suite_params: unknown suite \"" + pit.key() + "\"");
        cfg.params[pit.key()] = detail::suite_params_from_json(pit.value());
      }
    } else {
      throw ConfigError("config: unknown key \"" + key + "\"");
    }
  }
  return cfg;
}

inline Json scenario_config_to_json(const ScenarioConfig& cfg) {
  Json j{{"model", model_to_json(cfg.model)},
         {"grid_denominator", cfg.grid_denominator},
         {"suites", cfg.suites}};
  if (cfg.has_seed) j["seed"] = cfg.seed;
  return j;
}

// Called after CLI overrides are merged: a run that draws random cases
// needs a seed.
inline void validate_for_run(const ScenarioConfig& cfg) {
  if (!cfg.suites.empty() && !cfg.has_seed)
    throw ConfigError("a seed is required to run suites (config \"seed\" or --seed)");
}

inline const SuiteParams& params_for(const ScenarioConfig& cfg, const std::string& suite) {
  static const SuiteParams empty;
  auto it = cfg.params.find(suite);
  return it == cfg.params.end() ? empty : it->second;
}

}  // namespace prodsys
