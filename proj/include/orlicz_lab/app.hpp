#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz_lab/criteria.hpp"
#include "orlicz_lab/space.hpp"
#include "orlicz_lab/young.hpp"

namespace orlicz_lab::app {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

// ---- config -------------------------------------------------------------

json load_json(const std::filesystem::path& file);

/// Parses a Young function spec. `named` holds sibling specs that string
/// references (e.g. {"family": "conjugate_of", "of": "phi"}) resolve to.
YoungFunction parse_young(const json& spec, const json& named, const std::string& path);

/// "power_scaled:2", "exp_quartic", "entropy:1.5" -> JSON spec.
json young_spec_from_text(const std::string& text);

/// A resolved experiment: named Young functions, the space and the weight.
struct Experiment {
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::pair<std::string, YoungFunction>> young;
  std::optional<SpaceModel> finite;
  std::optional<SymbolicAtomSequence> symbolic;  // carries the weight as value_fn
  std::optional<MeasurableFn> u;                 // finite weight
  bool finite_measure = true;
  json params = json::object();
  json raw;

  const YoungFunction& fn(const std::string& name) const;
  bool has_fn(const std::string& name) const;
  AtomSource source() const;
  const SpaceModel& model() const;  // throws ConfigError for symbolic spaces
};

/// Validates and resolves a config. Errors name the offending JSON path.
Experiment parse_experiment(const json& config);

// ---- run ----------------------------------------------------------------

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  bool strict = false;
  std::optional<std::filesystem::path> output_dir;  // no files written when empty
};

struct RunResult {
  int exit_code = 0;
  json report;
  std::vector<std::filesystem::path> written;
};

/// Executes the configured command. Exit 0 on success, 2 for a violated or
/// diverging verdict under `strict`; errors propagate as exceptions.
RunResult run(const json& config, const RunOptions& opt);

// ---- fixtures -----------------------------------------------------------

std::vector<std::string> fixture_names();
json fixture(const std::string& name);
std::filesystem::path emit_fixture(const std::string& name, const std::filesystem::path& dir);

// ---- compare ------------------------------------------------------------

struct CompareResult {
  bool identical = true;
  std::string first_difference;  // JSON pointer of the first mismatch
};

/// Structural comparison ignoring the top-level "metadata" field.
CompareResult compare_reports(const json& a, const json& b);

/// JSON value for a double; non-finite values become "inf", "-inf" or "nan".
json number(double x);

}  // namespace orlicz_lab::app
