#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "orlicz_lab/app.hpp"

namespace orlicz_lab::app::detail {

// Typed access to "params" with defaults; errors name /params/<key>.
double param_number(const json& params, const std::string& key, double fallback);
std::size_t param_count(const json& params, const std::string& key, std::size_t fallback);
std::string param_string(const json& params, const std::string& key, const std::string& fallback);
bool param_bool(const json& params, const std::string& key, bool fallback);

GchConstant resolve_gch(const Experiment& ex, const YoungFunction& phi);

json criterion_json(const CriterionReport& r);

/// Runs the invariant suites; sets `passed` to false when any suite fails.
json verify_all(const Experiment& ex, bool& passed);

struct Table {
  std::string name;  // file name of the CSV sidecar
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

}  // namespace orlicz_lab::app::detail
