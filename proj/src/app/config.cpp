#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "orlicz_lab/app.hpp"
#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/expr.hpp"

namespace orlicz_lab::app {

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + "/" + key, "missing required field");
  return obj.at(key);
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) throw ConfigError(path + "/" + key, "expected a number");
  return v.get<double>();
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ConfigError(path + "/" + key, "expected a positive integer");
  }
  return v.get<std::size_t>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw ConfigError(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

Expr parse_expr(const json& v, const std::string& path) {
  if (v.is_number()) return Expr::parse(v.dump());
  if (!v.is_string()) throw ConfigError(path, "expected an expression string");
  try {
    return Expr::parse(v.get<std::string>());
  } catch (const ArgumentError& e) {
    throw ConfigError(path, e.what());
  }
}

YoungFunction parse_young_impl(const json& spec, const json& named, const std::string& path,
                               std::set<std::string>& resolving) {
  if (spec.is_string()) {
    const auto name = spec.get<std::string>();
    if (!named.is_object() || !named.contains(name)) {
      throw ConfigError(path, "unknown Young function reference '" + name + "'");
    }
    if (!resolving.insert(name).second) throw ConfigError(path, "cyclic reference to '" + name + "'");
    auto f = parse_young_impl(named.at(name), named, "/young/" + name, resolving);
    resolving.erase(name);
    return f;
  }
  if (!spec.is_object()) throw ConfigError(path, "expected a Young function spec");
  Family family;
  try {
    family = family_from_string(get_string(spec, "family", path));
  } catch (const ArgumentError& e) {
    throw ConfigError(path + "/family", e.what());
  }
  try {
    switch (family) {
      case Family::power: return YoungFunction::power(get_number(spec, "p", path));
      case Family::power_scaled: return YoungFunction::power_scaled(get_number(spec, "p", path));
      case Family::exp_power: return YoungFunction::exp_power(get_number(spec, "p", path));
      case Family::entropy: return YoungFunction::entropy(get_number(spec, "p", path));
      case Family::log_quotient: return YoungFunction::log_quotient();
      case Family::exp_quartic: return YoungFunction::exp_quartic();
      case Family::tabulated: {
        const json& t = require(spec, "table", path);
        if (!t.is_array()) throw ConfigError(path + "/table", "expected an array of [x, y] pairs");
        std::vector<std::pair<double, double>> table;
        for (std::size_t i = 0; i < t.size(); ++i) {
          const json& row = t[i];
          if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
            throw ConfigError(path + "/table/" + std::to_string(i), "expected [x, y]");
          }
          table.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        return YoungFunction::tabulated(std::move(table));
      }
      case Family::conjugate_of:
        return YoungFunction::conjugate_of(parse_young_impl(require(spec, "of", path), named, path + "/of", resolving));
      case Family::compose_of: {
        const auto outer = parse_young_impl(require(spec, "outer", path), named, path + "/outer", resolving);
        const auto inner = parse_young_impl(require(spec, "inner", path), named, path + "/inner", resolving);
        const bool invert = spec.value("invert_inner", false);
        return YoungFunction::compose_of(outer, inner, invert);
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "unsupported family");
}

std::vector<Cell> parse_cells(const json& arr, const std::string& path) {
  if (!arr.is_array() || arr.empty()) throw ConfigError(path, "expected a non-empty array of cells");
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    Cell c;
    c.id = get_string(arr[i], "id", p);
    c.mass = get_number(arr[i], "mass", p);
    const std::string kind = arr[i].value("kind", "fragment");
    if (kind == "sigma_atom" || kind == "sigma-atom") {
      c.kind = CellKind::sigma_atom;
    } else if (kind != "fragment") {
      throw ConfigError(p + "/kind", "expected sigma_atom or fragment");
    }
    if (arr[i].contains("position")) c.position = get_number(arr[i], "position", p);
    cells.push_back(std::move(c));
  }
  return cells;
}

SpaceModel parse_explicit_space(const json& s, const std::string& path) {
  // Either "cells" with a kind per cell, or separate "atoms" and "fragments".
  std::vector<Cell> cells;
  std::string where = path + "/cells";
  if (s.contains("cells")) {
    cells = parse_cells(s.at("cells"), where);
  } else {
    if (!s.contains("atoms") && !s.contains("fragments")) throw ConfigError(where, "missing required field");
    for (const char* key : {"atoms", "fragments"}) {
      if (!s.contains(key)) continue;
      auto part = parse_cells(s.at(key), path + "/" + key);
      for (auto& c : part) c.kind = std::string(key) == "atoms" ? CellKind::sigma_atom : CellKind::fragment;
      cells.insert(cells.end(), part.begin(), part.end());
    }
    where = path;
  }
  SpacePtr space;
  try {
    space = std::make_shared<const MeasureSpace>(std::move(cells));
  } catch (const ArgumentError& e) {
    throw ConfigError(where, e.what());
  }
  if (!s.contains("blocks")) return {space, SubAlgebra::full(space)};
  const json& arr = s.at("blocks");
  if (!arr.is_array()) throw ConfigError(path + "/blocks", "expected an array");
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "/blocks/" + std::to_string(i);
    Block b;
    b.label = arr[i].value("label", "B" + std::to_string(i + 1));
    const std::string kind = arr[i].value("kind", "carrier");
    if (kind == "a_atom" || kind == "a-atom") {
      b.kind = BlockKind::a_atom;
    } else if (kind != "carrier") {
      throw ConfigError(p + "/kind", "expected a_atom or carrier");
    }
    const json& ids = require(arr[i], "cells", p);
    if (!ids.is_array()) throw ConfigError(p + "/cells", "expected an array of cell ids");
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (!ids[j].is_string()) throw ConfigError(p + "/cells/" + std::to_string(j), "expected a cell id");
      try {
        b.cells.push_back(space->index_of(ids[j].get<std::string>()));
      } catch (const std::exception& e) {
        throw ConfigError(p + "/cells/" + std::to_string(j), e.what());
      }
    }
    blocks.push_back(std::move(b));
  }
  try {
    return {space, SubAlgebra(space, std::move(blocks))};
  } catch (const ArgumentError& e) {
    throw ConfigError(path + "/blocks", e.what());
  }
}

}  // namespace

json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(file.string(), e.what());
  }
}

YoungFunction parse_young(const json& spec, const json& named, const std::string& path) {
  std::set<std::string> resolving;
  return parse_young_impl(spec, named, path, resolving);
}

json young_spec_from_text(const std::string& text) {
  const auto colon = text.find(':');
  json spec;
  spec["family"] = text.substr(0, colon);
  if (colon != std::string::npos) {
    const std::string arg = text.substr(colon + 1);
    std::istringstream is(arg);
    double p = 0.0;
    if (!(is >> p) || !is.eof()) throw ConfigError("--young", "bad exponent in '" + text + "'");
    spec["p"] = p;
  }
  return spec;
}

const YoungFunction& Experiment::fn(const std::string& name) const {
  for (const auto& [n, f] : young) {
    if (n == name) return f;
  }
  throw ConfigError("/young/" + name, "missing required Young function");
}

bool Experiment::has_fn(const std::string& name) const {
  for (const auto& kv : young) {
    if (kv.first == name) return true;
  }
  return false;
}

AtomSource Experiment::source() const {
  if (symbolic) return *symbolic;
  if (!u) throw ConfigError("/weight", "missing required field");
  return FiniteWeight{*u, finite->alg};
}

const SpaceModel& Experiment::model() const {
  if (!finite) throw ConfigError("/space", "this command needs a finite space");
  return *finite;
}

Experiment parse_experiment(const json& config) {
  if (!config.is_object()) throw ConfigError("", "config must be a JSON object");
  Experiment ex;
  ex.raw = config;
  if (config.contains("schema_version") && config.at("schema_version") != kSchemaVersion) {
    throw ConfigError("/schema_version", std::string("expected \"") + kSchemaVersion + "\"");
  }
  ex.command = get_string(config, "command", "");
  static const std::vector<std::string> known = {"young",    "norm",    "condexp", "opnorm",
                                                 "criteria", "essnorm", "gch",     "verify-all"};
  if (std::find(known.begin(), known.end(), ex.command) == known.end()) {
    throw ConfigError("/command", "unknown command '" + ex.command + "'");
  }
  if (config.contains("seed")) {
    const json& s = config.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("/seed", "expected a nonnegative integer");
    }
    ex.seed = s.get<std::uint64_t>();
  }
  if (config.contains("params")) {
    if (!config.at("params").is_object()) throw ConfigError("/params", "expected an object");
    ex.params = config.at("params");
  }

  const json named = config.value("young", json::object());
  if (!named.is_object()) throw ConfigError("/young", "expected an object of named specs");
  for (const auto& [name, spec] : named.items()) {
    ex.young.emplace_back(name, parse_young(spec, named, "/young/" + name));
  }

  if (!config.contains("space")) {
    if (ex.command == "young" || ex.command == "gch") return ex;
    throw ConfigError("/space", "missing required field");
  }
  const json& s = config.at("space");
  const std::string builder = s.value("builder", "explicit");
  try {
    if (builder == "symmetric") {
      ex.finite = build_symmetric_space(s.contains("n_cells") ? get_count(s, "n_cells", "/space") : 100);
    } else if (builder == "rotation") {
      ex.finite = build_rotation_space(get_count(s, "n", "/space"), get_count(s, "cells_per_interval", "/space"));
    } else if (builder == "atomic") {
      const json& m = require(s, "masses", "/space");
      if (!m.is_array()) throw ConfigError("/space/masses", "expected an array");
      std::vector<double> masses;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i].is_number()) throw ConfigError("/space/masses/" + std::to_string(i), "expected a number");
        masses.push_back(m[i].get<double>());
      }
      ex.finite = build_atomic_space(masses);
    } else if (builder == "symbolic") {
      const Expr mass = parse_expr(require(s, "mass", "/space"), "/space/mass");
      const std::size_t depth = s.contains("n_max") ? get_count(s, "n_max", "/space") : default_symbolic_depth();
      const json& w = require(config, "weight", "");
      const Expr value = parse_expr(w.is_object() ? require(w, "expr", "/weight") : w, "/weight/expr");
      ex.symbolic.emplace(mass, value, depth);
      ex.finite_measure = s.value("finite_measure", false);
      return ex;
    } else if (builder == "explicit") {
      ex.finite = parse_explicit_space(s, "/space");
    } else {
      throw ConfigError("/space/builder", "unknown builder '" + builder + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("/space", e.what());
  }
  ex.finite_measure = s.value("finite_measure", std::isfinite(ex.finite->space->total_mass()));

  if (!config.contains("weight")) return ex;
  const json& w = config.at("weight");
  const auto& space = ex.finite->space;
  if (w.is_number()) {
    ex.u = MeasurableFn::constant(space, w.get<double>());
  } else if (w.is_string()) {
    ex.u = MeasurableFn::from_expr(space, parse_expr(w, "/weight"));
  } else if (w.is_object() && w.contains("expr")) {
    ex.u = MeasurableFn::from_expr(space, parse_expr(w.at("expr"), "/weight/expr"));
  } else if (w.is_object() && (w.contains("values") || w.contains("re"))) {
    const std::string key = w.contains("values") ? "values" : "re";
    const json& re = w.at(key);
    const json im = w.value("im", json::array());
    if (!re.is_array() || re.size() != space->size()) {
      throw ConfigError("/weight/" + key, "expected " + std::to_string(space->size()) + " numbers");
    }
    if (!im.is_array() || (!im.empty() && im.size() != space->size())) {
      throw ConfigError("/weight/im", "expected " + std::to_string(space->size()) + " numbers");
    }
    std::vector<Complex> v(space->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!re[i].is_number()) throw ConfigError("/weight/" + key + "/" + std::to_string(i), "expected a number");
      const double b = im.empty() ? 0.0 : im[i].get<double>();
      v[i] = Complex(re[i].get<double>(), b);
    }
    ex.u = MeasurableFn(space, std::move(v));
  } else {
    throw ConfigError("/weight", "expected a number, an expression or {values: [...]}");
  }
  return ex;
}

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

CompareResult compare_reports(const json& a, const json& b) {
  json x = a;
  json y = b;
  if (x.is_object()) x.erase("metadata");
  if (y.is_object()) y.erase("metadata");
  const json patch = json::diff(x, y);
  if (patch.empty()) return {};
  return {false, patch.front().value("path", std::string("/"))};
}

}  // namespace orlicz_lab::app
