#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "internal.hpp"
#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/essnorm.hpp"
#include "orlicz_lab/orlicz.hpp"
#include "orlicz_lab/wct.hpp"

namespace orlicz_lab::app {

namespace detail {

double param_number(const json& params, const std::string& key, double fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_number()) throw ConfigError("/params/" + key, "expected a number");
  return v.get<double>();
}

std::size_t param_count(const json& params, const std::string& key, std::size_t fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ConfigError("/params/" + key, "expected a positive integer");
  }
  return v.get<std::size_t>();
}

std::string param_string(const json& params, const std::string& key, const std::string& fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_string()) throw ConfigError("/params/" + key, "expected a string");
  return v.get<std::string>();
}

bool param_bool(const json& params, const std::string& key, bool fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_boolean()) throw ConfigError("/params/" + key, "expected true or false");
  return v.get<bool>();
}

GchConstant resolve_gch(const Experiment& ex, const YoungFunction& phi) {
  const json& p = ex.params;
  if (p.contains("C") && p.at("C").is_number()) {
    return {p.at("C").get<double>(), param_string(p, "C_source", "user")};
  }
  const std::string mode = param_string(p, "C", "structural");
  if (mode == "structural") return {gch_structural_constant(ex.model().alg), "structural"};
  if (mode == "estimated") {
    const auto est = gch_constant(phi, ex.model().alg, param_count(p, "samples", 1000), ex.seed);
    return {est.constant, "estimated"};
  }
  throw ConfigError("/params/C", "expected a number, \"structural\" or \"estimated\"");
}

json criterion_json(const CriterionReport& r) {
  json j;
  j["criterion_id"] = to_string(r.criterion_id);
  j["quantity"] = number(r.quantity);
  j["verdict"] = to_string(r.verdict);
  j["bound"] = r.bound ? number(*r.bound) : json(nullptr);
  j["hypotheses"] = r.hypotheses;
  j["notes"] = r.notes;
  j["trace_length"] = r.per_atom_trace.size();
  return j;
}

}  // namespace detail

namespace {

using detail::param_bool;
using detail::param_count;
using detail::param_number;
using detail::param_string;
using detail::Table;

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

void write_csv(const std::filesystem::path& file, const Table& t) {
  std::ofstream out(file);
  if (!out) throw ConfigError(file.string(), "cannot write file");
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

Table trace_table(const std::string& name, const CriterionReport& r) {
  Table t{name, {"n", "term"}, {}};
  for (const auto& e : r.per_atom_trace) t.rows.push_back({static_cast<double>(e.n), e.term});
  return t;
}

std::vector<double> x_values(const json& params) {
  if (!params.contains("x")) return standard_grid();
  const json& x = params.at("x");
  if (x.is_number()) return {x.get<double>()};
  if (!x.is_array()) throw ConfigError("/params/x", "expected a number or an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_number()) throw ConfigError("/params/x/" + std::to_string(i), "expected a number");
    out.push_back(x[i].get<double>());
  }
  return out;
}

std::vector<double> grid_param(const json& params, const std::string& key) {
  if (!params.contains(key)) return standard_grid();
  const json& g = params.at(key);
  if (!g.is_object()) throw ConfigError("/params/" + key, "expected {lo, hi, n}");
  return log_grid(param_number(g, "lo", 1e-3), param_number(g, "hi", 1e3), param_count(g, "n", 64));
}

std::string default_fn(const Experiment& ex) {
  if (ex.has_fn("phi")) return "phi";
  if (ex.young.empty()) throw ConfigError("/young", "no Young function defined");
  return ex.young.front().first;
}

json cmd_young(const Experiment& ex) {
  const auto& p = ex.params;
  const std::string name = param_string(p, "function", default_fn(ex));
  const YoungFunction& phi = ex.fn(name);
  const std::string op = param_string(p, "op", "eval");
  json r;
  r["function"] = phi.describe();
  r["op"] = op;
  if (op == "eval" || op == "inverse" || op == "conjugate") {
    const auto xs = x_values(p);
    json pts = json::array();
    for (double x : xs) {
      const double v = op == "eval" ? eval(phi, x) : op == "inverse" ? inverse(phi, x) : conjugate_eval(phi, x);
      pts.push_back({{"x", x}, {"value", number(v)}});
    }
    if (xs.size() == 1) r["value"] = pts[0]["value"];
    r["points"] = std::move(pts);
  } else if (op == "growth") {
    const auto cond = growth_condition_from_string(param_string(p, "condition", "delta2"));
    const auto grid = grid_param(p, "grid");
    const YoungFunction* other = nullptr;
    if (cond == GrowthCondition::precedes) other = &ex.fn(param_string(p, "other", "psi"));
    const auto g = check_growth(phi, cond, grid, other);
    r["condition"] = to_string(cond);
    r["holds_globally"] = g.holds_globally;
    r["holds_eventually"] = g.holds_eventually;
    r["witness_constant"] = number(g.witness_constant);
    r["threshold_x0"] = g.threshold_x0;
  } else if (op == "invariants") {
    const auto c = check_young_invariants(phi, grid_param(p, "grid"));
    r["is_young"] = c.is_young;
    r["first_violation"] = c.first_violation;
    r["superlinearity_inconclusive"] = c.superlinearity_inconclusive;
  } else {
    throw ConfigError("/params/op", "expected eval, inverse, conjugate, growth or invariants");
  }
  return r;
}

json cmd_norm(const Experiment& ex) {
  const YoungFunction& phi = ex.fn(param_string(ex.params, "function", default_fn(ex)));
  if (!ex.u) throw ConfigError("/weight", "missing required field");
  const auto n = lux_norm(phi, *ex.u);
  return {{"function", phi.describe()},
          {"lux_norm", number(n.value)},
          {"modular_at_norm", number(n.modular_at_value)},
          {"modular", number(modular(phi, *ex.u))},
          {"iterations", n.iterations}};
}

json cmd_condexp(const Experiment& ex, std::vector<Table>& tables) {
  const auto& m = ex.model();
  if (!ex.u) throw ConfigError("/weight", "missing required field");
  const MeasurableFn e = cond_exp(*ex.u, m.alg);
  const auto bv = block_values(e, m.alg);
  json blocks = json::array();
  for (std::size_t b = 0; b < bv.size(); ++b) {
    blocks.push_back({{"label", m.alg.blocks()[b].label}, {"re", bv[b].real()}, {"im", bv[b].imag()}});
  }
  Table t{"condexp.csv", {"cell", "mass", "u_re", "u_im", "E_re", "E_im"}, {}};
  for (std::size_t c = 0; c < e.size(); ++c) {
    t.rows.push_back({static_cast<double>(c), m.space->mass(c), (*ex.u)[c].real(), (*ex.u)[c].imag(),
                      e[c].real(), e[c].imag()});
  }
  tables.push_back(std::move(t));
  return {{"blocks", std::move(blocks)}, {"integral_re", integrate(e).real()}, {"integral_im", integrate(e).imag()}};
}

json cmd_opnorm(const Experiment& ex, std::vector<Table>& tables) {
  const auto& p = ex.params;
  const auto& m = ex.model();
  if (!ex.u) throw ConfigError("/weight", "missing required field");
  const std::string kind = param_string(p, "kind", "wct");
  if (kind != "wct" && kind != "mult") throw ConfigError("/params/kind", "expected wct or mult");
  const SearchStrategy strategy = search_strategy_from_string(param_string(p, "strategy", "all"));
  const std::size_t budget = param_count(p, "budget", 200);
  const OperatorSpec op(*ex.u, m.alg, ex.fn(param_string(p, "domain", "phi")),
                        ex.fn(param_string(p, "codomain", "psi")),
                        kind == "wct" ? OperatorKind::wct : OperatorKind::mult);
  const NormEstimate est = op_norm_lower(op, strategy, budget, ex.seed);
  Table t{"opnorm_witness.csv", {"cell", "re", "im"}, {}};
  for (std::size_t c = 0; c < est.witness.size(); ++c) {
    t.rows.push_back({static_cast<double>(c), est.witness[c].real(), est.witness[c].imag()});
  }
  tables.push_back(std::move(t));
  return {{"kind", kind},
          {"strategy", to_string(strategy)},
          {"budget", budget},
          {"lower_bound", number(est.lower_bound)},
          {"candidates_tried", est.candidates_tried},
          {"seed", est.seed}};
}

json cmd_criteria(const Experiment& ex, std::vector<Table>& tables, Verdict& verdict) {
  const auto& p = ex.params;
  const CriterionId id = criterion_id_from_string(param_string(p, "which", "thm23b"));
  const bool finite_measure = param_bool(p, "finite_measure", ex.finite_measure);
  std::optional<CriterionReport> rep;
  json extra = json::object();
  auto theta = [&]() -> std::optional<YoungFunction> {
    const std::string name = param_string(p, "theta", "theta");
    if (!ex.has_fn(name)) return std::nullopt;
    return ex.fn(name);
  };
  switch (id) {
    case CriterionId::thm22a_i:
    case CriterionId::thm22a_ii:
    case CriterionId::thm22b: {
      const auto gch = detail::resolve_gch(ex, ex.fn("psi"));
      if (!ex.u) throw ConfigError("/weight", "missing required field");
      auto all = thm22_check(*ex.u, ex.fn("phi"), ex.fn("psi"), ex.model().alg, finite_measure, gch);
      rep = id == CriterionId::thm22a_i ? all.a_i : id == CriterionId::thm22a_ii ? all.a_ii : all.b;
      extra["C"] = gch.value;
      extra["C_source"] = gch.source;
      break;
    }
    case CriterionId::thm23a: {
      const auto t = theta();
      if (!t) throw ConfigError("/young/theta", "thm23a needs a Theta function");
      rep = thm23_check(ex.fn("phi"), ex.fn("psi"), ex.source(), t);
      break;
    }
    case CriterionId::thm23b:
      rep = thm23_check(ex.fn("phi"), ex.fn("psi"), ex.source());
      break;
    case CriterionId::prop24:
      rep = prop24_check(ex.fn("phi"), ex.fn("psi"), ex.source(), theta());
      break;
    case CriterionId::rem26:
    case CriterionId::rem29: {
      const double pp = param_number(p, "p", 2.0);
      const double qq = param_number(p, "q", 3.0);
      if ((id == CriterionId::rem26) != (pp < qq)) {
        throw ConfigError("/params/which", id == CriterionId::rem26 ? "rem26 needs p < q" : "rem29 needs p > q");
      }
      rep = lp_lq_check(pp, qq, ex.source());
      extra["p"] = pp;
      extra["q"] = qq;
      break;
    }
    case CriterionId::thm28i:
    case CriterionId::thm28ii: {
      const auto t = theta();
      if (!t) throw ConfigError("/young/theta", "thm28 needs a Theta function");
      const auto gch = detail::resolve_gch(ex, ex.fn("phi"));
      const auto grid = grid_param(p, "grid");
      if (!ex.u) throw ConfigError("/weight", "missing required field");
      auto both = thm28_check(*ex.u, ex.fn("phi"), ex.fn("psi"), *t, ex.model().alg, gch, grid);
      rep = id == CriterionId::thm28i ? both.i : both.ii;
      extra["C"] = gch.value;
      extra["C_source"] = gch.source;
      break;
    }
  }
  verdict = rep->verdict;
  tables.push_back(trace_table("criteria_trace.csv", *rep));
  json j = detail::criterion_json(*rep);
  j.update(extra);
  return j;
}

json beta_json(const BetaResult& b) {
  return {{"beta", number(b.beta)}, {"source", to_string(b.source)}, {"tail", b.tail}};
}

json cmd_essnorm(const Experiment& ex, std::vector<Table>& tables) {
  const auto& p = ex.params;
  const YoungFunction& phi = ex.fn(param_string(p, "function", "phi"));
  double c = 1.0;
  std::string c_source = "user";
  if (p.contains("C") && !p.at("C").is_number()) {
    const auto g = detail::resolve_gch(ex, phi);
    c = g.value;
    c_source = g.source;
  } else {
    c = param_number(p, "C", 1.0);
    c_source = param_string(p, "C_source", "user");
  }
  SandwichHypotheses hyp;
  hyp.gch = param_bool(p, "gch", true);
  hyp.masses_vanish_or_no_convergent_subsequence = param_bool(p, "masses_vanish", true);
  const AtomSource src = ex.source();
  const Sandwich s = ess_norm_sandwich(src, phi, c, hyp);

  std::vector<std::size_t> ks;
  if (p.contains("ks")) {
    const json& k = p.at("ks");
    if (!k.is_array()) throw ConfigError("/params/ks", "expected an array of integers");
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (!k[i].is_number_integer() || k[i].get<long long>() < 0) {
        throw ConfigError("/params/ks/" + std::to_string(i), "expected a nonnegative integer");
      }
      ks.push_back(k[i].get<std::size_t>());
    }
  }
  TruncationOptions opt;
  opt.epsilon = param_number(p, "epsilon", opt.epsilon);
  opt.budget = param_count(p, "budget", opt.budget);
  opt.seed = ex.seed;
  json curve = json::array();
  Table t{"essnorm_curve.csv", {"k", "distance"}, {}};
  if (!ks.empty()) {
    for (const auto& pt : truncation_distance_curve(src, phi, ks, opt)) {
      curve.push_back({{"k", pt.k}, {"distance", number(pt.distance)}});
      t.rows.push_back({static_cast<double>(pt.k), pt.distance});
    }
  }
  tables.push_back(std::move(t));
  return {{"lower", number(s.lower)},
          {"upper", number(s.upper)},
          {"lower_beta", beta_json(s.lower_beta)},
          {"upper_beta", beta_json(s.upper_beta)},
          {"C", c},
          {"C_source", c_source},
          {"hypotheses",
           {{"gch", hyp.gch}, {"masses_vanish_or_no_convergent_subsequence", hyp.masses_vanish_or_no_convergent_subsequence}}},
          {"curve", std::move(curve)}};
}

json cmd_gch(const Experiment& ex) {
  const auto& p = ex.params;
  const YoungFunction& phi = ex.fn(param_string(p, "function", default_fn(ex)));
  std::optional<YoungFunction> second;
  if (p.contains("second")) second = ex.fn(param_string(p, "second", ""));
  const auto& alg = ex.model().alg;
  const auto est = gch_constant(phi, alg, param_count(p, "samples", 1000), ex.seed, second ? &*second : nullptr);
  json r = {{"estimate", number(est.constant)},
            {"pairs_tried", est.pairs_tried},
            {"structural_constant", gch_structural_constant(alg)},
            {"second", second ? second->describe() : "conjugate"}};
  if (p.contains("C")) {
    const double c = param_number(p, "C", 0.0);
    r["C"] = c;
    r["estimate_exceeds_C"] = est.constant > c + 1e-9;
  }
  return r;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

RunResult run(const json& config, const RunOptions& opt) {
  Experiment ex = parse_experiment(config);
  if (opt.seed) ex.seed = *opt.seed;

  std::vector<Table> tables;
  Verdict verdict = Verdict::satisfied;
  json result;
  const std::string& cmd = ex.command;
  if (cmd == "young") {
    result = cmd_young(ex);
  } else if (cmd == "norm") {
    result = cmd_norm(ex);
  } else if (cmd == "condexp") {
    result = cmd_condexp(ex, tables);
  } else if (cmd == "opnorm") {
    result = cmd_opnorm(ex, tables);
  } else if (cmd == "criteria") {
    result = cmd_criteria(ex, tables, verdict);
  } else if (cmd == "essnorm") {
    result = cmd_essnorm(ex, tables);
  } else if (cmd == "gch") {
    result = cmd_gch(ex);
  } else if (cmd == "verify-all") {
    bool passed = true;
    result = detail::verify_all(ex, passed);
    if (!passed) verdict = Verdict::violated;
  } else {
    throw ConfigError("/command", "unknown command '" + cmd + "'");
  }

  RunResult out;
  out.report = {{"schema_version", kSchemaVersion},
                {"command", cmd},
                {"seed", ex.seed},
                {"result", std::move(result)},
                {"metadata", {{"tool_version", kToolVersion}, {"created", timestamp()}}}};
  if (opt.strict && (verdict == Verdict::violated || verdict == Verdict::diverges)) out.exit_code = 2;

  if (opt.output_dir) {
    std::filesystem::create_directories(*opt.output_dir);
    json sidecars = json::array();
    for (const auto& t : tables) {
      const auto file = *opt.output_dir / t.name;
      write_csv(file, t);
      out.written.push_back(file);
      sidecars.push_back(t.name);
    }
    out.report["sidecars"] = std::move(sidecars);
    const auto file = *opt.output_dir / (cmd + ".json");
    std::ofstream os(file);
    if (!os) throw ConfigError(file.string(), "cannot write file");
    os << out.report.dump(2) << '\n';
    out.written.insert(out.written.begin(), file);
  }
  return out;
}

}  // namespace orlicz_lab::app
