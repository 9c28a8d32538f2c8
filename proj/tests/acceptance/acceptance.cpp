// Acceptance checks, one line per criterion. `acceptance N` runs only N.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz_lab/app.hpp"
#include "orlicz_lab/criteria.hpp"
#include "orlicz_lab/essnorm.hpp"
#include "orlicz_lab/orlicz.hpp"
#include "orlicz_lab/space.hpp"
#include "orlicz_lab/wct.hpp"
#include "orlicz_lab/young.hpp"

using namespace orlicz_lab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::vector<YoungFunction> builtins() {
  return {YoungFunction::power(3.0),     YoungFunction::power_scaled(2.0), YoungFunction::exp_power(2.0),
          YoungFunction::entropy(2.0),   YoungFunction::log_quotient(),    YoungFunction::exp_quartic()};
}

MeasurableFn random_fn(std::mt19937_64& g, const SpacePtr& space, bool complex_values = true) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Complex> v(space->size());
  for (auto& z : v) {
    if (u01(g) < 0.2) continue;
    const double mag = std::exp(-2.0 + 4.0 * u01(g));
    const double arg = complex_values ? 2.0 * M_PI * u01(g) : (u01(g) < 0.5 ? 0.0 : M_PI);
    z = std::polar(mag, arg);
  }
  return MeasurableFn(space, std::move(v));
}

// 1. conjugate(power_scaled p) against y^{p'}/p'.
Outcome c1() {
  double worst = 0.0;
  for (double p : {1.5, 2.0, 3.0, 10.0}) {
    const double q = p / (p - 1.0);
    const YoungFunction star = conjugate(YoungFunction::power_scaled(p));
    for (double y : standard_grid()) worst = std::max(worst, rel_err(eval(star, y), std::pow(y, q) / q));
  }
  return {worst <= 1e-6, "max rel err " + fmt(worst)};
}

// 2. Phi** = Phi on the standard grid for the six built-in families.
Outcome c2() {
  double worst = 0.0;
  std::size_t compared = 0;
  std::size_t overflow = 0;
  std::size_t bad_overflow = 0;
  for (const auto& phi : builtins()) {
    const YoungFunction bi = conjugate(conjugate(phi));
    for (double x : standard_grid()) {
      const double want = eval(phi, x);
      if (!std::isfinite(want)) {
        // Phi overflows here; the biconjugate has to overflow too.
        ++overflow;
        if (!(eval(bi, x) >= std::numeric_limits<double>::max())) ++bad_overflow;
        continue;
      }
      worst = std::max(worst, rel_err(eval(bi, x), want));
      ++compared;
    }
  }
  return {worst <= 1e-6 && bad_overflow == 0,
          "max rel err " + fmt(worst) + " over " + std::to_string(compared) + " finite points, " +
              std::to_string(bad_overflow) + "/" + std::to_string(overflow) + " overflow points mismatched"};
}

// 3. a < Phi^{-1}(a) Phi*^{-1}(a) <= 2a + 1e-8.
Outcome c3() {
  std::size_t bad = 0;
  double worst_hi = 0.0;
  double worst_lo = std::numeric_limits<double>::infinity();
  for (const auto& phi : builtins()) {
    const YoungFunction star = conjugate(phi);
    for (double a : log_grid(1e-3, 1e3, 64)) {
      const double prod = inverse(phi, a) * inverse(star, a);
      worst_hi = std::max(worst_hi, prod / a);
      worst_lo = std::min(worst_lo, prod / a);
      if (!(prod > a && prod <= 2.0 * a + 1e-8)) ++bad;
    }
  }
  return {bad == 0, "ratio range [" + fmt(worst_lo) + ", " + fmt(worst_hi) + "], " + std::to_string(bad) + " violations"};
}

// 4. Luxemburg norm of power_scaled p against p^{-1/p} ||f||_p.
Outcome c4() {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> masses(64);
  for (auto& m : masses) m = std::exp(-3.0 + 3.0 * u01(g));
  const SpaceModel model = build_atomic_space(masses);
  const std::vector<double> ps = {1.5, 2.0, 3.0, 10.0};
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double p = ps[static_cast<std::size_t>(k) % ps.size()];
    const MeasurableFn f = random_fn(g, model.space);
    double s = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) s += std::pow(std::abs(f[c]), p) * masses[c];
    const double want = std::pow(p, -1.0 / p) * std::pow(s, 1.0 / p);
    worst = std::max(worst, rel_err(lux_norm(YoungFunction::power_scaled(p), f).value, want));
  }
  return {worst <= 1e-8, "max rel err " + fmt(worst)};
}

// 5. Conditional expectation properties on the two example spaces.
Outcome c5() {
  std::mt19937_64 g(5);
  const YoungFunction phi = YoungFunction::power_scaled(2.0);
  std::size_t failures = 0;
  std::size_t checks = 0;
  auto check = [&](bool ok) {
    ++checks;
    if (!ok) ++failures;
  };
  for (const SpaceModel& m : {build_symmetric_space(100), build_rotation_space(4, 25)}) {
    for (int k = 0; k < 500; ++k) {
      const MeasurableFn f = random_fn(g, m.space);
      const MeasurableFn e = cond_exp(f, m.alg);
      const double scale = std::max(1.0, f.sup_abs());
      for (const Block& b : m.alg.blocks()) {
        check(std::abs(integrate(f, b.cells) - integrate(e, b.cells)) <= 1e-12 * scale);
      }
      const MeasurableFn h = cond_exp(random_fn(g, m.space), m.alg);
      const MeasurableFn lhs = cond_exp(f * h, m.alg);
      bool pull = true;
      for (std::size_t c = 0; c < f.size(); ++c) {
        pull = pull && std::abs(lhs[c] - e[c] * h[c]) <= 1e-12 * scale * std::max(1.0, h.sup_abs());
      }
      check(pull);
      const MeasurableFn ephi = cond_exp(f.map_real([&](double a) { return eval(phi, a); }), m.alg);
      bool jensen = true;
      for (std::size_t c = 0; c < f.size(); ++c) {
        jensen = jensen && eval(phi, std::abs(e[c])) <= ephi[c].real() + 1e-12 * std::max(1.0, ephi[c].real());
      }
      check(jensen);
      const MeasurableFn a = f.abs();
      const MeasurableFn ea = cond_exp(a, m.alg);
      bool positive = true;
      bool support = true;
      for (std::size_t c = 0; c < f.size(); ++c) {
        positive = positive && ea[c].real() >= 0.0;
        if (a[c].real() > 0.0) support = support && ea[c].real() > 0.0;
      }
      check(positive);
      check(support);
      check(cond_exp(e, m.alg).values() == e.values());
      check(lux_norm(phi, e).value <= lux_norm(phi, f).value * (1.0 + 1e-10));
    }
  }
  return {failures == 0, std::to_string(checks) + " checks, " + std::to_string(failures) + " failures"};
}

// 6. GCH with C = 4 on Example 2.10.
Outcome c6() {
  const SpaceModel m = build_symmetric_space(100);
  const YoungFunction phi = YoungFunction::exp_power(2.0);
  const YoungFunction psi = YoungFunction::power_scaled(2.0);
  std::mt19937_64 g(6);
  std::size_t violations = 0;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double r = gch_ratio(phi, m.alg, random_fn(g, m.space), random_fn(g, m.space), &psi);
    worst = std::max(worst, r);
    if (r > 4.0) ++violations;
  }
  const double est = gch_constant(phi, m.alg, 1000, kDefaultSeed, &psi).constant;
  return {violations == 0 && est <= 4.0 + 1e-9,
          "worst random ratio " + fmt(worst) + ", estimate " + fmt(est) + ", " + std::to_string(violations) +
              " violations"};
}

// 7. Sandwich soundness on random atomic configurations.
struct RandomConfig {
  SpaceModel model;
  MeasurableFn u;
};

RandomConfig random_config(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::size_t n = 2 + static_cast<std::size_t>(u01(g) * 11.0);
  std::vector<double> masses(n);
  for (auto& m : masses) m = std::exp(std::log(0.01) * u01(g));
  const SpaceModel atoms = build_atomic_space(masses);
  std::vector<Block> blocks;
  for (std::size_t c = 0; c < n;) {
    const std::size_t len = std::min<std::size_t>(n - c, 1 + static_cast<std::size_t>(u01(g) * 3.0));
    Block b;
    b.label = "A" + std::to_string(blocks.size() + 1);
    b.kind = BlockKind::a_atom;
    for (std::size_t i = 0; i < len; ++i) b.cells.push_back(c + i);
    blocks.push_back(std::move(b));
    c += len;
  }
  SpaceModel model{atoms.space, SubAlgebra(atoms.space, std::move(blocks))};
  MeasurableFn u = random_fn(g, model.space);
  return {std::move(model), std::move(u)};
}

Outcome c7() {
  constexpr int kConfigs = 50;
  constexpr std::size_t kBudget = 40;
  std::mt19937_64 g(77);
  const std::vector<std::pair<YoungFunction, YoungFunction>> t22 = {
      {YoungFunction::power(3.0), YoungFunction::power_scaled(2.0)},
      {YoungFunction::exp_power(2.0), YoungFunction::power_scaled(2.0)},
      {YoungFunction::power_scaled(3.0), YoungFunction::power_scaled(2.0)},
  };
  // Psi(xy) <= Phi(x) + Theta(y) for power_scaled with 1/r = 1/p + 1/s.
  const std::vector<std::array<double, 3>> t28 = {{3, 6, 2}, {4, 4, 2}, {6, 3, 2}, {6, 6, 3}};
  const std::vector<std::pair<YoungFunction, YoungFunction>> p24 = {
      {YoungFunction::power_scaled(2.0), YoungFunction::power_scaled(3.0)},
      {YoungFunction::power_scaled(2.0), YoungFunction::power_scaled(4.0)},
  };
  struct Tally {
    std::size_t runs = 0, no_bound = 0, violations = 0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    double worst_ratio = 0.0;  // lower / bound over configs with a positive bound
  };
  Tally t[3];
  auto record = [&](Tally& tally, const MeasurableFn& u, const SubAlgebra& alg, const YoungFunction& phi,
                    const YoungFunction& psi, const CriterionReport& r, std::uint64_t seed) {
    ++tally.runs;
    if (!r.bound) {
      ++tally.no_bound;
      return;
    }
    const double lower = op_norm_lower(OperatorSpec(u, alg, phi, psi), SearchStrategy::all, kBudget, seed).lower_bound;
    tally.worst_excess = std::max(tally.worst_excess, lower - *r.bound);
    if (*r.bound > 0.0) tally.worst_ratio = std::max(tally.worst_ratio, lower / *r.bound);
    if (lower > *r.bound + 1e-6) ++tally.violations;
  };
  for (int k = 0; k < kConfigs; ++k) {
    const RandomConfig cfg = random_config(g);
    const GchConstant gch{gch_structural_constant(cfg.model.alg), "structural"};
    const auto seed = static_cast<std::uint64_t>(k);
    {
      const auto& [phi, psi] = t22[static_cast<std::size_t>(k) % t22.size()];
      const auto r = thm22_check(cfg.u, phi, psi, cfg.model.alg, true, gch);
      record(t[0], cfg.u, cfg.model.alg, phi, psi, r.b, seed);
    }
    {
      const auto& [p, s, rr] = t28[static_cast<std::size_t>(k) % t28.size()];
      const YoungFunction phi = YoungFunction::power_scaled(p);
      const YoungFunction psi = YoungFunction::power_scaled(rr);
      const auto r = thm28_check(cfg.u, phi, psi, YoungFunction::power_scaled(s), cfg.model.alg, gch, standard_grid());
      record(t[1], cfg.u, cfg.model.alg, phi, psi, r.i, seed);
    }
    {
      const auto& [phi, psi] = p24[static_cast<std::size_t>(k) % p24.size()];
      const auto r = prop24_check(phi, psi, FiniteWeight{cfg.u, cfg.model.alg});
      record(t[2], cfg.u, cfg.model.alg, phi, psi, r, seed);
    }
  }
  const char* names[3] = {"thm22b", "thm28i", "prop24"};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    pass = pass && t[i].violations == 0 && t[i].no_bound == 0;
    detail += std::string(i ? "; " : "") + names[i] + ": " + std::to_string(t[i].violations) + "/" +
              std::to_string(t[i].runs) + " violations, " + std::to_string(t[i].no_bound) +
              " without bound, max(lower - bound) " + fmt(t[i].worst_excess) + ", max lower/bound " +
              fmt(t[i].worst_ratio);
  }
  return {pass, detail};
}

// 8. L^2 -> L^3 on a_n = 2^{-n}: terms 2^{n/3} diverge, a_n^{5/3} stay bounded.
Outcome c8() {
  const Expr mass = Expr::parse("2^(-n)");
  const std::size_t depth = 200;
  const auto div = lp_lq_check(2.0, 3.0, SymbolicAtomSequence(mass, Expr::parse("1"), depth));
  const auto bdd = lp_lq_check(2.0, 3.0, SymbolicAtomSequence(mass, Expr::parse("2^(-n)"), depth));
  double worst = 0.0;
  for (const auto& e : div.per_atom_trace) {
    worst = std::max(worst, rel_err(e.term, std::pow(2.0, static_cast<double>(e.n) / 3.0)));
  }
  for (const auto& e : bdd.per_atom_trace) {
    worst = std::max(worst, rel_err(e.term, std::pow(2.0, -5.0 * static_cast<double>(e.n) / 3.0)));
  }
  const bool pass = div.verdict == Verdict::diverges && bdd.verdict == Verdict::satisfied &&
                    !div.per_atom_trace.empty() && !bdd.per_atom_trace.empty() && worst <= 1e-12;
  return {pass, "u=1: " + to_string(div.verdict) + ", u=a_n: " + to_string(bdd.verdict) +
                    ", max term rel err vs closed form " + fmt(worst)};
}

std::vector<std::size_t> curve_ks() { return {1, 2, 4, 8, 16, 32, 64}; }

double curve_at_64(const SymbolicAtomSequence& seq, const YoungFunction& phi) {
  const auto ks = curve_ks();
  const auto curve = truncation_distance_curve(seq, phi, ks);
  return curve.back().distance;
}

// 9. u(n) = 1 + 1/n on atoms with the full algebra: beta = 1, equal sandwich.
Outcome c9() {
  const SymbolicAtomSequence seq(Expr::parse("2^(-n)"), Expr::parse("1 + 1/n"), default_symbolic_depth());
  const YoungFunction phi = YoungFunction::power_scaled(2.0);
  const Sandwich s = ess_norm_sandwich(seq, phi, 1.0);
  const double d64 = curve_at_64(seq, phi);
  const bool pass = std::abs(s.lower - 1.0) <= 1e-12 && std::abs(s.upper - 1.0) <= 1e-12 &&
                    std::abs(d64 - 1.0) <= 0.05;
  return {pass, "beta lower " + fmt(s.lower) + " (|err| " + fmt(std::abs(s.lower - 1.0)) + "), upper " +
                    fmt(s.upper) + ", curve(64) " + fmt(d64)};
}

// 10. u(n) = 1/n: beta = 0 and the truncation curve falls below 0.05.
Outcome c10() {
  const SymbolicAtomSequence seq(Expr::parse("2^(-n)"), Expr::parse("1/n"), default_symbolic_depth());
  const YoungFunction phi = YoungFunction::power_scaled(2.0);
  const BetaResult b = beta(seq);
  const double d64 = curve_at_64(seq, phi);
  return {std::abs(b.beta) <= 1e-12 && d64 <= 0.05, "beta " + fmt(b.beta) + ", curve(64) " + fmt(d64)};
}

// 11. Non-atomic algebra: thm23b holds exactly for weights with E(Phi*(|u|)) <= 1e-12.
Outcome c11() {
  const SpaceModel m = build_symmetric_space(100);
  const YoungFunction phi = YoungFunction::power_scaled(2.0);
  const YoungFunction psi = YoungFunction::power_scaled(3.0);
  const YoungFunction star = conjugate(phi);
  std::vector<MeasurableFn> weights;
  for (double c : {0.0, 1e-9, 1e-7, 1e-3, 1.0, 1e3}) weights.push_back(MeasurableFn::constant(m.space, c));
  weights.push_back(MeasurableFn::from_expr(m.space, Expr::parse("w")));
  weights.push_back(MeasurableFn::from_expr(m.space, Expr::parse("1e-8 * w")));
  std::size_t mismatches = 0;
  std::string constant_verdict;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const MeasurableFn& u = weights[i];
    const MeasurableFn e = cond_exp(u.map_real([&](double a) { return eval(star, a); }), m.alg);
    const bool zero = e.sup_abs() <= 1e-12;
    const auto r = thm23_check(phi, psi, FiniteWeight{u, m.alg});
    if ((r.verdict == Verdict::satisfied) != zero) ++mismatches;
    if (i == 4) constant_verdict = to_string(r.verdict);
  }
  return {mismatches == 0 && constant_verdict == "violated",
          std::to_string(weights.size()) + " weights, " + std::to_string(mismatches) + " mismatches, u=1 " +
              constant_verdict};
}

// 12. verify-all twice with seed 7 gives identical reports.
Outcome c12() {
  namespace fs = std::filesystem;
  const app::json config = app::fixture("example-2-10");
  app::RunOptions opt;
  opt.seed = 7;
  const auto a = app::run(config, opt);
  const auto b = app::run(config, opt);
  const auto cmp = app::compare_reports(a.report, b.report);
  app::json ra = a.report;
  app::json rb = b.report;
  ra.erase("metadata");
  rb.erase("metadata");
  const bool bytes = ra.dump() == rb.dump();
  return {cmp.identical && bytes, std::string("compare ") + (cmp.identical ? "identical" : "differs at " + cmp.first_difference) +
                                      ", serialized " + (bytes ? "byte-identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double seconds;  // runtime limit, 0 for none
  };
  const std::vector<Criterion> criteria = {
      {"conjugate closed form", c1, 1},
      {"biconjugate identity", c2, 5},
      {"inverse product bounds", c3, 5},
      {"Luxemburg closed form", c4, 5},
      {"conditional expectation suite", c5, 10},
      {"GCH at C=4 on the symmetric space", c6, 10},
      {"sandwich soundness", c7, 60},
      {"L^p/L^q divergence detection", c8, 1},
      {"essential norm equality", c9, 60},
      {"compactness consistency", c10, 60},
      {"non-atomic algebra admits no nonzero bounded R_u", c11, 1},
      {"verify-all determinism", c12, 0},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].seconds > 0 && secs >= criteria[i].seconds) {
      o.pass = false;
      o.detail += "; over the " + fmt(criteria[i].seconds) + " s limit";
    }
    std::printf("[%s] %2d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
