#include <cmath>

#include "../rng.hpp"
#include "internal.hpp"
#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/orlicz.hpp"
#include "orlicz_lab/wct.hpp"

namespace orlicz_lab::app::detail {

namespace {

struct Suite {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  json detail = json::object();

  void check(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
  json to_json() const {
    return {{"name", name}, {"passed", failures == 0}, {"checks", checks}, {"failures", failures}, {"detail", detail}};
  }
};

MeasurableFn random_fn(orlicz_lab::detail::Rng& rng, const SpacePtr& space, bool nonnegative = false) {
  std::vector<Complex> v(space->size());
  for (auto& z : v) {
    if (rng.coin(0.2)) continue;
    const double mag = std::exp(rng.uniform(-2.0, 2.0));
    z = nonnegative ? Complex(mag) : Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * mag;
  }
  return MeasurableFn(space, std::move(v));
}

bool close(Complex a, Complex b, double scale) { return std::abs(a - b) <= 1e-12 * std::max(1.0, scale); }

Suite young_suite(const Experiment& ex) {
  Suite s{"young"};
  const auto as = log_grid(1e-2, 1e2, 16);
  for (const auto& [name, phi] : ex.young) {
    const auto inv = check_young_invariants(phi, standard_grid());
    s.check(inv.is_young);
    if (!inv.is_young) s.detail[name + "_invariants"] = inv.first_violation;
    const YoungFunction star = conjugate(phi);
    std::size_t bad = 0;
    for (double a : as) {
      const double prod = inverse(phi, a) * inverse(star, a);
      const bool ok = prod > a * (1.0 - 1e-9) && prod <= 2.0 * a + 1e-8;
      s.check(ok);
      if (!ok) ++bad;
    }
    if (bad) s.detail[name + "_inverse_product_failures"] = bad;
  }
  return s;
}

Suite condexp_suite(const Experiment& ex, std::size_t samples) {
  Suite s{"condexp"};
  const auto& m = ex.model();
  const YoungFunction& phi = ex.fn("phi");
  orlicz_lab::detail::Rng rng(ex.seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const MeasurableFn f = random_fn(rng, m.space);
    const MeasurableFn e = cond_exp(f, m.alg);
    const double scale = f.sup_abs();
    for (const Block& b : m.alg.blocks()) {
      s.check(close(integrate(e, b.cells), integrate(f, b.cells), scale));  // averaging
    }
    const MeasurableFn g = cond_exp(random_fn(rng, m.space), m.alg);
    const MeasurableFn lhs = cond_exp(g * f, m.alg);
    const MeasurableFn rhs = g * e;
    bool pull = true;
    for (std::size_t c = 0; c < f.size(); ++c) pull = pull && close(lhs[c], rhs[c], scale * g.sup_abs());
    s.check(pull);
    const MeasurableFn ee = cond_exp(e, m.alg);
    s.check(ee.values() == e.values());  // idempotence
    const MeasurableFn ephi = cond_exp(f.map_real([&](double a) { return eval(phi, a); }), m.alg);
    bool jensen = true;
    for (std::size_t c = 0; c < f.size(); ++c) {
      jensen = jensen && eval(phi, std::abs(e[c])) <= ephi[c].real() * (1.0 + 1e-12) + 1e-300;
    }
    s.check(jensen);
    const MeasurableFn pos = cond_exp(f.abs(), m.alg);
    bool positive = true;
    bool support = true;
    for (std::size_t bi = 0; bi < m.alg.blocks().size(); ++bi) {
      const Block& b = m.alg.blocks()[bi];
      bool any = false;
      for (std::size_t c : b.cells) any = any || f[c] != Complex(0.0);
      for (std::size_t c : b.cells) {
        positive = positive && pos[c].real() >= 0.0 && pos[c].imag() == 0.0;
        support = support && ((pos[c].real() > 0.0) == any);
      }
    }
    s.check(positive);
    s.check(support);
    s.check(lux_norm(phi, e).value <= lux_norm(phi, f).value * (1.0 + 1e-10));  // contraction
  }
  return s;
}

Suite adjoint_suite(const Experiment& ex, std::size_t samples) {
  Suite s{"adjoint"};
  const auto& m = ex.model();
  const OperatorSpec op(*ex.u, m.alg, ex.fn("phi"), ex.fn("psi"));
  orlicz_lab::detail::Rng rng(ex.seed + 1);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const MeasurableFn f = random_fn(rng, m.space);
    const MeasurableFn g = cond_exp(random_fn(rng, m.space), m.alg);
    const double scale = integrate((op.weight * f).abs() * g.abs()).real() + 1.0;
    const double d = std::abs(adjoint_defect(op, f, g)) / scale;
    worst = std::max(worst, d);
    s.check(d <= 1e-10);
  }
  s.detail["worst_relative_defect"] = worst;
  return s;
}

Suite gch_suite(const Experiment& ex, std::size_t samples, const GchConstant& c) {
  Suite s{"gch"};
  const auto& m = ex.model();
  const YoungFunction& phi = ex.fn("phi");
  const std::string second = param_string(ex.params, "gch_second", "");
  const YoungFunction* psi = second.empty() ? nullptr : &ex.fn(second);
  orlicz_lab::detail::Rng rng(ex.seed + 2);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const MeasurableFn f = random_fn(rng, m.space);
    const MeasurableFn g = random_fn(rng, m.space);
    const double r = gch_ratio(phi, m.alg, f, g, psi);
    worst = std::max(worst, r);
    s.check(r <= c.value * (1.0 + 1e-9));
  }
  s.detail["C"] = c.value;
  s.detail["C_source"] = c.source;
  s.detail["worst_ratio"] = worst;
  return s;
}

Suite sandwich_suite(const std::string& name, const Experiment& ex, const CriterionReport& r, std::size_t budget) {
  Suite s{name};
  s.detail["criterion"] = criterion_json(r);
  if (!r.bound) {
    s.check(false);
    s.detail["reason"] = "criterion emitted no bound";
    return s;
  }
  const auto& m = ex.model();
  const OperatorSpec op(*ex.u, m.alg, ex.fn("phi"), ex.fn("psi"));
  const auto est = op_norm_lower(op, SearchStrategy::all, budget, ex.seed);
  s.detail["lower_bound"] = number(est.lower_bound);
  s.detail["bound"] = number(*r.bound);
  s.check(est.lower_bound <= *r.bound * (1.0 + 1e-6));
  return s;
}

}  // namespace

json verify_all(const Experiment& ex, bool& passed) {
  if (!ex.u) throw ConfigError("/weight", "missing required field");
  const auto& m = ex.model();
  const std::size_t samples = param_count(ex.params, "samples", 200);
  const std::size_t budget = param_count(ex.params, "budget", 40);

  std::vector<Suite> suites;
  suites.push_back(young_suite(ex));
  suites.push_back(condexp_suite(ex, samples));
  suites.push_back(adjoint_suite(ex, samples));
  const GchConstant c = resolve_gch(ex, ex.fn("phi"));
  suites.push_back(gch_suite(ex, samples, c));

  if (ex.has_fn("theta")) {
    std::vector<double> grid = standard_grid();
    if (ex.params.contains("grid")) {
      const json& g = ex.params.at("grid");
      grid = log_grid(param_number(g, "lo", 1e-3), param_number(g, "hi", 1e3), param_count(g, "n", 64));
    }
    const auto t28 = thm28_check(*ex.u, ex.fn("phi"), ex.fn("psi"), ex.fn("theta"), m.alg, c, grid);
    suites.push_back(sandwich_suite("thm28i_sandwich", ex, t28.i, budget));
  }
  const auto order = check_growth(ex.fn("phi"), GrowthCondition::precedes, standard_grid(), &ex.fn("psi"));
  if (order.holds_eventually) {
    const auto t22 = thm22_check(*ex.u, ex.fn("phi"), ex.fn("psi"), m.alg, ex.finite_measure, c);
    suites.push_back(sandwich_suite("thm22b_sandwich", ex, t22.b, budget));
  }

  json out = json::array();
  passed = true;
  for (const auto& s : suites) {
    passed = passed && s.failures == 0;
    out.push_back(s.to_json());
  }
  return {{"passed", passed}, {"suites", std::move(out)}};
}

}  // namespace orlicz_lab::app::detail
