#include <cmath>

#include <doctest.h>

#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/young.hpp"

using namespace orlicz_lab;

namespace {

std::vector<YoungFunction> builtins() {
  return {YoungFunction::power(3.0),   YoungFunction::power_scaled(2.0), YoungFunction::exp_power(2.0),
          YoungFunction::entropy(2.0), YoungFunction::log_quotient(),    YoungFunction::exp_quartic()};
}

}  // namespace

TEST_CASE("closed forms") {
  CHECK(eval(YoungFunction::power_scaled(2.0), 0.0) == 0.0);
  CHECK(eval(YoungFunction::power_scaled(2.0), 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eval(YoungFunction::exp_power(1.0), 1.0) == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-12));
  CHECK(eval(YoungFunction::power(3.0), 2.0) == doctest::Approx(8.0));
  const double x = 0.7;
  CHECK(eval(YoungFunction::entropy(2.0), x) ==
        doctest::Approx((1 + x * x) * std::log(1 + x * x) - x * x).epsilon(1e-12));
  CHECK(eval(YoungFunction::exp_quartic(), x) == doctest::Approx(std::exp(std::pow(x, 4)) - 1).epsilon(1e-12));
  CHECK(eval(YoungFunction::log_quotient(), x) == doctest::Approx(x * x / std::log(std::exp(1.0) + x)).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval(YoungFunction::power_scaled(2.0), -1.0), DomainError);
  const auto t = YoungFunction::tabulated({{0.1, 0.01}, {1.0, 1.0}, {10.0, 100.0}});
  CHECK_THROWS_AS(eval(t, 20.0), RangeError);
  CHECK_THROWS(YoungFunction::tabulated({{0.1, 0.5}, {1.0, 0.2}}));
}

TEST_CASE("inverse") {
  CHECK(inverse(YoungFunction::power_scaled(2.0), 2.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(inverse(YoungFunction::exp_power(1.0), std::exp(1.0) - 2.0) == doctest::Approx(1.0).epsilon(1e-8));
  for (const auto& phi : builtins()) {
    CHECK(inverse(phi, 0.0) == 0.0);
    for (double x : log_grid(1e-2, 2.0, 12)) {
      CHECK(inverse(phi, eval(phi, x)) == doctest::Approx(x).epsilon(1e-8));
    }
  }
}

TEST_CASE("conjugate_eval") {
  CHECK(conjugate_eval(YoungFunction::power_scaled(2.0), 3.0) == doctest::Approx(4.5));
  for (const auto& phi : builtins()) CHECK(conjugate_eval(phi, 0.0) == 0.0);

  // Dense grid oracle for sup_x (x - (e^x - x - 1)).
  const YoungFunction phi = YoungFunction::exp_power(1.0);
  double best = 0.0;
  for (int i = 0; i <= 400000; ++i) {
    const double x = 4.0 * i / 400000.0;
    best = std::max(best, x - (std::exp(x) - x - 1.0));
  }
  const double got = conjugate_eval(phi, 1.0);
  CHECK(got == doctest::Approx(best).epsilon(1e-8));
  CHECK(got == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-10));
}

TEST_CASE("conjugate of power_scaled is power_scaled") {
  const auto star3 = conjugate(YoungFunction::power_scaled(3.0));
  CHECK(star3.family() == Family::power_scaled);
  CHECK(star3.params()[0] == doctest::Approx(1.5));
  const auto star2 = conjugate(YoungFunction::power_scaled(2.0));
  CHECK(star2.params()[0] == doctest::Approx(2.0));
}

TEST_CASE("Young's inequality and Prop 1.1") {
  const auto grid = log_grid(1e-2, 1e2, 16);
  for (const auto& phi : builtins()) {
    const auto star = conjugate(phi);
    for (double x : grid) {
      const double px = eval(phi, x);
      if (!std::isfinite(px)) continue;
      for (double y : grid) CHECK(x * y <= px + eval(star, y) + 1e-9 * std::max(1.0, x * y));
    }
    for (double a : grid) {
      for (double b : grid) {
        const double pa = eval(phi, a), pb = eval(phi, b), pab = eval(phi, a + b);
        if (std::isfinite(pab)) CHECK(pa + pb <= pab * (1 + 1e-12) + 1e-12);
        CHECK(inverse(phi, a) + inverse(phi, b) >= inverse(phi, a + b) * (1 - 1e-9));
      }
    }
  }
}

TEST_CASE("growth conditions") {
  const auto grid = standard_grid();
  const auto d2 = check_growth(YoungFunction::power_scaled(2.0), GrowthCondition::delta2, grid);
  CHECK(d2.holds_globally);
  CHECK(d2.witness_constant == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_FALSE(check_growth(YoungFunction::exp_power(2.0), GrowthCondition::delta2, grid).holds_globally);

  const auto psi = YoungFunction::power_scaled(2.0);
  const auto prec = check_growth(YoungFunction::power_scaled(3.0), GrowthCondition::precedes, grid, &psi);
  CHECK(prec.holds_eventually);
  CHECK_FALSE(prec.holds_globally);
  // The witness reproduces x^2/2 <= (a x)^3 / 3 beyond the threshold.
  for (double x : grid) {
    if (x >= prec.threshold_x0) CHECK(x * x / 2 <= std::pow(prec.witness_constant * x, 3) / 3 * (1 + 1e-9));
  }
  CHECK_THROWS_AS(check_growth(psi, GrowthCondition::precedes, grid), ArgumentError);

  for (const auto& phi : builtins()) {
    const auto r = check_growth(phi, GrowthCondition::delta_prime, grid);
    if (r.holds_globally) CHECK(r.holds_eventually);
    if (r.holds_globally) CHECK(check_growth(phi, GrowthCondition::delta2, grid).holds_globally);
  }
}

TEST_CASE("is_young_composition") {
  const auto ps = [](double p) { return YoungFunction::power_scaled(p); };
  CHECK(is_young_composition(ps(2.0), ps(1.5)).is_young);
  const auto lin = is_young_composition(ps(2.0), ps(2.0));
  CHECK_FALSE(lin.is_young);
  CHECK_FALSE(lin.first_violation.empty());
  CHECK(is_young_composition(ps(3.0), ps(2.0)).is_young);
}

TEST_CASE("grids") {
  const auto g = standard_grid();
  REQUIRE(g.size() == 64);
  CHECK(g.front() == doctest::Approx(1e-3));
  CHECK(g.back() == doctest::Approx(1e3));
}
