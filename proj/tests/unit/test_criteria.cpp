#include <cmath>
#include <random>

#include <doctest.h>

#include "orlicz_lab/criteria.hpp"
#include "orlicz_lab/errors.hpp"

using namespace orlicz_lab;

namespace {

YoungFunction ps(double p) { return YoungFunction::power_scaled(p); }

SpaceModel atoms(std::vector<double> masses) { return build_atomic_space(masses); }

const GchConstant kOne{1.0, "user"};

}  // namespace

TEST_CASE("tail_verdict") {
  std::vector<double> up, down, flat;
  for (int n = 1; n <= 200; ++n) {
    up.push_back(std::pow(2.0, n / 3.0));
    down.push_back(1.0 / n);
    flat.push_back(3.0);
  }
  CHECK(tail_verdict(up) == Verdict::diverges);
  CHECK(tail_verdict(down) == Verdict::satisfied);
  CHECK(tail_verdict(flat) == Verdict::satisfied);
  up[150] = std::nan("");
  CHECK(tail_verdict(up) == Verdict::inconclusive);
  std::vector<double> linear;
  for (int n = 1; n <= 200; ++n) linear.push_back(n);
  CHECK(tail_verdict(linear) == Verdict::inconclusive);
}

TEST_CASE("rem26 closed-form terms") {
  const Expr mass = Expr::parse("2^(-n)");
  const auto div = lp_lq_check(2.0, 3.0, SymbolicAtomSequence(mass, Expr::parse("1"), 120));
  REQUIRE(div.per_atom_trace.size() == 120);
  for (const auto& e : div.per_atom_trace) {
    CHECK(e.term == doctest::Approx(std::pow(2.0, e.n / 3.0)).epsilon(1e-12));
  }
  CHECK(div.verdict == Verdict::diverges);
  const auto bdd = lp_lq_check(2.0, 3.0, SymbolicAtomSequence(mass, Expr::parse("2^(-n)"), 120));
  for (const auto& e : bdd.per_atom_trace) {
    CHECK(e.term == doctest::Approx(std::pow(2.0, -5.0 * e.n / 3.0)).epsilon(1e-12));
  }
  CHECK(bdd.verdict == Verdict::satisfied);
  CHECK_THROWS_AS(lp_lq_check(2.0, 2.0, SymbolicAtomSequence(mass, Expr::parse("1"), 10)), ArgumentError);
}

TEST_CASE("rem29 with a zero weight") {
  const auto m = atoms({0.5, 0.25});
  const auto r = lp_lq_check(3.0, 2.0, FiniteWeight{MeasurableFn::constant(m.space, 0.0), m.alg});
  CHECK(r.criterion_id == CriterionId::rem29);
  CHECK(r.quantity == 0.0);
  CHECK(r.verdict == Verdict::satisfied);
}

TEST_CASE("rem29 L^r norm") {
  // p = 3, q = 2: p' = 3/2, r = 6. E(|u|^{p'})^{1/p'} = |u| on atoms.
  const auto m = atoms({0.5, 0.25});
  const std::vector<double> v = {2.0, 1.0};
  const auto r = lp_lq_check(3.0, 2.0, FiniteWeight{MeasurableFn::from_real(m.space, v), m.alg});
  CHECK(r.quantity == doctest::Approx(std::pow(0.5 * std::pow(2.0, 6) + 0.25, 1.0 / 6.0)).epsilon(1e-12));
}

TEST_CASE("thm22") {
  const auto m = atoms({0.5, 0.25, 0.25});
  const auto one = MeasurableFn::constant(m.space, 1.0);
  const auto phi = YoungFunction::power(3.0);
  const auto psi = ps(2.0);
  const auto r = thm22_check(one, phi, psi, m.alg, true, kOne);
  CHECK(r.a_i.quantity == doctest::Approx(1.0));
  CHECK(r.a_ii.quantity == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(r.b.bound);
  CHECK(std::isfinite(*r.b.bound));
  const auto z = thm22_check(MeasurableFn::constant(m.space, 0.0), phi, psi, m.alg, true, kOne);
  REQUIRE(z.b.bound);
  CHECK(*z.b.bound == 0.0);
  // Psi = exp_power does not precede power 3, so (b) has no certified ordering.
  const auto bad = thm22_check(one, ps(2.0), YoungFunction::exp_power(2.0), m.alg, true, kOne);
  CHECK(bad.b.verdict == Verdict::inconclusive);
}

TEST_CASE("thm23") {
  const auto m = atoms({0.5, 0.25, 0.125});
  const auto z = thm23_check(ps(2.0), ps(3.0), FiniteWeight{MeasurableFn::constant(m.space, 0.0), m.alg});
  CHECK(z.verdict == Verdict::satisfied);
  CHECK(z.quantity == 0.0);

  // With power_scaled functions the terms are rem26's up to a constant factor.
  const Expr mass = Expr::parse("2^(-n)");
  const Expr val = Expr::parse("1 + 1/n");
  const SymbolicAtomSequence seq(mass, val, 60);
  const auto t = thm23_check(ps(2.0), ps(3.0), seq);
  const auto l = lp_lq_check(2.0, 3.0, seq);
  REQUIRE(t.per_atom_trace.size() == l.per_atom_trace.size());
  const double ratio = t.per_atom_trace[0].term / l.per_atom_trace[0].term;
  for (std::size_t i = 0; i < t.per_atom_trace.size(); ++i) {
    CHECK(t.per_atom_trace[i].term / l.per_atom_trace[i].term == doctest::Approx(ratio).epsilon(1e-9));
  }

  // Non-atomic algebra: any nonzero weight is violated.
  const auto sym = build_symmetric_space(20);
  const auto r = thm23_check(ps(2.0), ps(3.0), FiniteWeight{MeasurableFn::constant(sym.space, 0.3), sym.alg});
  CHECK(r.verdict == Verdict::violated);
}

TEST_CASE("prop24") {
  const auto m = atoms({1.0});
  const auto one = MeasurableFn::constant(m.space, 1.0);
  // Psi o Phi^{-1} is linear here, so a dominating Theta is required.
  CHECK_THROWS_AS(prop24_check(ps(2.0), ps(2.0), FiniteWeight{one, m.alg}), ArgumentError);
  const auto r = prop24_check(ps(2.0), ps(2.0), FiniteWeight{one, m.alg}, ps(2.0));
  REQUIRE(r.per_atom_trace.size() == 1);
  // Phi(1) * 1 / Psi(Phi^{-1}(1)) = 0.5 / 1.
  CHECK(r.per_atom_trace[0].term == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(r.bound);
  CHECK(*r.bound == doctest::Approx(0.5 * 0.5 + 1.0).epsilon(1e-9));

  const auto z = prop24_check(ps(2.0), ps(3.0), FiniteWeight{MeasurableFn::constant(m.space, 0.0), m.alg});
  CHECK(z.quantity == 0.0);
  REQUIRE(z.bound);
  CHECK(*z.bound == 1.0);

  // u = 2^{17n/12} on a_n = 2^{-n}: terms are a constant times 2^{n/3}.
  const SymbolicAtomSequence seq(Expr::parse("2^(-n)"), Expr::parse("2^(17*n/12)"), 200);
  const auto d = prop24_check(ps(2.0), ps(3.0), seq);
  const double c = 3.0 / (2.0 * std::pow(2.0, 1.5));
  for (const auto& e : d.per_atom_trace) CHECK(e.term == doctest::Approx(c * std::pow(2.0, e.n / 3.0)).epsilon(1e-9));
  CHECK(d.verdict == Verdict::diverges);
}

TEST_CASE("thm28 certification") {
  const auto sym = build_symmetric_space(20);
  const auto w = MeasurableFn::from_expr(sym.space, Expr::parse("w"));
  const auto grid01 = log_grid(1e-3, 1.0, 32);
  const GchConstant four{4.0, "example"};
  const auto r = thm28_check(w, YoungFunction::exp_power(2.0), ps(2.0), YoungFunction::entropy(2.0), sym.alg, four, grid01);
  REQUIRE(r.i.bound);
  CHECK(*r.i.bound > 0.0);

  const auto rot = build_rotation_space(4, 5);
  const auto phi = YoungFunction::exp_quartic();
  const auto theta = YoungFunction::compose_of(conjugate(phi), YoungFunction::power(2.0), false);
  CHECK_NOTHROW(thm28_check(MeasurableFn::constant(rot.space, 1.0), phi, YoungFunction::log_quotient(), theta, rot.alg,
                            kOne, grid01));

  CHECK_THROWS_AS(thm28_check(w, ps(2.0), ps(2.0), ps(2.0), sym.alg, kOne, standard_grid()), PreconditionError);
  const auto z = thm28_check(MeasurableFn::constant(sym.space, 0.0), ps(3.0), ps(2.0), ps(6.0), sym.alg, kOne,
                             standard_grid());
  REQUIRE(z.i.bound);
  CHECK(*z.i.bound == 0.0);
}

TEST_CASE("GCH") {
  std::vector<double> masses(16);
  for (std::size_t i = 0; i < masses.size(); ++i) masses[i] = 1.0 / static_cast<double>(i + 1);
  const auto m = atoms(masses);
  CHECK(gch_structural_constant(m.alg) == 1.0);
  CHECK(gch_structural_constant(build_symmetric_space(100).alg) == doctest::Approx(4.0));
  for (const auto& phi : {ps(2.0), YoungFunction::exp_power(2.0), YoungFunction::log_quotient()}) {
    CHECK(gch_constant(phi, m.alg, 300).constant <= 2.0 + 1e-9);
  }
  const auto zero = MeasurableFn::constant(m.space, 0.0);
  CHECK(gch_ratio(ps(2.0), m.alg, zero, MeasurableFn::constant(m.space, 1.0)) == 0.0);
}

TEST_CASE("quantities are monotone in |u|") {
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> masses(10);
  for (auto& x : masses) x = 0.05 + u01(g);
  const auto m = atoms(masses);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> a(10), b(10);
    for (std::size_t i = 0; i < 10; ++i) {
      a[i] = u01(g);
      b[i] = a[i] * (1.0 + u01(g));
    }
    const auto u1 = MeasurableFn::from_real(m.space, a);
    const auto u2 = MeasurableFn::from_real(m.space, b);
    const auto r1 = thm22_check(u1, YoungFunction::power(3.0), ps(2.0), m.alg, true, kOne);
    const auto r2 = thm22_check(u2, YoungFunction::power(3.0), ps(2.0), m.alg, true, kOne);
    CHECK(r1.a_i.quantity <= r2.a_i.quantity);
    CHECK(r1.a_ii.quantity <= r2.a_ii.quantity * (1 + 1e-12));
    CHECK(thm23_check(ps(2.0), ps(3.0), FiniteWeight{u1, m.alg}).quantity <=
          thm23_check(ps(2.0), ps(3.0), FiniteWeight{u2, m.alg}).quantity * (1 + 1e-12));
    CHECK(thm28_check(u1, ps(3.0), ps(2.0), ps(6.0), m.alg, kOne, standard_grid()).i.quantity <=
          thm28_check(u2, ps(3.0), ps(2.0), ps(6.0), m.alg, kOne, standard_grid()).i.quantity * (1 + 1e-9));
  }
}

TEST_CASE("criterion ids round trip") {
  for (auto id : {CriterionId::thm22a_i, CriterionId::thm23b, CriterionId::rem29, CriterionId::thm28ii}) {
    CHECK(criterion_id_from_string(to_string(id)) == id);
  }
  CHECK_THROWS(criterion_id_from_string("thm99"));
}
