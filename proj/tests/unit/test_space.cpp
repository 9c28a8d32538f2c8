#include <cmath>

#include <doctest.h>

#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/space.hpp"

using namespace orlicz_lab;

namespace {

// Two atoms and two fragments, algebra {a1}, {a2}, {f1, f2}.
SpaceModel small_model() {
  std::vector<Cell> cells = {{"a1", 0.5, CellKind::sigma_atom},
                             {"a2", 0.25, CellKind::sigma_atom},
                             {"f1", 0.125, CellKind::fragment},
                             {"f2", 0.125, CellKind::fragment}};
  auto space = std::make_shared<const MeasureSpace>(std::move(cells));
  std::vector<Block> blocks = {{"A1", {0}, BlockKind::a_atom}, {"A2", {1}, BlockKind::a_atom},
                               {"B", {2, 3}, BlockKind::carrier}};
  return {space, SubAlgebra(space, std::move(blocks))};
}

}  // namespace

TEST_CASE("measure space invariants") {
  CHECK_THROWS_AS(MeasureSpace({{"a", 0.0}}), ArgumentError);
  CHECK_THROWS_AS(MeasureSpace({{"a", 1.0}, {"a", 1.0}}), ArgumentError);
  const auto m = small_model();
  CHECK(m.space->total_mass() == 1.0);
  CHECK(m.alg.blocks()[2].mass == 0.25);
  auto space = m.space;
  CHECK_THROWS_AS(SubAlgebra(space, {{"X", {0, 1}, BlockKind::a_atom}}), ArgumentError);
  CHECK_THROWS_AS(SubAlgebra(space, {{"X", {0, 1, 2, 3}}, {"Y", {3}}}), ArgumentError);
}

TEST_CASE("integrate") {
  const auto m = small_model();
  CHECK(integrate(MeasurableFn::constant(m.space, 1.0)).real() == 1.0);
  const std::vector<std::size_t> a2 = {1};
  CHECK(integrate(MeasurableFn::indicator(m.space, a2)).real() == 0.25);
  const std::vector<std::string> ids = {"a2"};
  CHECK(integrate(MeasurableFn::constant(m.space, 1.0), ids).real() == 0.25);
  const std::vector<std::string> bad = {"zz"};
  CHECK_THROWS_AS(integrate(MeasurableFn::constant(m.space, 1.0), bad), ArgumentError);

  const auto sym = build_symmetric_space(100);
  CHECK(std::abs(integrate(MeasurableFn::from_expr(sym.space, Expr::parse("w")))) <= 1e-12);
}

TEST_CASE("cond_exp") {
  const auto m = small_model();
  // One fragment of mass 1/8 inside a block of mass 1/4.
  const std::vector<std::size_t> f1 = {2};
  const auto e = cond_exp(MeasurableFn::indicator(m.space, f1), m.alg);
  CHECK(e[2].real() == 0.5);
  CHECK(e[3].real() == 0.5);
  CHECK(e[0].real() == 0.0);

  const std::vector<double> vals = {1.0, 2.0, 2.0, 2.0};
  const auto measurable = MeasurableFn::from_real(m.space, vals);
  CHECK(measurable.is_block_constant(m.alg));
  CHECK(cond_exp(measurable, m.alg).values() == measurable.values());

  const MeasurableFn z(m.space, {Complex(0, 1), Complex(1, 1), Complex(0, 2), Complex(2, 0)});
  const auto ez = cond_exp(z, m.alg);
  CHECK(ez[2] == Complex(1.0, 1.0));
}

TEST_CASE("symmetric space") {
  CHECK_THROWS_AS(build_symmetric_space(3), ArgumentError);
  const auto two = build_symmetric_space(2);
  CHECK(two.space->size() == 2);
  CHECK(two.alg.blocks().size() == 1);
  const auto m = build_symmetric_space(100);
  CHECK(m.space->total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(m.alg.blocks().size() == 50);
  for (const auto& b : m.alg.blocks()) CHECK(b.mass == doctest::Approx(0.02).epsilon(1e-14));
  const auto ew = cond_exp(MeasurableFn::from_expr(m.space, Expr::parse("w")), m.alg);
  CHECK(ew.sup_abs() <= 1e-15);
  const auto e1 = cond_exp(MeasurableFn::from_expr(m.space, Expr::parse("w + 1")), m.alg);
  for (std::size_t c = 0; c < e1.size(); ++c) CHECK(e1[c].real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rotation space") {
  const auto tiny = build_rotation_space(2, 1);
  CHECK(tiny.space->size() == 2);
  CHECK(tiny.alg.blocks().size() == 1);
  const auto m = build_rotation_space(4, 25);
  CHECK(m.alg.blocks().size() == 25);
  std::vector<double> first(m.space->size());
  for (std::size_t c = 0; c < first.size(); ++c) first[c] = m.space->cell(c).position < 0.25 ? 1.0 : 0.0;
  const auto f = MeasurableFn::from_real(m.space, first);
  const auto e = cond_exp(f, m.alg);
  for (std::size_t c = 0; c < e.size(); ++c) CHECK(e[c].real() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("symbolic sequences") {
  const SymbolicAtomSequence seq(Expr::parse("2^(-n)"), Expr::parse("1 + 1/n"), 40);
  CHECK(seq.depth() == 40);
  CHECK(seq.mass(3) == 0.125);
  CHECK(seq.value(4) == 1.25);
  CHECK_THROWS_AS(SymbolicAtomSequence(Expr::parse("n - 3"), Expr::parse("1"), 10), ArgumentError);
  const auto [model, u] = materialize(seq, 5);
  CHECK(model.space->size() == 5);
  CHECK(u[1].real() == 1.5);
  CHECK(model.space->mass(1) == 0.25);
}
