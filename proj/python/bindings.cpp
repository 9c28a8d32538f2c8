#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orlicz_lab/app.hpp"
#include "orlicz_lab/criteria.hpp"
#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/essnorm.hpp"
#include "orlicz_lab/expr.hpp"
#include "orlicz_lab/orlicz.hpp"
#include "orlicz_lab/space.hpp"
#include "orlicz_lab/wct.hpp"
#include "orlicz_lab/young.hpp"

namespace py = pybind11;
using namespace orlicz_lab;

namespace {

MeasurableFn weight_on(const SpaceModel& m, const std::vector<Complex>& values) {
  if (values.size() != m.space->size()) {
    throw ArgumentError("expected " + std::to_string(m.space->size()) + " values, got " +
                        std::to_string(values.size()));
  }
  return MeasurableFn(m.space, values);
}

AtomSource source_of(const py::object& space, const py::object& u) {
  if (py::isinstance<SymbolicAtomSequence>(space)) {
    if (!u.is_none()) throw ArgumentError("a symbolic sequence carries its own weight");
    return space.cast<SymbolicAtomSequence>();
  }
  const auto& m = space.cast<const SpaceModel&>();
  return FiniteWeight{weight_on(m, u.cast<std::vector<Complex>>()), m.alg};
}

py::dict growth_dict(const GrowthReport& r) {
  py::dict d;
  d["condition"] = to_string(r.condition);
  d["holds_globally"] = r.holds_globally;
  d["holds_eventually"] = r.holds_eventually;
  d["witness_constant"] = r.witness_constant;
  d["threshold_x0"] = r.threshold_x0;
  return d;
}

py::dict criterion_dict(const CriterionReport& r) {
  py::dict d;
  d["criterion_id"] = to_string(r.criterion_id);
  d["quantity"] = r.quantity;
  d["verdict"] = to_string(r.verdict);
  d["bound"] = r.bound ? py::cast(*r.bound) : py::none();
  py::list trace;
  for (const auto& e : r.per_atom_trace) trace.append(py::make_tuple(e.n, e.term));
  d["trace"] = trace;
  d["hypotheses"] = r.hypotheses;
  d["notes"] = r.notes;
  return d;
}

py::dict beta_dict(const BetaResult& b) {
  py::dict d;
  d["beta"] = b.beta;
  d["source"] = to_string(b.source);
  d["tail"] = b.tail;
  return d;
}

GchConstant gch_of(const SpaceModel& m, const py::object& c) {
  if (c.is_none()) return {gch_structural_constant(m.alg), "structural"};
  return {c.cast<double>(), "user"};
}

// JSON crosses the boundary as text; the Python layer wraps these with json.
py::tuple run_text(const std::string& config, std::optional<std::uint64_t> seed, bool strict,
                   std::optional<std::string> output_dir) {
  app::RunOptions opt;
  opt.seed = seed;
  opt.strict = strict;
  if (output_dir) opt.output_dir = *output_dir;
  app::RunResult r;
  {
    py::gil_scoped_release release;
    r = app::run(app::json::parse(config), opt);
  }
  return py::make_tuple(r.exit_code, r.report.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orlicz space and weighted conditional type operator toolkit";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<YoungFunction>(m, "YoungFunction")
      .def_static("power", &YoungFunction::power, py::arg("p"))
      .def_static("power_scaled", &YoungFunction::power_scaled, py::arg("p"))
      .def_static("exp_power", &YoungFunction::exp_power, py::arg("p"))
      .def_static("entropy", &YoungFunction::entropy, py::arg("p"))
      .def_static("log_quotient", &YoungFunction::log_quotient)
      .def_static("exp_quartic", &YoungFunction::exp_quartic)
      .def_static("tabulated", &YoungFunction::tabulated, py::arg("table"))
      .def_static("conjugate_of", &YoungFunction::conjugate_of, py::arg("inner"))
      .def_static("compose_of", &YoungFunction::compose_of, py::arg("outer"), py::arg("inner"),
                  py::arg("invert_inner"))
      .def_property_readonly("family", [](const YoungFunction& f) { return to_string(f.family()); })
      .def_property_readonly("params",
                             [](const YoungFunction& f) {
                               return std::vector<double>(f.params().begin(), f.params().end());
                             })
      .def("__call__", &YoungFunction::operator(), py::arg("x"))
      .def("describe", &YoungFunction::describe)
      .def("__repr__", [](const YoungFunction& f) { return "<YoungFunction " + f.describe() + ">"; })
      .def(py::self == py::self);

  m.def("eval", &eval, py::arg("phi"), py::arg("x"));
  m.def("inverse", &inverse, py::arg("phi"), py::arg("y"));
  m.def("conjugate_eval", &conjugate_eval, py::arg("phi"), py::arg("y"));
  m.def("conjugate", &conjugate, py::arg("phi"));
  m.def("standard_grid", &standard_grid);
  m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("n"));
  m.def(
      "check_growth",
      [](const YoungFunction& phi, const std::string& condition, std::optional<std::vector<double>> grid,
         std::optional<YoungFunction> psi) {
        const auto g = grid ? *grid : standard_grid();
        return growth_dict(check_growth(phi, growth_condition_from_string(condition), g, psi ? &*psi : nullptr));
      },
      py::arg("phi"), py::arg("condition"), py::arg("grid") = py::none(), py::arg("psi") = py::none());

  py::class_<SpaceModel>(m, "Space")
      .def_property_readonly("n_cells", [](const SpaceModel& s) { return s.space->size(); })
      .def_property_readonly("masses", [](const SpaceModel& s) { return masses_of(*s.space); })
      .def_property_readonly("positions",
                             [](const SpaceModel& s) {
                               std::vector<double> out;
                               for (const auto& c : s.space->cells()) out.push_back(c.position);
                               return out;
                             })
      .def_property_readonly("blocks",
                             [](const SpaceModel& s) {
                               std::vector<std::pair<std::string, std::vector<std::size_t>>> out;
                               for (const auto& b : s.alg.blocks()) out.emplace_back(b.label, b.cells);
                               return out;
                             })
      .def("weight",
           [](const SpaceModel& s, const std::string& expr) {
             return MeasurableFn::from_expr(s.space, Expr::parse(expr)).values();
           },
           py::arg("expr"), "Values of an expression in w (cell position) and n (cell index).");

  m.def("symmetric_space", &build_symmetric_space, py::arg("n_cells"));
  m.def("rotation_space", &build_rotation_space, py::arg("n"), py::arg("cells_per_interval"));
  m.def("atomic_space", [](const std::vector<double>& masses) { return build_atomic_space(masses); },
        py::arg("masses"));

  py::class_<SymbolicAtomSequence>(m, "AtomSequence")
      .def(py::init([](const std::string& mass, const std::string& value, std::optional<std::size_t> n_max) {
             return SymbolicAtomSequence(Expr::parse(mass), Expr::parse(value),
                                         n_max ? *n_max : default_symbolic_depth());
           }),
           py::arg("mass"), py::arg("value"), py::arg("n_max") = py::none())
      .def_property_readonly("depth", &SymbolicAtomSequence::depth)
      .def("mass", &SymbolicAtomSequence::mass, py::arg("n"))
      .def("value", &SymbolicAtomSequence::value, py::arg("n"));

  m.def(
      "cond_exp",
      [](const SpaceModel& s, const std::vector<Complex>& f) { return cond_exp(weight_on(s, f), s.alg).values(); },
      py::arg("space"), py::arg("f"));
  m.def(
      "integrate", [](const SpaceModel& s, const std::vector<Complex>& f) { return integrate(weight_on(s, f)); },
      py::arg("space"), py::arg("f"));
  m.def(
      "modular",
      [](const YoungFunction& phi, const SpaceModel& s, const std::vector<Complex>& f) {
        return modular(phi, weight_on(s, f));
      },
      py::arg("phi"), py::arg("space"), py::arg("f"));
  m.def(
      "lux_norm",
      [](const YoungFunction& phi, const SpaceModel& s, const std::vector<Complex>& f) {
        return lux_norm(phi, weight_on(s, f)).value;
      },
      py::arg("phi"), py::arg("space"), py::arg("f"));

  m.def(
      "op_norm_lower",
      [](const SpaceModel& s, const std::vector<Complex>& u, const YoungFunction& phi, const YoungFunction& psi,
         const std::string& kind, const std::string& strategy, std::size_t budget, std::uint64_t seed) {
        if (kind != "wct" && kind != "mult") throw ArgumentError("kind must be wct or mult");
        const OperatorSpec op(weight_on(s, u), s.alg, phi, psi, kind == "wct" ? OperatorKind::wct : OperatorKind::mult);
        const auto r = op_norm_lower(op, search_strategy_from_string(strategy), budget, seed);
        py::dict d;
        d["lower_bound"] = r.lower_bound;
        d["witness"] = r.witness.values();
        d["candidates_tried"] = r.candidates_tried;
        d["seed"] = r.seed;
        return d;
      },
      py::arg("space"), py::arg("u"), py::arg("phi"), py::arg("psi"), py::arg("kind") = "wct",
      py::arg("strategy") = "all", py::arg("budget") = 40, py::arg("seed") = kDefaultSeed);

  m.def(
      "thm22_check",
      [](const SpaceModel& s, const std::vector<Complex>& u, const YoungFunction& phi, const YoungFunction& psi,
         bool finite_measure, const py::object& gch) {
        const auto r = thm22_check(weight_on(s, u), phi, psi, s.alg, finite_measure, gch_of(s, gch));
        py::dict d;
        d["a_i"] = criterion_dict(r.a_i);
        d["a_ii"] = criterion_dict(r.a_ii);
        d["b"] = criterion_dict(r.b);
        return d;
      },
      py::arg("space"), py::arg("u"), py::arg("phi"), py::arg("psi"), py::arg("finite_measure") = true,
      py::arg("gch") = py::none());
  m.def(
      "thm23_check",
      [](const YoungFunction& phi, const YoungFunction& psi, const py::object& space, const py::object& u,
         std::optional<YoungFunction> theta) { return criterion_dict(thm23_check(phi, psi, source_of(space, u), theta)); },
      py::arg("phi"), py::arg("psi"), py::arg("space"), py::arg("u") = py::none(), py::arg("theta") = py::none());
  m.def(
      "prop24_check",
      [](const YoungFunction& phi, const YoungFunction& psi, const py::object& space, const py::object& u,
         std::optional<YoungFunction> theta) {
        return criterion_dict(prop24_check(phi, psi, source_of(space, u), theta));
      },
      py::arg("phi"), py::arg("psi"), py::arg("space"), py::arg("u") = py::none(), py::arg("theta") = py::none());
  m.def(
      "lp_lq_check",
      [](double p, double q, const py::object& space, const py::object& u) {
        return criterion_dict(lp_lq_check(p, q, source_of(space, u)));
      },
      py::arg("p"), py::arg("q"), py::arg("space"), py::arg("u") = py::none());
  m.def(
      "thm28_check",
      [](const SpaceModel& s, const std::vector<Complex>& u, const YoungFunction& phi, const YoungFunction& psi,
         const YoungFunction& theta, const py::object& gch, std::optional<std::vector<double>> grid) {
        const auto g = grid ? *grid : standard_grid();
        const auto r = thm28_check(weight_on(s, u), phi, psi, theta, s.alg, gch_of(s, gch), g);
        py::dict d;
        d["i"] = criterion_dict(r.i);
        d["ii"] = criterion_dict(r.ii);
        return d;
      },
      py::arg("space"), py::arg("u"), py::arg("phi"), py::arg("psi"), py::arg("theta"), py::arg("gch") = py::none(),
      py::arg("grid") = py::none());
  m.def(
      "gch_structural_constant", [](const SpaceModel& s) { return gch_structural_constant(s.alg); },
      py::arg("space"));

  m.def(
      "beta", [](const py::object& space, const py::object& u) { return beta_dict(beta(source_of(space, u))); },
      py::arg("space"), py::arg("u") = py::none());
  m.def(
      "level_set",
      [](const py::object& space, const py::object& u, double eps) {
        const auto r = level_set(source_of(space, u), eps);
        py::dict d;
        d["members"] = r.members;
        d["indices"] = r.indices;
        d["classification"] = to_string(r.classification);
        return d;
      },
      py::arg("space"), py::arg("u"), py::arg("eps"));
  m.def(
      "ess_norm_sandwich",
      [](const py::object& space, const py::object& u, const YoungFunction& phi, double c) {
        const auto r = ess_norm_sandwich(source_of(space, u), phi, c);
        py::dict d;
        d["lower"] = r.lower;
        d["upper"] = r.upper;
        d["lower_beta"] = beta_dict(r.lower_beta);
        d["upper_beta"] = beta_dict(r.upper_beta);
        return d;
      },
      py::arg("space"), py::arg("u"), py::arg("phi"), py::arg("C"));

  m.def("_run", &run_text, py::arg("config"), py::arg("seed") = py::none(), py::arg("strict") = false,
        py::arg("output_dir") = py::none());
  m.def("fixture_names", &app::fixture_names);
  m.def("_fixture", [](const std::string& name) { return app::fixture(name).dump(); }, py::arg("name"));

  m.attr("DEFAULT_SEED") = kDefaultSeed;
  m.attr("__version__") = app::kToolVersion;
}
