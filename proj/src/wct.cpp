#include "orlicz_lab/wct.hpp"

#include <cmath>
#include <optional>
#include <vector>

#include "orlicz_lab/errors.hpp"
#include "rng.hpp"

namespace orlicz_lab {

std::string to_string(OperatorKind k) { return k == OperatorKind::wct ? "wct" : "mult"; }

std::string to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::atoms: return "atoms";
    case SearchStrategy::random: return "random";
    case SearchStrategy::ascent: return "ascent";
    case SearchStrategy::all: return "all";
  }
  return "all";
}

SearchStrategy search_strategy_from_string(const std::string& s) {
  for (auto v : {SearchStrategy::atoms, SearchStrategy::random, SearchStrategy::ascent, SearchStrategy::all}) {
    if (to_string(v) == s) return v;
  }
  throw ArgumentError("unknown search strategy '" + s + "'");
}

OperatorSpec::OperatorSpec(MeasurableFn weight_, SubAlgebra alg_, YoungFunction domain_phi_,
                           YoungFunction codomain_psi_, OperatorKind kind_)
    : weight(std::move(weight_)),
      alg(std::move(alg_)),
      domain_phi(std::move(domain_phi_)),
      codomain_psi(std::move(codomain_psi_)),
      kind(kind_) {
  require_same_space(weight.space(), alg.space(), "OperatorSpec");
}

MeasurableFn apply(const OperatorSpec& op, const MeasurableFn& f) {
  require_same_space(f.space(), op.alg.space(), "apply");
  MeasurableFn uf = op.weight * f;
  if (op.kind == OperatorKind::mult) return uf;
  return cond_exp(uf, op.alg);
}

double norm_ratio(const OperatorSpec& op, const MeasurableFn& f) {
  const double denom = lux_norm(op.domain_phi, f).value;
  if (!(denom > 0.0)) return 0.0;
  return lux_norm(op.codomain_psi, apply(op, f)).value / denom;
}

namespace {

struct Search {
  const OperatorSpec& op;
  std::optional<MeasurableFn> best;
  double best_ratio = -1.0;
  std::size_t tried = 0;

  void offer(const MeasurableFn& f) {
    ++tried;
    const double r = norm_ratio(op, f);
    if (r > best_ratio) {  // strict: earlier candidates win ties
      best_ratio = r;
      best = f;
    }
  }

  void atoms() {
    const auto& space = op.alg.space_ptr();
    for (const Block& b : op.alg.blocks()) {
      MeasurableFn chi = MeasurableFn::indicator(space, b.cells);
      chi *= 1.0 / lux_norm(op.domain_phi, chi).value;
      offer(chi);
    }
    for (std::size_t c = 0; c < space->size(); ++c) {
      const std::size_t one[] = {c};
      if (op.alg.blocks()[op.alg.block_of(c)].cells.size() == 1) continue;  // already a block
      MeasurableFn chi = MeasurableFn::indicator(space, one);
      chi *= 1.0 / lux_norm(op.domain_phi, chi).value;
      offer(chi);
    }
  }

  void random(std::size_t budget, std::uint64_t seed) {
    detail::Rng rng(seed);
    const auto& space = op.alg.space_ptr();
    for (std::size_t k = 0; k < budget; ++k) {
      std::vector<Complex> v(space->size());
      bool any = false;
      for (auto& z : v) {
        if (rng.coin(0.25)) continue;
        const double mag = std::exp(rng.uniform(-3.0, 3.0));
        z = rng.coin(0.5) ? mag : -mag;
        any = true;
      }
      if (!any) v[rng.index(v.size())] = 1.0;
      offer(MeasurableFn(space, std::move(v)));
    }
  }

  void ascent(std::size_t sweeps) {
    if (!best) atoms();
    MeasurableFn cur = *best;
    double cur_ratio = best_ratio;
    for (std::size_t s = 0; s < sweeps; ++s) {
      bool improved = false;
      for (std::size_t c = 0; c < cur.size(); ++c) {
        if (cur[c] == Complex(0.0)) continue;
        for (const Complex step : {Complex(2.0), Complex(0.5), Complex(-1.0)}) {
          MeasurableFn trial = cur;
          trial[c] *= step;
          ++tried;
          const double r = norm_ratio(op, trial);
          if (r > cur_ratio * (1.0 + 1e-12)) {
            cur = std::move(trial);
            cur_ratio = r;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    if (cur_ratio > best_ratio) {
      best_ratio = cur_ratio;
      best = std::move(cur);
    }
  }
};

}  // namespace

NormEstimate op_norm_lower(const OperatorSpec& op, SearchStrategy strategy, std::size_t budget,
                           std::uint64_t seed) {
  if (budget < 1) throw ArgumentError("op_norm_lower needs budget >= 1");
  Search search{op, std::nullopt};
  if (strategy == SearchStrategy::atoms || strategy == SearchStrategy::all) search.atoms();
  if (strategy == SearchStrategy::random || strategy == SearchStrategy::all) search.random(budget, seed);
  if (strategy == SearchStrategy::ascent || strategy == SearchStrategy::all) search.ascent(budget);
  return NormEstimate{std::max(0.0, search.best_ratio), *search.best, search.tried, seed};
}

Complex adjoint_defect(const OperatorSpec& op, const MeasurableFn& f, const MeasurableFn& g) {
  if (op.kind != OperatorKind::wct) throw ArgumentError("adjoint_defect requires a wct operator");
  require_same_space(f.space(), op.alg.space(), "adjoint_defect");
  require_same_space(g.space(), op.alg.space(), "adjoint_defect");
  if (!g.is_block_constant(op.alg, 1e-12)) {
    throw ArgumentError("adjoint_defect: g must be measurable with respect to the sub-algebra");
  }
  const Complex lhs = integrate(apply(op, f) * g.conj());
  const Complex rhs = integrate(f * (op.weight.conj() * g).conj());
  return lhs - rhs;
}

}  // namespace orlicz_lab
