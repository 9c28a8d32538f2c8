#include "orlicz_lab/essnorm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "orlicz_lab/errors.hpp"

namespace orlicz_lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |h| per block (finite) or per atom index (symbolic, entry n-1).
struct Levels {
  bool symbolic = false;
  std::vector<double> vals;
  const SubAlgebra* alg = nullptr;
};

Levels levels_of(const AtomSource& h) {
  Levels l;
  if (const auto* seq = std::get_if<SymbolicAtomSequence>(&h)) {
    l.symbolic = true;
    l.vals.reserve(seq->depth());
    for (std::size_t n = 1; n <= seq->depth(); ++n) l.vals.push_back(std::abs(seq->value(n)));
    return l;
  }
  const auto& fw = std::get<FiniteWeight>(h);
  require_same_space(fw.u.space(), fw.alg.space(), "level_set");
  if (!fw.u.is_block_constant(fw.alg, 1e-12 * std::max(1.0, fw.u.sup_abs()))) {
    throw ArgumentError("level_set: h must be constant on the blocks of the sub-algebra");
  }
  for (const Complex& z : block_values(fw.u, fw.alg)) l.vals.push_back(std::abs(z));
  l.alg = &fw.alg;
  return l;
}

LevelSetReport level_set_of(const Levels& l, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("level_set needs eps > 0");
  LevelSetReport r;
  r.epsilon = eps;
  if (l.symbolic) {
    bool late = false;
    const std::size_t n = l.vals.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (l.vals[i] < eps) continue;
      r.indices.push_back(i + 1);
      r.members.push_back(std::to_string(i + 1));
      if (i >= n - n / 4) late = true;
    }
    r.classification = late ? LevelClass::infinitely_many_atoms : LevelClass::finitely_many_atoms;
    return r;
  }
  bool carrier = false;
  for (std::size_t b = 0; b < l.vals.size(); ++b) {
    if (l.vals[b] < eps) continue;
    const Block& blk = l.alg->blocks()[b];
    r.indices.push_back(b);
    r.members.push_back(blk.label);
    if (blk.kind == BlockKind::carrier) carrier = true;
  }
  r.classification = carrier ? LevelClass::contains_non_atomic_mass : LevelClass::finitely_many_atoms;
  return r;
}

// limsup of a symbolic tail. Monotone tails are extrapolated with Aitken's
// delta-squared on indices N/4, N/2, N, which is exact for L + c n^-a.
BetaResult beta_of(const Levels& l) {
  BetaResult r;
  if (!l.symbolic) {
    r.source = BetaSource::non_atomic_esssup;
    for (std::size_t b = 0; b < l.vals.size(); ++b) {
      if (l.alg->blocks()[b].kind == BlockKind::carrier) r.beta = std::max(r.beta, l.vals[b]);
    }
    return r;
  }
  r.source = BetaSource::atomic_limsup;
  const auto& v = l.vals;
  if (v.empty()) return r;
  if (tail_verdict(v) == Verdict::diverges) {
    r.beta = kInf;
    r.tail = "unbounded";
    return r;
  }
  const std::span<const double> window(v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
  const double wmax = *std::max_element(window.begin(), window.end());
  const bool down = std::is_sorted(window.begin(), window.end(), std::greater<>());
  const bool up = std::is_sorted(window.begin(), window.end());
  const std::size_t n3 = v.size() / 4 * 4;
  r.tail = "window-max";
  r.beta = wmax;
  if (!(down || up) || n3 < 8) return r;

  const double x1 = v[n3 / 4 - 1];
  const double x2 = v[n3 / 2 - 1];
  const double x3 = v[n3 - 1];
  const double d1 = x2 - x1;
  const double d2 = x3 - x2;
  r.tail = "extrapolated";
  if (d2 == 0.0) {
    r.beta = x3;
    return r;
  }
  const bool shrinking = std::abs(d2) < std::abs(d1) && (d1 > 0.0) == (d2 > 0.0);
  const double lim = shrinking ? x3 - d2 * d2 / (d2 - d1) : std::numeric_limits<double>::quiet_NaN();
  if (down) {
    r.beta = std::isfinite(lim) && lim <= x3 ? std::max(0.0, lim) : x3;
  } else if (std::isfinite(lim) && lim >= x3) {
    r.beta = lim;
  } else {
    r.tail = "window-max";
  }
  return r;
}

Levels criterion_levels(const AtomSource& u, const YoungFunction& phi) {
  const YoungFunction phi_star = conjugate(phi);
  auto h = [&](double a) {
    if (a == 0.0) return 0.0;
    return inverse(phi_star, eval(phi_star, a));
  };
  Levels l;
  if (const auto* seq = std::get_if<SymbolicAtomSequence>(&u)) {
    l.symbolic = true;
    l.vals.reserve(seq->depth());
    for (std::size_t n = 1; n <= seq->depth(); ++n) l.vals.push_back(h(std::abs(seq->value(n))));
    return l;
  }
  const auto& fw = std::get<FiniteWeight>(u);
  l.alg = &fw.alg;
  for (const Block& b : fw.alg.blocks()) {
    double s = 0.0;
    for (std::size_t c : b.cells) {
      const double a = std::abs(fw.u[c]);
      if (a != 0.0) s += eval(phi_star, a) * fw.alg.space().mass(c);
    }
    s /= b.mass;
    l.vals.push_back(s == 0.0 ? 0.0 : inverse(phi_star, s));
  }
  return l;
}

}  // namespace

std::string to_string(LevelClass c) {
  switch (c) {
    case LevelClass::finitely_many_atoms: return "finitely-many-atoms";
    case LevelClass::infinitely_many_atoms: return "infinitely-many-atoms";
    case LevelClass::contains_non_atomic_mass: return "contains-non-atomic-mass";
  }
  return "?";
}

std::string to_string(BetaSource s) {
  switch (s) {
    case BetaSource::atomic_limsup: return "atomic-limsup";
    case BetaSource::non_atomic_esssup: return "non-atomic-esssup";
    case BetaSource::max_of_both: return "max-of-both";
  }
  return "?";
}

LevelSetReport level_set(const AtomSource& h, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("level_set needs eps > 0");
  return level_set_of(levels_of(h), eps);
}

BetaResult beta(const AtomSource& h) { return beta_of(levels_of(h)); }

Sandwich ess_norm_sandwich(const AtomSource& u, const YoungFunction& phi, double gch_c,
                           const SandwichHypotheses& hyp) {
  Sandwich s;
  s.hypotheses = hyp;
  if (const auto* fw = std::get_if<FiniteWeight>(&u)) {
    s.lower_beta = beta(FiniteWeight{cond_exp(fw->u, fw->alg), fw->alg});
  } else {
    s.lower_beta = beta(u);  // E is the identity on atoms
  }
  s.upper_beta = beta_of(criterion_levels(u, phi));
  s.lower = s.lower_beta.beta;
  s.upper = s.upper_beta.beta == 0.0 ? 0.0 : gch_c * s.upper_beta.beta;
  return s;
}

std::vector<CurvePoint> truncation_distance_curve(const AtomSource& u, const YoungFunction& phi,
                                                  std::span<const std::size_t> ks,
                                                  const TruncationOptions& opt) {
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (ks[i] <= ks[i - 1]) throw ArgumentError("truncation_distance_curve: ks must be increasing");
  }
  const double b = beta_of(criterion_levels(u, phi)).beta;
  const double level = b + opt.epsilon;

  std::optional<SpaceModel> model;
  std::optional<MeasurableFn> weight;
  if (const auto* seq = std::get_if<SymbolicAtomSequence>(&u)) {
    const std::size_t kmax = ks.empty() ? 0 : ks.back();
    auto [m, w] = materialize(*seq, std::min(seq->depth(), kmax + opt.tail_atoms));
    model.emplace(std::move(m));
    weight.emplace(std::move(w));
  } else {
    const auto& fw = std::get<FiniteWeight>(u);
    model.emplace(SpaceModel{fw.alg.space_ptr(), fw.alg});
    weight.emplace(fw.u);
  }
  const SubAlgebra& alg = model->alg;
  const Levels local = criterion_levels(FiniteWeight{*weight, alg}, phi);

  std::vector<CurvePoint> curve;
  curve.reserve(ks.size());
  for (std::size_t k : ks) {
    MeasurableFn rest = *weight;
    std::size_t atoms_seen = 0;
    for (std::size_t bi = 0; bi < alg.blocks().size(); ++bi) {
      const Block& blk = alg.blocks()[bi];
      bool keep = local.vals[bi] >= level;
      if (blk.kind == BlockKind::a_atom && atoms_seen++ < k) keep = true;
      if (!keep) continue;
      for (std::size_t c : blk.cells) rest[c] = 0.0;
    }
    const OperatorSpec op(rest, alg, phi, phi, OperatorKind::wct);
    curve.push_back({k, op_norm_lower(op, SearchStrategy::all, opt.budget, opt.seed + k).lower_bound});
  }
  for (std::size_t i = curve.size(); i-- > 1;) {
    curve[i - 1].distance = std::max(curve[i - 1].distance, curve[i].distance);
  }
  return curve;
}

}  // namespace orlicz_lab
