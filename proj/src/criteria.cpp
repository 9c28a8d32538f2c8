#include "orlicz_lab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/orlicz.hpp"
#include "rng.hpp"

namespace orlicz_lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroOnB = 1e-12;
constexpr double kStableTol = 1e-3;

// Cells of one block (a-atom or carrier), reduced to what the criteria need.
struct Group {
  std::size_t n = 0;  // 1-based index among groups of the same kind
  double mass = 0.0;
  std::vector<double> abs_u;
  std::vector<double> cell_mass;

  template <class F>
  double average(F&& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < abs_u.size(); ++i) {
      if (abs_u[i] == 0.0) continue;  // every Young function vanishes at 0
      s += g(abs_u[i]) * cell_mass[i];
    }
    return s / mass;
  }
};

struct Profile {
  std::vector<Group> atoms;
  std::vector<Group> carriers;
  bool symbolic = false;
  double sup_u = 0.0;
};

Profile profile_of(const AtomSource& source) {
  Profile p;
  if (const auto* seq = std::get_if<SymbolicAtomSequence>(&source)) {
    p.symbolic = true;
    p.atoms.reserve(seq->depth());
    for (std::size_t n = 1; n <= seq->depth(); ++n) {
      const double m = seq->mass(n);
      const double v = std::abs(seq->value(n));
      if (!(m > 0.0) || !std::isfinite(m)) throw ArgumentError("symbolic atom masses must be positive");
      p.atoms.push_back(Group{n, m, {v}, {m}});
      p.sup_u = std::max(p.sup_u, v);
    }
    return p;
  }
  const auto& fw = std::get<FiniteWeight>(source);
  require_same_space(fw.u.space(), fw.alg.space(), "criteria");
  for (const Block& b : fw.alg.blocks()) {
    Group g;
    g.mass = b.mass;
    for (std::size_t c : b.cells) {
      g.abs_u.push_back(std::abs(fw.u[c]));
      g.cell_mass.push_back(fw.alg.space().mass(c));
    }
    auto& dst = b.kind == BlockKind::a_atom ? p.atoms : p.carriers;
    g.n = dst.size() + 1;
    dst.push_back(std::move(g));
  }
  p.sup_u = fw.u.sup_abs();
  return p;
}

bool certified(const GrowthReport& r, bool global) { return global ? r.holds_globally : r.holds_eventually; }

GrowthReport growth(const YoungFunction& phi, GrowthCondition c, const YoungFunction* psi = nullptr) {
  const auto grid = standard_grid();
  return check_growth(phi, c, grid, psi);
}

// Phi(xy) <= c Phi(x) Phi(y) for an arbitrary positive function (used for
// inverses, which are not Young functions): bounded and stable on the grid.
bool delta_prime_global(const std::function<double(double)>& f) {
  const auto grid = standard_grid();
  const std::size_t n = grid.size();
  std::vector<double> fx(n);
  for (std::size_t i = 0; i < n; ++i) fx[i] = f(grid[i]);
  double all = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = f(grid[i] * grid[j]) / (fx[i] * fx[j]);
      if (!std::isfinite(r)) return false;
      all = std::max(all, r);
      if (i >= n / 4 && j >= n / 4) tail = std::max(tail, r);
    }
  }
  return all <= tail * (1.0 + kStableTol);
}

// sup of the terms and its verdict; finite families only fail through inf/NaN.
std::pair<double, Verdict> sup_of(std::span<const double> terms, bool symbolic) {
  double m = 0.0;
  bool bad = false;
  for (double t : terms) {
    if (std::isnan(t) || std::isinf(t)) {
      bad = true;
      m = kInf;
      continue;
    }
    m = std::max(m, t);
  }
  if (!symbolic) return {m, bad ? Verdict::violated : Verdict::satisfied};
  if (bad) return {kInf, Verdict::diverges};
  return {m, tail_verdict(terms)};
}

// Largest carrier average of g(|u|) and whether it vanishes at tolerance.
std::pair<double, bool> zero_on_b(const Profile& p, const std::function<double(double)>& g) {
  double worst = 0.0;
  for (const Group& c : p.carriers) worst = std::max(worst, c.average(g));
  return {worst, worst <= kZeroOnB};
}

std::vector<TraceEntry> trace_of(const Profile& p, std::span<const double> terms) {
  std::vector<TraceEntry> t;
  t.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) t.push_back({p.atoms[i].n, terms[i]});
  return t;
}

bool all_hold(const std::map<std::string, bool>& h) {
  return std::all_of(h.begin(), h.end(), [](const auto& kv) { return kv.second; });
}

// Block-constant function from per-block values.
MeasurableFn from_blocks(const SubAlgebra& alg, const std::vector<double>& per_block) {
  std::vector<Complex> v(alg.space().size());
  for (std::size_t b = 0; b < alg.blocks().size(); ++b) {
    for (std::size_t c : alg.blocks()[b].cells) v[c] = per_block[b];
  }
  return MeasurableFn(alg.space_ptr(), std::move(v));
}

// Per-block E(g(|u|)).
std::vector<double> block_average(const MeasurableFn& u, const SubAlgebra& alg,
                                  const std::function<double(double)>& g) {
  std::vector<double> out;
  out.reserve(alg.blocks().size());
  for (const Block& b : alg.blocks()) {
    double s = 0.0;
    for (std::size_t c : b.cells) {
      const double a = std::abs(u[c]);
      if (a != 0.0) s += g(a) * alg.space().mass(c);
    }
    out.push_back(s / b.mass);
  }
  return out;
}

}  // namespace

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::thm22a_i: return "thm22a_i";
    case CriterionId::thm22a_ii: return "thm22a_ii";
    case CriterionId::thm22b: return "thm22b";
    case CriterionId::thm23a: return "thm23a";
    case CriterionId::thm23b: return "thm23b";
    case CriterionId::prop24: return "prop24";
    case CriterionId::rem26: return "rem26";
    case CriterionId::rem29: return "rem29";
    case CriterionId::thm28i: return "thm28i";
    case CriterionId::thm28ii: return "thm28ii";
  }
  return "?";
}

CriterionId criterion_id_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(CriterionId::thm28ii); ++i) {
    const auto id = static_cast<CriterionId>(i);
    if (to_string(id) == s) return id;
  }
  throw ArgumentError("unknown criterion '" + s + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated: return "violated";
    case Verdict::diverges: return "diverges";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict tail_verdict(std::span<const double> terms, double ceiling) {
  if (terms.empty()) return Verdict::satisfied;
  const auto window = terms.subspan(terms.size() / 2);
  for (double t : window) {
    if (std::isnan(t)) return Verdict::inconclusive;
  }
  const bool nondecreasing = std::is_sorted(window.begin(), window.end());
  const double last = window.back();
  const double peak = *std::max_element(window.begin(), window.end());
  if (nondecreasing && last > ceiling) return Verdict::diverges;
  if (peak > ceiling) return Verdict::inconclusive;
  if (!nondecreasing || window.size() < 3 || window.front() == last) return Verdict::satisfied;
  // Increasing but bounded: accept only if the second half of the window
  // grows at most half as much as the first half.
  const std::size_t mid = window.size() / 2;
  const double first = window[mid] - window.front();
  const double second = last - window[mid];
  return second <= 0.5 * first ? Verdict::satisfied : Verdict::inconclusive;
}

double gch_ratio(const YoungFunction& phi, const SubAlgebra& alg, const MeasurableFn& f,
                 const MeasurableFn& g, const YoungFunction* second) {
  require_same_space(f.space(), alg.space(), "gch_ratio");
  require_same_space(g.space(), alg.space(), "gch_ratio");
  const YoungFunction psi = second ? *second : conjugate(phi);
  double worst = 0.0;
  for (const Block& b : alg.blocks()) {
    double efg = 0.0;
    double ephi = 0.0;
    double epsi = 0.0;
    for (std::size_t c : b.cells) {
      const double m = alg.space().mass(c);
      const double a = std::abs(f[c]);
      const double d = std::abs(g[c]);
      efg += a * d * m;
      if (a != 0.0) ephi += eval(phi, a) * m;
      if (d != 0.0) epsi += eval(psi, d) * m;
    }
    const double denom = inverse(phi, ephi / b.mass) * inverse(psi, epsi / b.mass);
    if (!(denom > 0.0) || !std::isfinite(denom)) continue;
    worst = std::max(worst, (efg / b.mass) / denom);
  }
  return worst;
}

GchEstimate gch_constant(const YoungFunction& phi, const SubAlgebra& alg, std::size_t samples,
                         std::uint64_t seed, const YoungFunction* second) {
  if (samples < 1) throw ArgumentError("gch_constant needs samples >= 1");
  const YoungFunction psi = second ? *second : conjugate(phi);
  const auto& space = alg.space_ptr();
  GchEstimate est;
  auto offer = [&](MeasurableFn f, MeasurableFn g) {
    ++est.pairs_tried;
    const double r = gch_ratio(phi, alg, f, g, &psi);
    if (r > est.constant || !est.worst) {
      est.constant = std::max(est.constant, r);
      est.worst.emplace(std::move(f), std::move(g));
    }
  };

  const double scales[] = {1e-2, 1.0, 1e2};
  for (const Block& b : alg.blocks()) {
    for (double t : scales) {
      auto chi = MeasurableFn::indicator(space, b.cells);
      offer(t * chi, t * chi);
    }
  }
  for (std::size_t c = 0; c < space->size(); ++c) {
    const std::size_t one[] = {c};
    const auto chi = MeasurableFn::indicator(space, one);
    for (double t : scales) {
      for (double s : scales) offer(t * chi, s * chi);
    }
  }

  detail::Rng rng(seed);
  auto random_fn = [&] {
    std::vector<Complex> v(space->size());
    for (auto& z : v) {
      if (rng.coin(0.25)) continue;
      const double mag = std::exp(rng.uniform(-3.0, 3.0));
      z = rng.coin(0.5) ? mag : -mag;
    }
    return MeasurableFn(space, std::move(v));
  };
  for (std::size_t k = 0; k < samples; ++k) {
    auto f = random_fn();
    auto g = random_fn();
    offer(std::move(f), std::move(g));
  }
  return est;
}

double gch_structural_constant(const SubAlgebra& alg) {
  double c = 0.0;
  for (const Block& b : alg.blocks()) {
    double s = 0.0;
    for (std::size_t cell : b.cells) s += b.mass / alg.space().mass(cell);
    c = std::max(c, s);
  }
  return c;
}

Thm22Reports thm22_check(const MeasurableFn& u, const YoungFunction& phi, const YoungFunction& psi,
                         const SubAlgebra& alg, bool finite_measure, const GchConstant& gch) {
  require_same_space(u.space(), alg.space(), "thm22_check");
  const bool global = !finite_measure;
  const std::string mode = global ? "global" : "eventual";
  const YoungFunction psi_star = conjugate(psi);

  Thm22Reports out{CriterionReport(CriterionId::thm22a_i), CriterionReport(CriterionId::thm22a_ii),
                   CriterionReport(CriterionId::thm22b)};

  // (a): Phi precedes Psi, i.e. Phi(x) <= Psi(a x).
  const bool phi_below = certified(growth(psi, GrowthCondition::precedes, &phi), global);
  const auto eu = block_values(cond_exp(u, alg), alg);
  std::vector<double> eu_abs(eu.size());
  for (std::size_t i = 0; i < eu.size(); ++i) eu_abs[i] = std::abs(eu[i]);
  const auto m_vals = block_average(u, alg, [&](double a) { return eval(psi_star, a); });
  std::vector<double> m_inv(m_vals.size());
  for (std::size_t i = 0; i < m_vals.size(); ++i) m_inv[i] = m_vals[i] == 0.0 ? 0.0 : inverse(psi_star, m_vals[i]);

  auto fill = [&](CriterionReport& r, const std::vector<double>& vals) {
    const auto [sup, v] = sup_of(vals, false);
    r.quantity = sup;
    for (std::size_t i = 0; i < vals.size(); ++i) r.per_atom_trace.push_back({i + 1, vals[i]});
    r.verdict = all_hold(r.hypotheses) ? v : Verdict::inconclusive;
    r.notes.push_back("trace index is the block index; ordering checked " + mode + "ly");
  };

  out.a_i.hypotheses["phi_precedes_psi"] = phi_below;
  fill(out.a_i, eu_abs);
  out.a_ii.hypotheses["phi_precedes_psi"] = phi_below;
  out.a_ii.hypotheses["psi_delta_prime"] = growth(psi, GrowthCondition::delta_prime).holds_globally;
  fill(out.a_ii, m_inv);

  // (b): Psi precedes Phi, i.e. Psi(x) <= Phi(a x); the bound is C M a (Psi(T) mu + 1).
  auto& b = out.b;
  const auto grid = standard_grid();
  std::vector<double> need(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) need[i] = inverse(phi, eval(psi, grid[i])) / grid[i];
  const GrowthReport order = check_growth(phi, GrowthCondition::precedes, grid, &psi);
  b.hypotheses["psi_precedes_phi"] = certified(order, global);
  b.hypotheses["gch"] = true;
  fill(b, m_inv);
  b.notes.push_back("GCH constant " + std::to_string(gch.value) + " (" + gch.source + ")");
  if (b.verdict == Verdict::satisfied) {
    const double m = b.quantity;
    if (m == 0.0) {
      b.bound = 0.0;
    } else if (global) {
      b.bound = gch.value * m * order.witness_constant;
    } else {
      double best = kInf;
      double tail = 0.0;
      const double mu = alg.space().total_mass();
      for (std::size_t k = grid.size(); k-- > 0;) {
        tail = std::max(tail, need[k]);
        if (grid[k] < order.threshold_x0) break;
        best = std::min(best, gch.value * m * tail * (eval(psi, grid[k]) * mu + 1.0));
      }
      b.bound = best;
    }
  }
  return out;
}

CriterionReport thm23_check(const YoungFunction& phi, const YoungFunction& psi,
                            const AtomSource& source, const std::optional<YoungFunction>& theta) {
  const Profile p = profile_of(source);
  const YoungFunction phi_star = conjugate(phi);
  const YoungFunction psi_star = conjugate(psi);
  CriterionReport r(theta ? CriterionId::thm23a : CriterionId::thm23b);

  const bool phi_star_dp = growth(phi_star, GrowthCondition::delta_prime).holds_globally;
  if (theta) {
    const auto comp = YoungFunction::compose_of(phi_star, psi_star, true);
    r.hypotheses["phi_star_delta_prime"] = phi_star_dp;
    r.hypotheses["theta_nabla_prime"] = growth(*theta, GrowthCondition::nabla_prime).holds_globally;
    r.hypotheses["composition_precedes_theta"] =
        growth(*theta, GrowthCondition::precedes, &comp).holds_globally;
  } else {
    // Either the sufficiency hypotheses or the necessity hypotheses make the
    // condition meaningful; both sets are reported.
    const bool inv_dp = delta_prime_global([&](double x) { return inverse(psi_star, x); });
    const bool comp_young = is_young_composition(phi_star, psi_star).is_young;
    const bool nabla = growth(phi_star, GrowthCondition::nabla_prime).holds_globally;
    r.hypotheses["phi_star_delta_prime"] = phi_star_dp;
    r.hypotheses["psi_star_inverse_delta_prime"] = inv_dp;
    r.hypotheses["composition_is_young"] = comp_young;
    r.hypotheses["phi_star_nabla_prime"] = nabla;
    r.notes.push_back(std::string("sufficiency hypotheses ") + (phi_star_dp && inv_dp ? "hold" : "fail") +
                      ", necessity hypotheses " + (comp_young && nabla ? "hold" : "fail"));
  }

  const auto phi_star_fn = [&](double a) { return eval(phi_star, a); };
  const auto [on_b, zero_b] = zero_on_b(p, phi_star_fn);
  std::vector<double> terms;
  terms.reserve(p.atoms.size());
  for (const Group& g : p.atoms) {
    const double e = g.average(phi_star_fn);
    if (e == 0.0) {
      terms.push_back(0.0);
    } else if (theta) {
      terms.push_back(e * g.mass / eval(phi_star, inverse(psi_star, g.mass)));
    } else {
      terms.push_back(e * g.mass * eval(phi_star, inverse(psi_star, 1.0 / g.mass)));
    }
  }
  const auto [sup, v] = sup_of(terms, p.symbolic);
  r.quantity = sup;
  r.per_atom_trace = trace_of(p, terms);
  r.notes.push_back("max of E(Phi*(|u|)) on the non-atomic part: " + std::to_string(on_b));

  bool meaningful = all_hold(r.hypotheses);
  if (!theta) {
    meaningful = (r.hypotheses["phi_star_delta_prime"] && r.hypotheses["psi_star_inverse_delta_prime"]) ||
                 (r.hypotheses["composition_is_young"] && r.hypotheses["phi_star_nabla_prime"]);
  }
  if (p.sup_u == 0.0) {
    r.verdict = Verdict::satisfied;
  } else if (!meaningful) {
    r.verdict = Verdict::inconclusive;
  } else if (!zero_b) {
    r.verdict = Verdict::violated;
  } else {
    r.verdict = v;
  }
  return r;
}

CriterionReport prop24_check(const YoungFunction& phi, const YoungFunction& psi,
                             const AtomSource& source, const std::optional<YoungFunction>& theta) {
  const Profile p = profile_of(source);
  const YoungFunction phi_star = conjugate(phi);
  CriterionReport r(CriterionId::prop24);
  r.hypotheses["phi_delta_prime"] = growth(phi, GrowthCondition::delta_prime).holds_globally;
  r.hypotheses["psi_delta_prime"] = growth(psi, GrowthCondition::delta_prime).holds_globally;

  const auto comp = YoungFunction::compose_of(psi, phi, true);
  const bool comp_young = is_young_composition(psi, phi).is_young;
  double at_one = 0.0;
  if (comp_young) {
    r.hypotheses["composition_is_young"] = true;
    at_one = eval(comp, 1.0);
  } else {
    if (!theta) {
      throw ArgumentError("prop24_check: Psi o Phi^-1 is not a Young function and no Theta was given");
    }
    r.hypotheses["composition_precedes_theta"] =
        growth(*theta, GrowthCondition::precedes, &comp).holds_eventually;
    at_one = eval(*theta, 1.0);
  }

  const auto phi_star_fn = [&](double a) { return eval(phi_star, a); };
  const auto [on_b, zero_b] = zero_on_b(p, phi_star_fn);
  std::vector<double> terms;
  terms.reserve(p.atoms.size());
  for (const Group& g : p.atoms) {
    const double e = g.average(phi_star_fn);
    terms.push_back(e == 0.0 ? 0.0
                             : eval(phi, inverse(phi_star, e)) * g.mass / eval(comp, 1.0 / g.mass));
  }
  const auto [sup, v] = sup_of(terms, p.symbolic);
  r.quantity = sup;
  r.per_atom_trace = trace_of(p, terms);
  r.notes.push_back("max of E(Phi*(|u|)) on the non-atomic part: " + std::to_string(on_b));

  if (p.sup_u == 0.0) {
    r.verdict = Verdict::satisfied;
  } else if (!all_hold(r.hypotheses)) {
    r.verdict = Verdict::inconclusive;
  } else if (!zero_b) {
    r.verdict = Verdict::violated;
  } else {
    r.verdict = v;
  }
  if (r.verdict == Verdict::satisfied) r.bound = sup * at_one + 1.0;
  return r;
}

CriterionReport lp_lq_check(double p, double q, const AtomSource& source) {
  if (!(p > 1.0) || !(q > 1.0)) throw ArgumentError("lp_lq_check needs p, q > 1");
  if (p == q) throw ArgumentError("lp_lq_check needs p != q");
  const Profile prof = profile_of(source);
  const double pc = p / (p - 1.0);
  const double qc = q / (q - 1.0);
  const auto pow_pc = [&](double a) { return std::pow(a, pc); };

  if (p < q) {
    CriterionReport r(CriterionId::rem26);
    const auto [on_b, zero_b] = zero_on_b(prof, pow_pc);
    const double expo = pc / qc - 1.0;
    std::vector<double> terms;
    terms.reserve(prof.atoms.size());
    for (const Group& g : prof.atoms) terms.push_back(g.average(pow_pc) / std::pow(g.mass, expo));
    const auto [sup, v] = sup_of(terms, prof.symbolic);
    r.quantity = sup;
    r.per_atom_trace = trace_of(prof, terms);
    r.notes.push_back("max of E(|u|^p') on the non-atomic part: " + std::to_string(on_b));
    r.verdict = zero_b ? v : Verdict::violated;
    return r;
  }

  // p > q: integral of E(|u|^{p'})^{r/p'} over blocks, as partial sums over atoms.
  CriterionReport r(CriterionId::rem29);
  const double rr = p * q / (p - q);
  double carrier_part = 0.0;
  for (const Group& g : prof.carriers) carrier_part += g.mass * std::pow(g.average(pow_pc), rr / pc);
  std::vector<double> partial;
  partial.reserve(prof.atoms.size());
  double s = carrier_part;
  for (const Group& g : prof.atoms) {
    s += g.mass * std::pow(g.average(pow_pc), rr / pc);
    partial.push_back(s);
  }
  r.per_atom_trace = trace_of(prof, partial);
  r.notes.push_back("trace holds partial sums of the r-th power integral, r = " + std::to_string(rr));
  if (!std::isfinite(s)) {
    r.quantity = kInf;
    r.verdict = prof.symbolic ? Verdict::diverges : Verdict::violated;
    return r;
  }
  r.quantity = std::pow(s, 1.0 / rr);
  r.verdict = prof.symbolic ? tail_verdict(partial) : Verdict::satisfied;
  return r;
}

Thm28Reports thm28_check(const MeasurableFn& u, const YoungFunction& phi, const YoungFunction& psi,
                         const YoungFunction& theta, const SubAlgebra& alg, const GchConstant& gch,
                         std::span<const double> cert_grid) {
  require_same_space(u.space(), alg.space(), "thm28_check");
  const double excess = three_function_excess(psi, phi, theta, cert_grid);
  if (!(excess <= 1e-12)) {
    throw PreconditionError("Psi(xy) <= Phi(x) + Theta(y) fails on the certification grid (relative excess " +
                            std::to_string(excess) + ")");
  }
  const YoungFunction phi_star = conjugate(phi);
  const auto e_vals = block_average(u, alg, [&](double a) { return eval(phi_star, a); });

  Thm28Reports out{CriterionReport(CriterionId::thm28i), CriterionReport(CriterionId::thm28ii)};
  auto& ri = out.i;
  ri.hypotheses["three_function_inequality"] = true;
  ri.hypotheses["gch"] = true;
  std::vector<double> g_vals(e_vals.size());
  for (std::size_t i = 0; i < e_vals.size(); ++i) {
    g_vals[i] = e_vals[i] == 0.0 ? 0.0 : inverse(phi_star, e_vals[i]);
    ri.per_atom_trace.push_back({i + 1, g_vals[i]});
  }
  const double n_theta = lux_norm(theta, from_blocks(alg, g_vals)).value;
  ri.quantity = n_theta;
  ri.verdict = std::isfinite(n_theta) ? Verdict::satisfied : Verdict::violated;
  if (ri.verdict == Verdict::satisfied) ri.bound = 2.0 * gch.value * n_theta;
  ri.notes.push_back("certified on " + std::to_string(cert_grid.size()) + " grid points up to " +
                     std::to_string(cert_grid.empty() ? 0.0 : cert_grid.back()));
  ri.notes.push_back("GCH constant " + std::to_string(gch.value) + " (" + gch.source + ")");
  ri.notes.push_back("bound is 2 C N_Theta(...); the constant-free form is " + std::to_string(n_theta));

  auto& rii = out.ii;
  const auto theta2 = YoungFunction::compose_of(conjugate(psi), phi_star, true);
  const auto grid = standard_grid();
  rii.hypotheses["theta_is_young"] = check_young_invariants(theta2, grid).is_young;
  rii.hypotheses["theta_delta2"] = growth(theta2, GrowthCondition::delta2).holds_eventually;
  rii.hypotheses["phi_star_delta2"] = growth(phi_star, GrowthCondition::delta2).holds_eventually;
  for (std::size_t i = 0; i < e_vals.size(); ++i) rii.per_atom_trace.push_back({i + 1, e_vals[i]});
  if (rii.hypotheses["theta_is_young"]) {
    rii.quantity = modular(conjugate(theta2), from_blocks(alg, e_vals));
  } else {
    rii.quantity = kInf;
    rii.notes.push_back("Psi* o Phi*^-1 is not a Young function; modular not computed");
  }
  // On a finite model every finite function lies in every Orlicz space.
  rii.verdict = all_hold(rii.hypotheses) ? Verdict::satisfied : Verdict::inconclusive;
  return out;
}

}  // namespace orlicz_lab
