#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz_lab/space.hpp"
#include "orlicz_lab/wct.hpp"
#include "orlicz_lab/young.hpp"

namespace orlicz_lab {

enum class CriterionId {
  thm22a_i,
  thm22a_ii,
  thm22b,
  thm23a,
  thm23b,
  prop24,
  rem26,
  rem29,
  thm28i,
  thm28ii,
};

std::string to_string(CriterionId id);
CriterionId criterion_id_from_string(const std::string& s);

enum class Verdict { satisfied, violated, diverges, inconclusive };

std::string to_string(Verdict v);

struct TraceEntry {
  std::size_t n;
  double term;
};

struct CriterionReport {
  explicit CriterionReport(CriterionId id) : criterion_id(id) {}

  CriterionId criterion_id;
  double quantity = 0.0;  // +inf when unbounded
  Verdict verdict = Verdict::inconclusive;
  std::vector<TraceEntry> per_atom_trace;
  std::optional<double> bound;  // certified upper bound for the operator norm
  std::map<std::string, bool> hypotheses;
  std::vector<std::string> notes;
};

/// Divergence ceiling for the tail heuristic.
inline constexpr double kDivergenceCeiling = 1e12;

/// Decides whether sup_n terms[n] is finite from the window [N/2, N]:
/// diverges when the window is nondecreasing and ends above the ceiling,
/// satisfied when it stays below the ceiling and is either not monotone
/// increasing or increasing with shrinking increments, inconclusive otherwise.
Verdict tail_verdict(std::span<const double> terms, double ceiling = kDivergenceCeiling);

/// A weight on a finite model, or a closed-form sequence of A-atoms
/// (the weight is then constant on each atom and E acts as the identity).
struct FiniteWeight {
  MeasurableFn u;
  SubAlgebra alg;
};
using AtomSource = std::variant<FiniteWeight, SymbolicAtomSequence>;

/// The GCH constant fed into bounds, with where it came from
/// ("example", "structural", "estimated" or "user").
struct GchConstant {
  double value = 1.0;
  std::string source = "user";
};

/// Largest blockwise ratio E(|fg|) / [Phi^{-1}(E Phi|f|) Psi^{-1}(E Psi|g|)]
/// with Psi = `second` (Phi* when null). Blocks with a zero denominator are skipped.
double gch_ratio(const YoungFunction& phi, const SubAlgebra& alg, const MeasurableFn& f,
                 const MeasurableFn& g, const YoungFunction* second = nullptr);

struct GchEstimate {
  double constant = 0.0;
  std::optional<std::pair<MeasurableFn, MeasurableFn>> worst;
  std::size_t pairs_tried = 0;
};

/// Maximizes gch_ratio over `samples` random pairs plus indicator and spike
/// pairs. A lower bound for the smallest admissible C.
GchEstimate gch_constant(const YoungFunction& phi, const SubAlgebra& alg, std::size_t samples,
                         std::uint64_t seed = kDefaultSeed, const YoungFunction* second = nullptr);

/// max over blocks of sum_{c in block} mass(block) / mass(c). Valid as a GCH
/// constant for every pair of Young functions on this algebra.
double gch_structural_constant(const SubAlgebra& alg);

struct Thm22Reports {
  CriterionReport a_i;
  CriterionReport a_ii;
  CriterionReport b;
};

/// sup |E(u)|, sup Psi*^{-1}(E(Psi*(|u|))) and the resulting norm bound.
/// `finite_measure` selects eventual ordering with the (N + 1) factor, else
/// global ordering.
Thm22Reports thm22_check(const MeasurableFn& u, const YoungFunction& phi, const YoungFunction& psi,
                         const SubAlgebra& alg, bool finite_measure, const GchConstant& gch);

/// Per-atom terms E(Phi*(|u|))(A_n) mu(A_n) Phi*(Psi*^{-1}(1 / mu(A_n))) and
/// the zero-on-B check (thm23b), or with `theta` the variant dividing by
/// Phi*(Psi*^{-1}(mu(A_n))) (thm23a).
CriterionReport thm23_check(const YoungFunction& phi, const YoungFunction& psi,
                            const AtomSource& source,
                            const std::optional<YoungFunction>& theta = std::nullopt);

/// Per-atom terms Phi(Phi*^{-1}(E(Phi*(|u|))(A_n))) mu(A_n) / Psi(Phi^{-1}(1 / mu(A_n)))
/// with bound M Psi(Phi^{-1}(1)) + 1, or M Theta(1) + 1 when Psi o Phi^{-1}
/// is not a Young function and `theta` dominates it.
CriterionReport prop24_check(const YoungFunction& phi, const YoungFunction& psi,
                             const AtomSource& source,
                             const std::optional<YoungFunction>& theta = std::nullopt);

/// L^p -> L^q: per-atom terms E(|u|^{p'})(A_n) / mu(A_n)^{p'/q' - 1} (p < q),
/// or the L^r norm of E(|u|^{p'})^{1/p'} with r = pq / (p - q) (p > q).
CriterionReport lp_lq_check(double p, double q, const AtomSource& source);

struct Thm28Reports {
  CriterionReport i;
  CriterionReport ii;
};

/// Certifies Psi(xy) <= Phi(x) + Theta(y) on `cert_grid` pairs (throws
/// PreconditionError otherwise), then computes N_Theta(Phi*^{-1}(E(Phi*(|u|))))
/// and the modular of E(Phi*(|u|)) under (Psi* o Phi*^{-1})*.
Thm28Reports thm28_check(const MeasurableFn& u, const YoungFunction& phi, const YoungFunction& psi,
                         const YoungFunction& theta, const SubAlgebra& alg, const GchConstant& gch,
                         std::span<const double> cert_grid);

}  // namespace orlicz_lab
