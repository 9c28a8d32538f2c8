#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orlicz_lab/criteria.hpp"
#include "orlicz_lab/wct.hpp"
#include "orlicz_lab/young.hpp"

namespace orlicz_lab {

enum class LevelClass { finitely_many_atoms, infinitely_many_atoms, contains_non_atomic_mass };

std::string to_string(LevelClass c);

struct LevelSetReport {
  double epsilon = 0.0;
  std::vector<std::string> members;  // block labels, or atom indices n as text
  std::vector<std::size_t> indices;  // block indices, or atom indices n
  LevelClass classification = LevelClass::finitely_many_atoms;
};

/// {|h| >= eps}. Finite case: h must be constant on blocks of the algebra.
/// Symbolic case: indices n <= depth, classified as infinitely many when the
/// predicate still holds somewhere in the last quarter of the index range.
LevelSetReport level_set(const AtomSource& h, double eps);

enum class BetaSource { atomic_limsup, non_atomic_esssup, max_of_both };

std::string to_string(BetaSource s);

struct BetaResult {
  double beta = 0.0;
  BetaSource source = BetaSource::non_atomic_esssup;
  // "exact" (finite), "extrapolated" (monotone tail), "window-max" or "unbounded".
  std::string tail = "exact";
};

/// inf{eps : {|h| >= eps} meets only finitely many A-atoms}. Finite models:
/// the essential sup over carrier blocks (0 without carriers). Symbolic
/// sequences: the limsup of |h(n)|, extrapolated from a monotone tail or
/// taken as the max over [N/2, N].
BetaResult beta(const AtomSource& h);

struct SandwichHypotheses {
  bool gch = true;
  bool masses_vanish_or_no_convergent_subsequence = true;
};

struct Sandwich {
  double lower = 0.0;
  double upper = 0.0;
  BetaResult lower_beta;
  BetaResult upper_beta;
  SandwichHypotheses hypotheses;
};

/// [beta(E u), C beta(Phi*^{-1}(E(Phi*(|u|))))].
Sandwich ess_norm_sandwich(const AtomSource& u, const YoungFunction& phi, double gch_c,
                           const SandwichHypotheses& hyp = {});

struct CurvePoint {
  std::size_t k = 0;
  double distance = 0.0;
};

struct TruncationOptions {
  double epsilon = 0.05;      // level above beta kept in the truncation
  std::size_t budget = 16;    // op_norm_lower budget per point
  std::size_t tail_atoms = 64;  // symbolic atoms materialized beyond max(ks)
  std::uint64_t seed = kDefaultSeed;
};

/// Lower estimates of ||R_u - R_{u chi_S}|| on L^Phi, where S is the first k
/// atoms together with the level set of Phi*^{-1}(E(Phi*(|u|))) at beta + eps.
/// Point k uses seed + k; a backward max pass makes the curve non-increasing.
std::vector<CurvePoint> truncation_distance_curve(const AtomSource& u, const YoungFunction& phi,
                                                  std::span<const std::size_t> ks,
                                                  const TruncationOptions& opt = {});

}  // namespace orlicz_lab
