#pragma once

#include <cstdint>
#include <string>

#include "orlicz_lab/orlicz.hpp"
#include "orlicz_lab/space.hpp"
#include "orlicz_lab/young.hpp"

namespace orlicz_lab {

enum class OperatorKind { wct, mult };

std::string to_string(OperatorKind k);

/// R_u f = E(u f) (kind wct) or M_u f = u f (kind mult), from L^Phi to L^Psi.
struct OperatorSpec {
  OperatorSpec(MeasurableFn weight, SubAlgebra alg, YoungFunction domain_phi,
               YoungFunction codomain_psi, OperatorKind kind = OperatorKind::wct);

  MeasurableFn weight;
  SubAlgebra alg;
  YoungFunction domain_phi;
  YoungFunction codomain_psi;
  OperatorKind kind;
};

enum class SearchStrategy { atoms, random, ascent, all };

std::string to_string(SearchStrategy s);
SearchStrategy search_strategy_from_string(const std::string& s);

inline constexpr std::uint64_t kDefaultSeed = 7;

struct NormEstimate {
  double lower_bound = 0.0;
  MeasurableFn witness;
  std::size_t candidates_tried = 0;
  std::uint64_t seed = kDefaultSeed;
};

MeasurableFn apply(const OperatorSpec& op, const MeasurableFn& f);

/// N_Psi(op f) / N_Phi(f); 0 for f = 0.
double norm_ratio(const OperatorSpec& op, const MeasurableFn& f);

/// Lower bound for the operator norm from the best of: normalized block and
/// cell indicators (atoms), `budget` random sign/magnitude vectors (random),
/// and up to `budget` sweeps of coordinate ascent with steps x2, x0.5 and sign
/// flip from the best candidate (ascent). Deterministic for a fixed seed.
NormEstimate op_norm_lower(const OperatorSpec& op, SearchStrategy strategy, std::size_t budget,
                           std::uint64_t seed = kDefaultSeed);

/// <R_u f, g> - <f, M_{conj u} g> with <a, b> = integral of a conj(b).
/// Requires kind wct and g constant on every block.
Complex adjoint_defect(const OperatorSpec& op, const MeasurableFn& f, const MeasurableFn& g);

}  // namespace orlicz_lab
