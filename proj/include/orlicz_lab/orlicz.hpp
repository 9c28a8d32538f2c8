#pragma once

#include <span>
#include <vector>

#include "orlicz_lab/space.hpp"
#include "orlicz_lab/young.hpp"

namespace orlicz_lab {

struct NormResult {
  double value = 0.0;             // N_Phi(f)
  double modular_at_value = 0.0;  // integral of Phi(|f| / value)
  int iterations = 0;
};

/// integral of Phi(|f|) d mu; +inf when Phi overflows.
double modular(const YoungFunction& phi, const MeasurableFn& f);
double modular(const YoungFunction& phi, std::span<const double> abs_values,
               std::span<const double> masses);

/// Luxemburg norm inf{k > 0 : integral of Phi(|f| / k) <= 1}, by bisection on k.
/// The zero function has norm 0.
NormResult lux_norm(const YoungFunction& phi, const MeasurableFn& f);
NormResult lux_norm(const YoungFunction& phi, std::span<const double> abs_values,
                    std::span<const double> masses);

/// 2 N_Phi(f) N_{Phi*}(g) - integral of |f g|; nonnegative up to rounding.
double holder_defect(const YoungFunction& phi, const MeasurableFn& f, const MeasurableFn& g);

/// 2 N_1(f1) N_2(f2) - N_3(f1 f2), after certifying Phi3(xy) <= Phi1(x) + Phi2(y)
/// on all pairs of `grid`. Throws PreconditionError when certification fails.
double product_norm_defect(const YoungFunction& phi1, const YoungFunction& phi2,
                           const YoungFunction& phi3, const MeasurableFn& f1,
                           const MeasurableFn& f2, std::span<const double> grid);
double product_norm_defect(const YoungFunction& phi1, const YoungFunction& phi2,
                           const YoungFunction& phi3, const MeasurableFn& f1,
                           const MeasurableFn& f2);

std::vector<double> masses_of(const MeasureSpace& space);

}  // namespace orlicz_lab
