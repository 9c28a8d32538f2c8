#include "orlicz_lab/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz_lab/errors.hpp"

namespace orlicz_lab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNormRelTol = 1e-12;
}  // namespace

std::vector<double> masses_of(const MeasureSpace& space) {
  std::vector<double> m(space.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = space.mass(i);
  return m;
}

double modular(const YoungFunction& phi, std::span<const double> abs_values,
               std::span<const double> masses) {
  double s = 0.0;
  for (std::size_t i = 0; i < abs_values.size(); ++i) {
    if (abs_values[i] == 0.0) continue;
    const double v = eval(phi, abs_values[i]);
    if (std::isinf(v)) return kInf;
    s += v * masses[i];
  }
  return s;
}

double modular(const YoungFunction& phi, const MeasurableFn& f) {
  return modular(phi, f.abs_values(), masses_of(f.space()));
}

NormResult lux_norm(const YoungFunction& phi, std::span<const double> abs_values,
                    std::span<const double> masses) {
  const double peak = abs_values.empty() ? 0.0 : *std::max_element(abs_values.begin(), abs_values.end());
  if (peak == 0.0) return {0.0, 0.0, 0};
  if (!std::isfinite(peak)) return {kInf, 0.0, 0};

  std::vector<double> scaled(abs_values.size());
  auto modular_at = [&](double k) {
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = abs_values[i] / k;
    return modular(phi, scaled, masses);
  };

  NormResult r;
  double hi = peak;
  double hi_mod = modular_at(hi);
  double lo = peak;
  int expansions = 0;
  if (hi_mod > 1.0) {
    do {
      lo = hi;
      hi *= 2.0;
      hi_mod = modular_at(hi);
      if (++expansions > Tolerances::max_expansions) throw NumericError("lux_norm: cannot bracket");
    } while (hi_mod > 1.0);
  } else {
    for (;;) {
      lo *= 0.5;
      const double m = modular_at(lo);
      if (m > 1.0) break;
      hi = lo;
      hi_mod = m;
      if (++expansions > Tolerances::max_expansions || lo == 0.0) {
        throw NumericError("lux_norm: cannot bracket");
      }
    }
  }
  // invariant: modular(lo) > 1 >= modular(hi)
  for (; r.iterations < Tolerances::max_iterations; ++r.iterations) {
    if (hi - lo <= kNormRelTol * hi) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double m = modular_at(mid);
    if (m > 1.0) {
      lo = mid;
    } else {
      hi = mid;
      hi_mod = m;
    }
  }
  r.value = hi;
  r.modular_at_value = hi_mod;
  return r;
}

NormResult lux_norm(const YoungFunction& phi, const MeasurableFn& f) {
  return lux_norm(phi, f.abs_values(), masses_of(f.space()));
}

double holder_defect(const YoungFunction& phi, const MeasurableFn& f, const MeasurableFn& g) {
  require_same_space(f.space(), g.space(), "holder_defect");
  const double nf = lux_norm(phi, f).value;
  const double ng = lux_norm(conjugate(phi), g).value;
  return 2.0 * nf * ng - integrate((f * g).abs()).real();
}

double product_norm_defect(const YoungFunction& phi1, const YoungFunction& phi2,
                           const YoungFunction& phi3, const MeasurableFn& f1,
                           const MeasurableFn& f2, std::span<const double> grid) {
  require_same_space(f1.space(), f2.space(), "product_norm_defect");
  const double excess = three_function_excess(phi3, phi1, phi2, grid);
  if (!(excess <= 1e-12)) {
    throw PreconditionError("Phi3(xy) <= Phi1(x) + Phi2(y) fails on the certification grid (relative excess " +
                            std::to_string(excess) + ")");
  }
  const double n1 = lux_norm(phi1, f1).value;
  const double n2 = lux_norm(phi2, f2).value;
  const double n3 = lux_norm(phi3, f1 * f2).value;
  return 2.0 * n1 * n2 - n3;
}

double product_norm_defect(const YoungFunction& phi1, const YoungFunction& phi2,
                           const YoungFunction& phi3, const MeasurableFn& f1,
                           const MeasurableFn& f2) {
  const auto grid = standard_grid();
  return product_norm_defect(phi1, phi2, phi3, f1, f2, grid);
}

}  // namespace orlicz_lab
