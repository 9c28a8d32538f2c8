#include "orlicz_lab/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz_lab/errors.hpp"

namespace orlicz_lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e^t - t - 1 without cancellation for small t.
double exp_minus_linear(double t) {
  if (t < 0.1) {
    double term = t * t / 2.0;
    double sum = 0.0;
    for (int k = 2; k < 16; ++k) {
      sum += term;
      term *= t / (k + 1);
    }
    return sum;
  }
  return std::expm1(t) - t;
}

// (1 + t) log(1 + t) - t = sum_{k>=2} (-1)^k t^k / (k (k - 1)).
double entropy_kernel(double t) {
  if (std::isinf(t)) return kInf;
  if (t < 0.1) {
    double power = t * t;
    double sum = 0.0;
    for (int k = 2; k < 28; ++k) {
      const double term = power / (static_cast<double>(k) * (k - 1));
      sum += (k % 2 == 0) ? term : -term;
      power *= t;
    }
    return sum;
  }
  const double v = (1.0 + t) * std::log1p(t);
  if (std::isinf(v)) return kInf;
  return v - t;
}

void require_positive_param(double p, const char* what) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ArgumentError(std::string(what) + " must be a positive finite real");
  }
}

double tabulated_eval(const std::vector<std::pair<double, double>>& t, double x) {
  if (x == 0.0) return 0.0;
  const double lo = t.front().first;
  const double hi = t.back().first;
  const double slack = 1e-12 * hi;
  if (x < lo * (1.0 - 1e-12) || x > hi + slack) {
    throw RangeError("tabulated Young function evaluated outside its table range");
  }
  x = std::clamp(x, lo, hi);
  auto it = std::lower_bound(t.begin(), t.end(), x,
                             [](const auto& pt, double v) { return pt.first < v; });
  if (it == t.begin()) return t.front().second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double w = (std::log(x) - std::log(x0)) / (std::log(x1) - std::log(x0));
  return std::exp(std::log(y0) + w * (std::log(y1) - std::log(y0)));
}

double tabulated_inverse(const std::vector<std::pair<double, double>>& t, double y) {
  if (y < t.front().second * (1.0 - 1e-12) || y > t.back().second * (1.0 + 1e-12)) {
    throw NumericError("cannot bracket inverse of tabulated Young function at y = " +
                       std::to_string(y));
  }
  y = std::clamp(y, t.front().second, t.back().second);
  auto it = std::lower_bound(t.begin(), t.end(), y,
                             [](const auto& pt, double v) { return pt.second < v; });
  if (it == t.begin()) return t.front().first;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double w = (std::log(y) - std::log(y0)) / (std::log(y1) - std::log(y0));
  return std::exp(std::log(x0) + w * (std::log(x1) - std::log(x0)));
}

// Maximizes a concave function on [a, b] by golden-section search and returns
// the best value seen.
template <class F>
double golden_max(F&& g, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = g(c);
  double fd = g(d);
  double best = std::max({g(a), g(b), fc, fd});
  for (int it = 0; it < Tolerances::max_iterations; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= Tolerances::rel_tol * 1e-3 * mid || b - a <= std::numeric_limits<double>::min()) {
      break;
    }
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = g(c);
      best = std::max(best, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = g(d);
      best = std::max(best, fd);
    }
  }
  return best;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::power: return "power";
    case Family::power_scaled: return "power_scaled";
    case Family::exp_power: return "exp_power";
    case Family::entropy: return "entropy";
    case Family::log_quotient: return "log_quotient";
    case Family::exp_quartic: return "exp_quartic";
    case Family::tabulated: return "tabulated";
    case Family::conjugate_of: return "conjugate_of";
    case Family::compose_of: return "compose_of";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::power, Family::power_scaled, Family::exp_power, Family::entropy,
                   Family::log_quotient, Family::exp_quartic, Family::tabulated,
                   Family::conjugate_of, Family::compose_of}) {
    if (to_string(f) == s) return f;
  }
  // Accept the hyphenated spellings as well.
  std::string alt = s;
  std::replace(alt.begin(), alt.end(), '-', '_');
  if (alt != s) return family_from_string(alt);
  throw ArgumentError("unknown Young function family '" + s + "'");
}

YoungFunction YoungFunction::power(double p) {
  require_positive_param(p, "power exponent");
  return YoungFunction(Family::power, {p});
}

YoungFunction YoungFunction::power_scaled(double p) {
  require_positive_param(p, "power_scaled exponent");
  return YoungFunction(Family::power_scaled, {p});
}

YoungFunction YoungFunction::exp_power(double p) {
  require_positive_param(p, "exp_power exponent");
  return YoungFunction(Family::exp_power, {p});
}

YoungFunction YoungFunction::entropy(double p) {
  require_positive_param(p, "entropy exponent");
  return YoungFunction(Family::entropy, {p});
}

YoungFunction YoungFunction::log_quotient() { return YoungFunction(Family::log_quotient, {}); }

YoungFunction YoungFunction::exp_quartic() { return YoungFunction(Family::exp_quartic, {}); }

YoungFunction YoungFunction::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) throw ArgumentError("tabulated Young function needs at least 2 samples");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [x, y] = table[i];
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw ArgumentError("tabulated samples must be positive and finite");
    }
    if (i > 0 && !(x > table[i - 1].first && y > table[i - 1].second)) {
      throw ArgumentError("tabulated samples must be strictly increasing in x and Phi(x)");
    }
  }
  YoungFunction out(Family::tabulated, {});
  out.table_ = std::move(table);
  return out;
}

YoungFunction YoungFunction::conjugate_of(const YoungFunction& inner) {
  YoungFunction out(Family::conjugate_of, {});
  out.lhs_ = std::make_shared<const YoungFunction>(inner);
  return out;
}

YoungFunction YoungFunction::compose_of(const YoungFunction& outer, const YoungFunction& inner,
                                        bool invert_inner) {
  YoungFunction out(Family::compose_of, {});
  out.lhs_ = std::make_shared<const YoungFunction>(outer);
  out.rhs_ = std::make_shared<const YoungFunction>(inner);
  out.invert_inner_ = invert_inner;
  return out;
}

std::optional<double> YoungFunction::exponent() const noexcept {
  if (family_ == Family::power || family_ == Family::power_scaled) return params_[0];
  return std::nullopt;
}

double YoungFunction::operator()(double x) const { return eval(*this, x); }

std::string YoungFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case Family::power:
    case Family::power_scaled:
    case Family::exp_power:
    case Family::entropy:
      os << to_string(family_) << "(p=" << params_[0] << ")";
      break;
    case Family::log_quotient:
    case Family::exp_quartic:
      os << to_string(family_);
      break;
    case Family::tabulated:
      os << "tabulated(" << table_.size() << " samples)";
      break;
    case Family::conjugate_of:
      os << "conjugate_of(" << lhs_->describe() << ")";
      break;
    case Family::compose_of:
      os << "compose_of(" << lhs_->describe() << ", " << (invert_inner_ ? "inverse " : "")
         << rhs_->describe() << ")";
      break;
  }
  return os.str();
}

bool operator==(const YoungFunction& a, const YoungFunction& b) {
  if (a.family_ != b.family_ || a.params_ != b.params_ || a.table_ != b.table_ ||
      a.invert_inner_ != b.invert_inner_) {
    return false;
  }
  auto same = [](const std::shared_ptr<const YoungFunction>& x,
                 const std::shared_ptr<const YoungFunction>& y) {
    if (!x || !y) return !x && !y;
    return *x == *y;
  };
  return same(a.lhs_, b.lhs_) && same(a.rhs_, b.rhs_);
}

double eval(const YoungFunction& phi, double x) {
  if (!(x >= 0.0)) throw DomainError("Young function evaluated at a negative argument");
  if (x == 0.0) return 0.0;
  switch (phi.family()) {
    case Family::power:
      return std::pow(x, phi.params()[0]);
    case Family::power_scaled: {
      const double p = phi.params()[0];
      return std::pow(x, p) / p;
    }
    case Family::exp_power:
      return exp_minus_linear(std::pow(x, phi.params()[0]));
    case Family::entropy:
      return entropy_kernel(std::pow(x, phi.params()[0]));
    case Family::log_quotient:
      if (std::isinf(x)) return kInf;
      return x * x / std::log(std::exp(1.0) + x);
    case Family::exp_quartic: {
      const double x2 = x * x;
      return std::expm1(x2 * x2);
    }
    case Family::tabulated:
      return tabulated_eval(phi.table(), x);
    case Family::conjugate_of:
      return conjugate_eval(*phi.first_operand(), x);
    case Family::compose_of: {
      const YoungFunction& inner = *phi.second_operand();
      const double t = phi.inverts_inner() ? inverse(inner, x) : eval(inner, x);
      return eval(*phi.first_operand(), t);
    }
  }
  return 0.0;
}

double inverse(const YoungFunction& phi, double y) {
  if (!(y >= 0.0)) throw DomainError("inverse of a Young function at a negative argument");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return kInf;
  switch (phi.family()) {
    case Family::power:
      return std::pow(y, 1.0 / phi.params()[0]);
    case Family::power_scaled: {
      const double p = phi.params()[0];
      return std::pow(p * y, 1.0 / p);
    }
    case Family::tabulated:
      return tabulated_inverse(phi.table(), y);
    default:
      break;
  }

  auto below = [&](double x) {
    const double v = eval(phi, x);
    if (std::isnan(v)) throw NumericError("Young function returned NaN during inversion");
    return v < y;
  };

  double lo = 0.0;
  double hi = 1.0;
  int expansions = 0;
  if (below(1.0)) {
    lo = 1.0;
    hi = 2.0;
    while (below(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++expansions > Tolerances::max_expansions || std::isinf(hi)) {
        throw NumericError("failed to bracket inverse at y = " + std::to_string(y));
      }
    }
  } else {
    lo = 0.5;
    while (!below(lo)) {
      hi = lo;
      lo *= 0.5;
      if (++expansions > Tolerances::max_expansions || lo == 0.0) {
        throw NumericError("failed to bracket inverse at y = " + std::to_string(y));
      }
    }
  }
  // Bisect to machine precision; rel_tol is an upper bound on the error.
  for (int it = 0; it < Tolerances::max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      break;
    }
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double conjugate_eval(const YoungFunction& phi, double y) {
  if (!(y >= 0.0)) throw DomainError("conjugate evaluated at a negative argument");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return kInf;
  if (phi.family() == Family::power_scaled) {
    const double p = phi.params()[0];
    const double q = p / (p - 1.0);
    if (!(p > 1.0)) return kInf;
    return std::pow(y, q) / q;
  }

  auto objective = [&](double x) {
    const double v = eval(phi, x);
    if (std::isinf(v)) return -kInf;
    return x * y - v;
  };
  constexpr double h = 1e-7;

  if (phi.family() == Family::tabulated) {
    const auto& t = phi.table();
    const double x0 = t.front().first;
    const double xn = t.back().first;
    const double back_slope = (eval(phi, xn) - eval(phi, xn * (1.0 - h))) / (xn * h);
    if (y - back_slope > 0.0) {
      throw NumericError("conjugate of tabulated function is unbounded within its table");
    }
    return std::max(0.0, golden_max(objective, x0, xn));
  }

  auto slope_positive = [&](double b) {
    const double v1 = eval(phi, b);
    const double v2 = eval(phi, b * (1.0 + h));
    if (!std::isfinite(v2)) return false;
    return y - (v2 - v1) / (b * h) > 0.0;
  };

  double lo = 0.0;
  double hi = 1.0;
  int expansions = 0;
  while (slope_positive(hi)) {
    lo = hi;
    hi *= 2.0;
    if (std::isinf(hi)) return kInf;  // supremum leaves the double range
    if (++expansions > Tolerances::max_expansions) {
      throw NumericError("unbounded conjugate maximization at y = " + std::to_string(y));
    }
  }
  return std::max(0.0, golden_max(objective, lo, hi));
}

YoungFunction conjugate(const YoungFunction& phi) {
  if (phi.family() == Family::power_scaled) {
    const double p = phi.params()[0];
    if (p > 1.0) return YoungFunction::power_scaled(p / (p - 1.0));
  }
  return YoungFunction::conjugate_of(phi);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ArgumentError("log_grid needs 0 < lo < hi, n >= 2");
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> standard_grid() { return log_grid(1e-3, 1e3, 64); }

std::string to_string(GrowthCondition c) {
  switch (c) {
    case GrowthCondition::delta2: return "delta2";
    case GrowthCondition::delta_prime: return "delta-prime";
    case GrowthCondition::nabla_prime: return "nabla-prime";
    case GrowthCondition::precedes: return "precedes";
  }
  return "unknown";
}

GrowthCondition growth_condition_from_string(const std::string& s) {
  for (auto c : {GrowthCondition::delta2, GrowthCondition::delta_prime,
                 GrowthCondition::nabla_prime, GrowthCondition::precedes}) {
    if (to_string(c) == s) return c;
  }
  if (s == "delta_prime") return GrowthCondition::delta_prime;
  if (s == "nabla_prime") return GrowthCondition::nabla_prime;
  throw ArgumentError("unknown growth condition '" + s + "'");
}

namespace {

constexpr double kGrowthTol = 1e-3;

// Required constants on a grid: a vector (1-D conditions) or an n x n matrix
// (pairwise conditions), stored row-major.
struct RequiredConstants {
  std::size_t n = 0;
  bool pairwise = false;
  std::vector<double> v;

  double at(std::size_t i, std::size_t j) const { return pairwise ? v[i * n + j] : v[i]; }

  // sup over the box k <= i, j <= m (j ignored when not pairwise).
  double box_max(std::size_t k, std::size_t m_end) const {
    double s = -kInf;
    for (std::size_t i = k; i < m_end; ++i) {
      if (!pairwise) {
        s = std::max(s, v[i]);
        continue;
      }
      for (std::size_t j = k; j < m_end; ++j) s = std::max(s, v[i * n + j]);
    }
    return s;
  }

  bool finite_from(std::size_t k) const {
    for (std::size_t i = k; i < n; ++i) {
      if (!pairwise) {
        if (!std::isfinite(v[i])) return false;
        continue;
      }
      for (std::size_t j = k; j < n; ++j) {
        if (!std::isfinite(v[i * n + j])) return false;
      }
    }
    return true;
  }
};

double safe_ratio(double num, double den) {
  if (std::isnan(num) || std::isnan(den)) return kInf;
  if (std::isinf(num)) return kInf;
  if (den <= 0.0) return num <= 0.0 ? 0.0 : kInf;
  return num / den;
}

}  // namespace

GrowthReport check_growth(const YoungFunction& phi, GrowthCondition condition,
                          std::span<const double> grid, const YoungFunction* psi) {
  if (condition == GrowthCondition::precedes && psi == nullptr) {
    throw ArgumentError("check_growth(precedes) requires psi");
  }
  if (grid.size() < 8) throw ArgumentError("check_growth needs a grid of at least 8 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw ArgumentError("check_growth grid must be positive and strictly increasing");
    }
  }

  const std::size_t n = grid.size();
  RequiredConstants rc;
  rc.n = n;
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = eval(phi, grid[i]);

  switch (condition) {
    case GrowthCondition::delta2:
      rc.v.resize(n);
      for (std::size_t i = 0; i < n; ++i) rc.v[i] = safe_ratio(eval(phi, 2.0 * grid[i]), values[i]);
      break;
    case GrowthCondition::precedes:
      rc.v.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        rc.v[i] = safe_ratio(inverse(phi, eval(*psi, grid[i])), grid[i]);
      }
      break;
    case GrowthCondition::delta_prime:
      rc.pairwise = true;
      rc.v.resize(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          rc.v[i * n + j] = safe_ratio(eval(phi, grid[i] * grid[j]), values[i] * values[j]);
        }
      }
      break;
    case GrowthCondition::nabla_prime:
      rc.pairwise = true;
      rc.v.resize(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double prod = values[i] * values[j];
          rc.v[i * n + j] = safe_ratio(inverse(phi, prod), grid[i] * grid[j]);
        }
      }
      break;
  }

  const std::size_t tail_start = n - n / 4;
  auto tail_stable = [&](std::size_t k) {
    if (k + 1 >= tail_start || !rc.finite_from(k)) return false;
    const double before = rc.box_max(k, tail_start);
    const double all = rc.box_max(k, n);
    return all <= before * (1.0 + kGrowthTol);
  };

  GrowthReport report{condition, false, false, kInf, 0.0, {grid.begin(), grid.end()}};
  std::optional<std::size_t> threshold;
  for (std::size_t k = 0; k + 1 < tail_start; ++k) {
    if (tail_stable(k)) {
      threshold = k;
      break;
    }
  }
  if (!threshold) {
    double s = -kInf;
    for (double x : rc.v) s = std::max(s, x);
    report.witness_constant = s;
    report.threshold_x0 = grid.back();
    return report;
  }
  report.holds_eventually = true;
  report.threshold_x0 = grid[*threshold];
  report.witness_constant = rc.box_max(*threshold, n);
  if (*threshold == 0) {
    const double rest = [&] {
      double s = -kInf;
      for (std::size_t i = n / 4; i < n; ++i) {
        if (!rc.pairwise) {
          s = std::max(s, rc.v[i]);
          continue;
        }
        for (std::size_t j = n / 4; j < n; ++j) s = std::max(s, rc.at(i, j));
      }
      return s;
    }();
    report.holds_globally = report.witness_constant <= rest * (1.0 + kGrowthTol);
  }
  return report;
}

double three_function_excess(const YoungFunction& psi, const YoungFunction& phi1,
                             const YoungFunction& phi2, std::span<const double> grid) {
  double worst = -kInf;
  for (double x : grid) {
    const double fx = eval(phi1, x);
    for (double y : grid) {
      const double rhs = fx + eval(phi2, y);
      const double lhs = eval(psi, x * y);
      double excess;
      if (std::isinf(rhs)) {
        excess = -1.0;
      } else if (std::isinf(lhs)) {
        excess = kInf;
      } else {
        excess = (lhs - rhs) / std::max(rhs, std::numeric_limits<double>::min());
      }
      worst = std::max(worst, excess);
    }
  }
  return worst;
}

CompositionCheck check_young_invariants(const YoungFunction& theta, std::span<const double> grid) {
  CompositionCheck out;
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = eval(theta, grid[i]);

  const double at_zero = eval(theta, 0.0);
  if (std::abs(at_zero) > 1e-12 * std::max(v.front(), 1e-300)) {
    out.first_violation = "zero-at-zero";
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      out.first_violation = "positivity";
      return out;
    }
    if (i > 0 && v[i] < v[i - 1] * (1.0 - 1e-12)) {
      out.first_violation = "monotonicity";
      return out;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      if (std::isinf(v[i]) || std::isinf(v[j])) continue;
      const double mid = eval(theta, 0.5 * (grid[i] + grid[j]));
      if (mid > 0.5 * (v[i] + v[j]) * (1.0 + 1e-9)) {
        out.first_violation = "convexity";
        return out;
      }
    }
  }
  std::size_t last = v.size() - 1;
  while (last > 0 && !std::isfinite(v[last])) --last;
  const double growth = (v[last] / grid[last]) / (v.front() / grid.front());
  if (!(growth > 1.0 + 1e-6)) {
    out.first_violation = "superlinearity";
    return out;
  }
  out.superlinearity_inconclusive = growth < 1.0 + 1e-2;
  out.is_young = true;
  return out;
}

CompositionCheck is_young_composition(const YoungFunction& outer,
                                      const YoungFunction& inner_inverse_of) {
  const auto grid = standard_grid();
  return check_young_invariants(YoungFunction::compose_of(outer, inner_inverse_of, true), grid);
}

}  // namespace orlicz_lab
