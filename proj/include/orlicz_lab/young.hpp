#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace orlicz_lab {

enum class Family {
  power,         // x^p
  power_scaled,  // x^p / p
  exp_power,     // e^{x^p} - x^p - 1
  entropy,       // (1 + x^p) log(1 + x^p) - x^p
  log_quotient,  // x^2 / log(e + x)
  exp_quartic,   // e^{x^4} - 1
  tabulated,
  conjugate_of,
  compose_of,
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// Numerical tolerances shared by the root finders and maximizers.
struct Tolerances {
  static constexpr double rel_tol = 1e-10;
  static constexpr int max_iterations = 200;
  // Enough doublings to leave the double range from 1, so overflow is
  // always reached before the expansion budget runs out.
  static constexpr int max_expansions = 1100;
};

/// A Young function Phi evaluated on x >= 0 (Phi is even, so |x| is implied).
///
/// Values are immutable; composite families share their operands through
/// `shared_ptr<const YoungFunction>`, so copies are cheap and thread-safe.
class YoungFunction {
 public:
  static YoungFunction power(double p);
  static YoungFunction power_scaled(double p);
  static YoungFunction exp_power(double p);
  static YoungFunction entropy(double p);
  static YoungFunction log_quotient();
  static YoungFunction exp_quartic();
  /// Strictly increasing samples (x, Phi(x)) with x > 0, Phi(x) > 0.
  static YoungFunction tabulated(std::vector<std::pair<double, double>> table);
  /// Phi* evaluated numerically through `conjugate_eval(inner, .)`.
  static YoungFunction conjugate_of(const YoungFunction& inner);
  /// outer(inner^{-1}(x)) when `invert_inner`, else outer(inner(x)).
  static YoungFunction compose_of(const YoungFunction& outer, const YoungFunction& inner,
                                  bool invert_inner);

  Family family() const noexcept { return family_; }
  std::span<const double> params() const noexcept { return params_; }
  const std::vector<std::pair<double, double>>& table() const noexcept { return table_; }
  const YoungFunction* first_operand() const noexcept { return lhs_.get(); }
  const YoungFunction* second_operand() const noexcept { return rhs_.get(); }
  bool inverts_inner() const noexcept { return invert_inner_; }

  /// Closed-form exponent for power families, empty otherwise.
  std::optional<double> exponent() const noexcept;

  double operator()(double x) const;

  std::string describe() const;

  friend bool operator==(const YoungFunction& a, const YoungFunction& b);

 private:
  YoungFunction(Family f, std::vector<double> params) : family_(f), params_(std::move(params)) {}

  Family family_;
  std::vector<double> params_;
  std::vector<std::pair<double, double>> table_;
  std::shared_ptr<const YoungFunction> lhs_;
  std::shared_ptr<const YoungFunction> rhs_;
  bool invert_inner_ = false;
};

double eval(const YoungFunction& phi, double x);

/// x with Phi(x) = y; bracket expansion plus bisection (closed form for power families).
double inverse(const YoungFunction& phi, double y);

/// Phi*(y) = sup_{x >= 0} (x y - Phi(x)).
double conjugate_eval(const YoungFunction& phi, double y);

/// The complementary function; power_scaled(p) maps to power_scaled(p / (p - 1)).
YoungFunction conjugate(const YoungFunction& phi);

std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// 64 log-spaced points in [1e-3, 1e3].
std::vector<double> standard_grid();

enum class GrowthCondition { delta2, delta_prime, nabla_prime, precedes };

std::string to_string(GrowthCondition c);
GrowthCondition growth_condition_from_string(const std::string& s);

struct GrowthReport {
  GrowthCondition condition;
  bool holds_globally = false;
  bool holds_eventually = false;
  // k (delta2), c (delta'), b (nabla'), a (precedes); +inf when unbounded.
  double witness_constant = 0.0;
  double threshold_x0 = 0.0;
  std::vector<double> grid;
};

/// Grid certification of a growth condition.
///
/// delta2:      Phi(2x) <= k Phi(x)
/// delta_prime: Phi(xy) <= c Phi(x) Phi(y)
/// nabla_prime: Phi(bxy) >= Phi(x) Phi(y)
/// precedes:    psi(x) <= Phi(a x)   (psi required)
///
/// The witness is the supremum of the pointwise (or pairwise) required
/// constant beyond `threshold_x0`. A condition holds eventually when that
/// supremum is finite and the running supremum stops growing over the last
/// quarter of the grid; it holds globally when additionally the threshold is
/// the first grid point and the running supremum does not blow up toward zero.
GrowthReport check_growth(const YoungFunction& phi, GrowthCondition condition,
                          std::span<const double> grid, const YoungFunction* psi = nullptr);

/// Checks Psi(xy) <= Phi1(x) + Phi2(y) for all grid pairs; returns the worst
/// relative excess (<= 0 when certified).
double three_function_excess(const YoungFunction& psi, const YoungFunction& phi1,
                             const YoungFunction& phi2, std::span<const double> grid);

struct CompositionCheck {
  bool is_young = false;
  std::string first_violation;  // empty when is_young
  bool superlinearity_inconclusive = false;
};

/// Whether Theta(x) = outer(inner^{-1}(x)) passes the Young-function grid
/// invariants: zero at zero, positivity, monotonicity, midpoint convexity and
/// superlinearity on the standard grid.
CompositionCheck is_young_composition(const YoungFunction& outer,
                                      const YoungFunction& inner_inverse_of);

/// Same invariants for an arbitrary function.
CompositionCheck check_young_invariants(const YoungFunction& theta, std::span<const double> grid);

}  // namespace orlicz_lab
