#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "orlicz_lab/expr.hpp"

namespace orlicz_lab {

using Complex = std::complex<double>;

enum class CellKind { sigma_atom, fragment };

struct Cell {
  std::string id;
  double mass = 0.0;
  CellKind kind = CellKind::fragment;
  // Coordinate of the cell midpoint when the space discretizes an interval;
  // NaN otherwise. Only used to evaluate `w` in weight expressions.
  double position = std::numeric_limits<double>::quiet_NaN();
};

/// Finite cell model of a sigma-finite measure space: sigma-atoms plus
/// fragments that discretize the non-atomic part B.
class MeasureSpace {
 public:
  explicit MeasureSpace(std::vector<Cell> cells);

  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& cell(std::size_t i) const { return cells_.at(i); }
  double mass(std::size_t i) const { return cells_[i].mass; }
  double total_mass() const noexcept { return total_mass_; }
  std::size_t index_of(const std::string& id) const;

  friend bool operator==(const MeasureSpace& a, const MeasureSpace& b);

 private:
  std::vector<Cell> cells_;
  std::unordered_map<std::string, std::size_t> index_;
  double total_mass_ = 0.0;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

enum class BlockKind { a_atom, carrier };

struct Block {
  std::string label;
  std::vector<std::size_t> cells;
  BlockKind kind = BlockKind::carrier;
  double mass = 0.0;  // derived
};

/// A sub-sigma-algebra given as a partition of the cells into blocks.
/// a-atom blocks are the A-atoms A_n; carrier blocks refine the non-atomic part.
class SubAlgebra {
 public:
  SubAlgebra(SpacePtr space, std::vector<Block> blocks);

  /// The full algebra Sigma: one block per cell (so E is the identity).
  static SubAlgebra full(SpacePtr space);

  const MeasureSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(std::size_t cell) const { return block_of_.at(cell); }
  std::size_t atom_count() const noexcept;

 private:
  SpacePtr space_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
};

/// A complex value per cell.
class MeasurableFn {
 public:
  MeasurableFn(SpacePtr space, std::vector<Complex> values);

  static MeasurableFn constant(SpacePtr space, Complex c);
  static MeasurableFn from_real(SpacePtr space, std::span<const double> values);
  /// Evaluates `expr` with w = cell position and n = 1-based cell index.
  static MeasurableFn from_expr(SpacePtr space, const Expr& expr);
  static MeasurableFn indicator(SpacePtr space, std::span<const std::size_t> cells);

  const MeasureSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Complex>& values() const noexcept { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  MeasurableFn abs() const;
  MeasurableFn conj() const;
  MeasurableFn map_real(const std::function<double(double)>& f) const;  // f(|value|)
  double sup_abs() const;
  std::vector<double> abs_values() const;
  bool is_block_constant(const SubAlgebra& alg, double tol = 0.0) const;

  MeasurableFn& operator*=(Complex c);
  friend MeasurableFn operator+(const MeasurableFn& a, const MeasurableFn& b);
  friend MeasurableFn operator-(const MeasurableFn& a, const MeasurableFn& b);
  friend MeasurableFn operator*(const MeasurableFn& a, const MeasurableFn& b);
  friend MeasurableFn operator*(Complex c, MeasurableFn f);

 private:
  SpacePtr space_;
  std::vector<Complex> values_;
};

bool same_space(const MeasureSpace& a, const MeasureSpace& b);
void require_same_space(const MeasureSpace& a, const MeasureSpace& b, const char* where);

/// Closed-form infinite family of A-atoms: n -> mu(A_n) and n -> value on A_n.
///
/// `depth()` is the usable truncation: n_max, shortened to the last index
/// whose mass is still a normal double (so 1 / mass stays finite).
class SymbolicAtomSequence {
 public:
  SymbolicAtomSequence(Expr mass_fn, Expr value_fn, std::size_t n_max);

  double mass(std::size_t n) const { return mass_fn_(static_cast<double>(n)); }
  double value(std::size_t n) const { return value_fn_(static_cast<double>(n)); }
  std::size_t n_max() const noexcept { return n_max_; }
  std::size_t depth() const noexcept { return depth_; }
  const Expr& mass_fn() const noexcept { return mass_fn_; }
  const Expr& value_fn() const noexcept { return value_fn_; }

  /// Same masses with a different value expression.
  SymbolicAtomSequence with_values(Expr value_fn) const;

 private:
  Expr mass_fn_;
  Expr value_fn_;
  std::size_t n_max_;
  std::size_t depth_;
};

/// ORLICZ_LAB_NMAX when set, else 10000.
std::size_t default_symbolic_depth();

struct SpaceModel {
  SpacePtr space;
  SubAlgebra alg;
};

Complex integrate(const MeasurableFn& f);
Complex integrate(const MeasurableFn& f, std::span<const std::size_t> cells);
Complex integrate(const MeasurableFn& f, std::span<const std::string> cell_ids);

/// Block averages: E(f) = integral of f over the block / block mass.
MeasurableFn cond_exp(const MeasurableFn& f, const SubAlgebra& alg);

/// Value of a block-constant function on each block (block order).
std::vector<Complex> block_values(const MeasurableFn& f, const SubAlgebra& alg);

/// [-1, 1] with d mu = dw / 2, blocks pairing w with -w.
SpaceModel build_symmetric_space(std::size_t n_cells);

/// [0, 1] with Lebesgue measure; blocks are orbits of w -> w + 1/n (mod 1).
SpaceModel build_rotation_space(std::size_t n, std::size_t cells_per_interval);

/// One sigma-atom per mass with the full algebra (every cell an A-atom).
SpaceModel build_atomic_space(std::span<const double> masses);

/// The first `count` atoms of a symbolic sequence as a finite atomic space,
/// together with the weight taking value_fn(n) on atom n.
std::pair<SpaceModel, MeasurableFn> materialize(const SymbolicAtomSequence& seq,
                                                std::size_t count);

}  // namespace orlicz_lab
