#include "orlicz_lab/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "orlicz_lab/errors.hpp"

namespace orlicz_lab {

MeasureSpace::MeasureSpace(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw ArgumentError("measure space needs at least one cell");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (!(c.mass > 0.0) || !std::isfinite(c.mass)) {
      throw ArgumentError("cell '" + c.id + "' must have positive finite mass");
    }
    if (!index_.emplace(c.id, i).second) throw ArgumentError("duplicate cell id '" + c.id + "'");
    total_mass_ += c.mass;
  }
}

std::size_t MeasureSpace::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ArgumentError("unknown cell id '" + id + "'");
  return it->second;
}

bool operator==(const MeasureSpace& a, const MeasureSpace& b) {
  if (a.cells_.size() != b.cells_.size()) return false;
  for (std::size_t i = 0; i < a.cells_.size(); ++i) {
    const Cell& x = a.cells_[i];
    const Cell& y = b.cells_[i];
    if (x.id != y.id || x.mass != y.mass || x.kind != y.kind) return false;
  }
  return true;
}

SubAlgebra::SubAlgebra(SpacePtr space, std::vector<Block> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  if (!space_) throw ArgumentError("sub-algebra needs a measure space");
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  block_of_.assign(space_->size(), unset);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Block& blk = blocks_[b];
    if (blk.cells.empty()) throw ArgumentError("block '" + blk.label + "' is empty");
    blk.mass = 0.0;
    for (std::size_t c : blk.cells) {
      if (c >= space_->size()) throw ArgumentError("block '" + blk.label + "' has a bad cell index");
      if (block_of_[c] != unset) {
        throw ArgumentError("cell '" + space_->cell(c).id + "' belongs to two blocks");
      }
      block_of_[c] = b;
      blk.mass += space_->mass(c);
    }
  }
  for (std::size_t c = 0; c < block_of_.size(); ++c) {
    if (block_of_[c] == unset) {
      throw ArgumentError("cell '" + space_->cell(c).id + "' is not covered by any block");
    }
  }
}

SubAlgebra SubAlgebra::full(SpacePtr space) {
  std::vector<Block> blocks;
  blocks.reserve(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) {
    const Cell& c = space->cell(i);
    blocks.push_back({c.id, {i}, c.kind == CellKind::sigma_atom ? BlockKind::a_atom : BlockKind::carrier, 0.0});
  }
  return SubAlgebra(std::move(space), std::move(blocks));
}

std::size_t SubAlgebra::atom_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      blocks_.begin(), blocks_.end(), [](const Block& b) { return b.kind == BlockKind::a_atom; }));
}

MeasurableFn::MeasurableFn(SpacePtr space, std::vector<Complex> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw ArgumentError("measurable function needs a space");
  if (values_.size() != space_->size()) {
    throw ArgumentError("measurable function must be defined on every cell");
  }
}

MeasurableFn MeasurableFn::constant(SpacePtr space, Complex c) {
  const std::size_t n = space->size();
  return MeasurableFn(std::move(space), std::vector<Complex>(n, c));
}

MeasurableFn MeasurableFn::from_real(SpacePtr space, std::span<const double> values) {
  return MeasurableFn(std::move(space), std::vector<Complex>(values.begin(), values.end()));
}

MeasurableFn MeasurableFn::from_expr(SpacePtr space, const Expr& expr) {
  std::vector<Complex> v(space->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = expr(static_cast<double>(i + 1), space->cell(i).position);
  }
  return MeasurableFn(std::move(space), std::move(v));
}

MeasurableFn MeasurableFn::indicator(SpacePtr space, std::span<const std::size_t> cells) {
  std::vector<Complex> v(space->size(), 0.0);
  for (std::size_t c : cells) v.at(c) = 1.0;
  return MeasurableFn(std::move(space), std::move(v));
}

MeasurableFn MeasurableFn::abs() const {
  std::vector<Complex> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [](Complex z) { return Complex(std::abs(z)); });
  return MeasurableFn(space_, std::move(v));
}

MeasurableFn MeasurableFn::conj() const {
  std::vector<Complex> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [](Complex z) { return std::conj(z); });
  return MeasurableFn(space_, std::move(v));
}

MeasurableFn MeasurableFn::map_real(const std::function<double(double)>& f) const {
  std::vector<Complex> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(),
                 [&](Complex z) { return Complex(f(std::abs(z))); });
  return MeasurableFn(space_, std::move(v));
}

double MeasurableFn::sup_abs() const {
  double s = 0.0;
  for (Complex z : values_) s = std::max(s, std::abs(z));
  return s;
}

std::vector<double> MeasurableFn::abs_values() const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [](Complex z) { return std::abs(z); });
  return v;
}

bool MeasurableFn::is_block_constant(const SubAlgebra& alg, double tol) const {
  require_same_space(*space_, alg.space(), "is_block_constant");
  for (const Block& b : alg.blocks()) {
    const Complex first = values_[b.cells.front()];
    for (std::size_t c : b.cells) {
      if (std::abs(values_[c] - first) > tol * std::max(1.0, std::abs(first))) return false;
    }
  }
  return true;
}

MeasurableFn& MeasurableFn::operator*=(Complex c) {
  for (Complex& z : values_) z *= c;
  return *this;
}

namespace {
template <class Op>
MeasurableFn zip(const MeasurableFn& a, const MeasurableFn& b, Op op, const char* where) {
  require_same_space(a.space(), b.space(), where);
  std::vector<Complex> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
  return MeasurableFn(a.space_ptr(), std::move(v));
}
}  // namespace

MeasurableFn operator+(const MeasurableFn& a, const MeasurableFn& b) {
  return zip(a, b, std::plus<>{}, "operator+");
}
MeasurableFn operator-(const MeasurableFn& a, const MeasurableFn& b) {
  return zip(a, b, std::minus<>{}, "operator-");
}
MeasurableFn operator*(const MeasurableFn& a, const MeasurableFn& b) {
  return zip(a, b, std::multiplies<>{}, "operator*");
}
MeasurableFn operator*(Complex c, MeasurableFn f) {
  f *= c;
  return f;
}

bool same_space(const MeasureSpace& a, const MeasureSpace& b) { return &a == &b || a == b; }

void require_same_space(const MeasureSpace& a, const MeasureSpace& b, const char* where) {
  if (!same_space(a, b)) throw ArgumentError(std::string(where) + ": functions live on different spaces");
}

SymbolicAtomSequence::SymbolicAtomSequence(Expr mass_fn, Expr value_fn, std::size_t n_max)
    : mass_fn_(std::move(mass_fn)), value_fn_(std::move(value_fn)), n_max_(n_max), depth_(n_max) {
  if (n_max_ < 1) throw ArgumentError("symbolic atom sequence needs n_max >= 1");
  for (std::size_t n = 1; n <= n_max_; ++n) {
    const double m = mass(n);
    if (std::isnan(m) || m < 0.0 || std::isinf(m)) {
      throw ArgumentError("symbolic mass '" + mass_fn_.source() + "' is not a positive finite real at n = " +
                          std::to_string(n));
    }
    if (m < std::numeric_limits<double>::min()) {
      if (n == 1) {
        throw ArgumentError("symbolic mass '" + mass_fn_.source() + "' must be positive");
      }
      depth_ = n - 1;
      break;
    }
  }
}

SymbolicAtomSequence SymbolicAtomSequence::with_values(Expr value_fn) const {
  SymbolicAtomSequence out = *this;
  out.value_fn_ = std::move(value_fn);
  return out;
}

std::size_t default_symbolic_depth() {
  if (const char* env = std::getenv("ORLICZ_LAB_NMAX")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  return 10'000;
}

Complex integrate(const MeasurableFn& f) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * f.space().mass(i);
  return s;
}

Complex integrate(const MeasurableFn& f, std::span<const std::size_t> cells) {
  Complex s = 0.0;
  for (std::size_t c : cells) {
    if (c >= f.size()) throw ArgumentError("integrate: cell index out of range");
    s += f[c] * f.space().mass(c);
  }
  return s;
}

Complex integrate(const MeasurableFn& f, std::span<const std::string> cell_ids) {
  std::vector<std::size_t> idx;
  idx.reserve(cell_ids.size());
  for (const auto& id : cell_ids) idx.push_back(f.space().index_of(id));
  return integrate(f, idx);
}

MeasurableFn cond_exp(const MeasurableFn& f, const SubAlgebra& alg) {
  require_same_space(f.space(), alg.space(), "cond_exp");
  std::vector<Complex> out(f.size());
  for (const Block& b : alg.blocks()) {
    const Complex first = f[b.cells.front()];
    const bool constant =
        std::all_of(b.cells.begin(), b.cells.end(), [&](std::size_t c) { return f[c] == first; });
    Complex avg = first;
    if (!constant) {
      Complex s = 0.0;
      for (std::size_t c : b.cells) s += f[c] * f.space().mass(c);
      avg = s / b.mass;
    }
    for (std::size_t c : b.cells) out[c] = avg;
  }
  return MeasurableFn(f.space_ptr(), std::move(out));
}

std::vector<Complex> block_values(const MeasurableFn& f, const SubAlgebra& alg) {
  require_same_space(f.space(), alg.space(), "block_values");
  std::vector<Complex> v;
  v.reserve(alg.blocks().size());
  for (const Block& b : alg.blocks()) v.push_back(f[b.cells.front()]);
  return v;
}

SpaceModel build_symmetric_space(std::size_t n_cells) {
  if (n_cells < 2 || n_cells % 2 != 0) {
    throw ArgumentError("symmetric space needs an even number of cells >= 2");
  }
  std::vector<Cell> cells;
  cells.reserve(n_cells);
  const double width = 2.0 / static_cast<double>(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    Cell c;
    c.id = "c" + std::to_string(i);
    c.mass = 1.0 / static_cast<double>(n_cells);  // d mu = dw / 2
    c.kind = CellKind::fragment;
    c.position = -1.0 + (static_cast<double>(i) + 0.5) * width;
    cells.push_back(std::move(c));
  }
  // Mirror cells pair exactly: force w(n - 1 - i) = -w(i).
  for (std::size_t i = 0; i < n_cells / 2; ++i) cells[n_cells - 1 - i].position = -cells[i].position;
  auto space = std::make_shared<const MeasureSpace>(std::move(cells));
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < n_cells / 2; ++i) {
    blocks.push_back({"pair" + std::to_string(i), {i, n_cells - 1 - i}, BlockKind::carrier, 0.0});
  }
  return {space, SubAlgebra(space, std::move(blocks))};
}

SpaceModel build_rotation_space(std::size_t n, std::size_t cells_per_interval) {
  if (n < 2 || cells_per_interval < 1) {
    throw ArgumentError("rotation space needs n >= 2 and cells_per_interval >= 1");
  }
  const std::size_t total = n * cells_per_interval;
  std::vector<Cell> cells;
  cells.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    Cell c;
    c.id = "c" + std::to_string(i);
    c.mass = 1.0 / static_cast<double>(total);
    c.kind = CellKind::fragment;
    c.position = (static_cast<double>(i) + 0.5) / static_cast<double>(total);
    cells.push_back(std::move(c));
  }
  auto space = std::make_shared<const MeasureSpace>(std::move(cells));
  std::vector<Block> blocks;
  for (std::size_t r = 0; r < cells_per_interval; ++r) {
    Block b{"orbit" + std::to_string(r), {}, BlockKind::carrier, 0.0};
    for (std::size_t j = 0; j < n; ++j) b.cells.push_back(r + j * cells_per_interval);
    blocks.push_back(std::move(b));
  }
  return {space, SubAlgebra(space, std::move(blocks))};
}

SpaceModel build_atomic_space(std::span<const double> masses) {
  std::vector<Cell> cells;
  cells.reserve(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    Cell c;
    c.id = "a" + std::to_string(i + 1);
    c.mass = masses[i];
    c.kind = CellKind::sigma_atom;
    c.position = static_cast<double>(i + 1);
    cells.push_back(std::move(c));
  }
  auto space = std::make_shared<const MeasureSpace>(std::move(cells));
  return {space, SubAlgebra::full(space)};
}

std::pair<SpaceModel, MeasurableFn> materialize(const SymbolicAtomSequence& seq, std::size_t count) {
  count = std::min(count, seq.depth());
  if (count == 0) throw ArgumentError("materialize needs at least one atom");
  std::vector<double> masses(count);
  std::vector<double> values(count);
  for (std::size_t n = 1; n <= count; ++n) {
    masses[n - 1] = seq.mass(n);
    values[n - 1] = seq.value(n);
  }
  SpaceModel model = build_atomic_space(masses);
  MeasurableFn u = MeasurableFn::from_real(model.space, values);
  return {std::move(model), std::move(u)};
}

}  // namespace orlicz_lab
