#include "cnslab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cnslab {

GridSpec GridSpec::cube(int dim, int n, double box_length) {
  GridSpec g;
  g.dim = dim;
  g.n = n;
  g.length = {box_length, box_length, box_length};
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("grid dim must be 2 or 3, got " + std::to_string(dim));
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid n must be a power of two >= 8, got " + std::to_string(n));
  for (int a = 0; a < dim; ++a)
    if (!(length[a] > 0.0) || !std::isfinite(length[a]))
      throw std::invalid_argument("box length must be positive and finite");
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
  return s;
}

double GridSpec::min_spacing() const {
  double h = spacing(0);
  for (int a = 1; a < dim; ++a) h = std::min(h, spacing(a));
  return h;
}

bool GridSpec::operator==(const GridSpec& o) const {
  if (dim != o.dim || n != o.n) return false;
  for (int a = 0; a < dim; ++a)
    if (length[a] != o.length[a]) return false;
  return true;
}

double GridSpec::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= length[a];
  return v;
}

std::array<int, 3> GridSpec::index3(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return idx;
}

std::array<double, 3> GridSpec::coord(std::size_t flat) const {
  const auto idx = index3(flat);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = idx[a] * spacing(a);
  return x;
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(const GridSpec& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("value count does not match grid size");
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) {
  for (auto& v : values_) v += s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

// ---------------------------------------------------------------------------

VectorField::VectorField(const GridSpec& grid, double fill) : VectorField(grid, grid.dim, fill) {}

VectorField::VectorField(const GridSpec& grid, int components, double fill)
    : comp(static_cast<std::size_t>(components), ScalarField(grid, fill)) {}

VectorField::VectorField(std::vector<ScalarField> components) : comp(std::move(components)) {
  if (comp.empty()) throw std::invalid_argument("vector field needs at least one component");
  for (const auto& c : comp) require_same_grid(c.grid(), comp.front().grid());
}

bool VectorField::all_finite() const {
  return std::all_of(comp.begin(), comp.end(), [](const ScalarField& c) { return c.all_finite(); });
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (o.components() != components()) throw std::invalid_argument("component count mismatch");
  for (int i = 0; i < components(); ++i) comp[i] += o.comp[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  if (o.components() != components()) throw std::invalid_argument("component count mismatch");
  for (int i = 0; i < components(); ++i) comp[i] -= o.comp[i];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : comp) c *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(VectorField a, double s) { return a *= s; }
VectorField operator*(double s, VectorField a) { return a *= s; }

ScalarField norm2(const VectorField& u) {
  ScalarField out(u.grid());
  for (const auto& c : u.comp)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i] * c[i];
  return out;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  if (a.components() != b.components()) throw std::invalid_argument("component count mismatch");
  ScalarField out(a.grid());
  for (int c = 0; c < a.components(); ++c)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[c][i] * b[c][i];
  return out;
}

VectorField scale(const VectorField& u, const ScalarField& s) {
  VectorField out = u;
  for (auto& c : out.comp) c *= s;
  return out;
}

TensorField::TensorField(const GridSpec& grid, double fill)
    : dim(grid.dim), comp(static_cast<std::size_t>(grid.dim * grid.dim), ScalarField(grid, fill)) {}

ScalarField frobenius2(const TensorField& t) {
  ScalarField out(t.grid());
  for (const auto& c : t.comp)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i] * c[i];
  return out;
}

}  // namespace cnslab
