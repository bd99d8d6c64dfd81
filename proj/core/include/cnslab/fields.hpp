#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cnslab {

/// Raised when NaN or infinity reaches an operator or the time stepper.
class NonFiniteError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Uniform periodic grid on the torus [0,L_0) x [0,L_1) (x [0,L_2)).
///
/// Nodes are stored axis-major: the first axis varies slowest, so in 3D
/// the flat index of node (i,j,k) is (i*n + j)*n + k.
struct GridSpec {
  int dim = 2;
  int n = 64;
  std::array<double, 3> length{1.0, 1.0, 1.0};

  static GridSpec cube(int dim, int n, double box_length = 1.0);

  /// Throws std::invalid_argument when dim, n or the box lengths are invalid.
  void validate() const;

  std::size_t size() const;
  double spacing(int axis) const { return length[axis] / n; }
  double min_spacing() const;
  double volume() const;
  double cell_volume() const { return volume() / static_cast<double>(size()); }

  /// Per-axis node indices of a flat index (unused axes are zero).
  std::array<int, 3> index3(std::size_t flat) const;
  std::array<double, 3> coord(std::size_t flat) const;

  /// Compares dim, n and the lengths of the axes in use.
  bool operator==(const GridSpec& o) const;
};

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& grid, double fill = 0.0);
  ScalarField(const GridSpec& grid, std::vector<double> values);

  /// Samples fn(x) at every grid node; fn takes std::array<double,3>.
  template <class Fn>
  static ScalarField sample(const GridSpec& grid, Fn&& fn) {
    ScalarField f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) f.values_[i] = fn(grid.coord(i));
    return f;
  }

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& storage() { return values_; }

  bool all_finite() const;
  double min() const;
  double max() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
ScalarField operator-(ScalarField a);

/// A set of component fields on one grid. Velocity-like fields carry
/// grid.dim components; the 2D vorticity is carried as a single component.
struct VectorField {
  std::vector<ScalarField> comp;

  VectorField() = default;
  explicit VectorField(const GridSpec& grid, double fill = 0.0);
  VectorField(const GridSpec& grid, int components, double fill);
  explicit VectorField(std::vector<ScalarField> components);

  const GridSpec& grid() const { return comp.front().grid(); }
  int components() const { return static_cast<int>(comp.size()); }
  ScalarField& operator[](int i) { return comp[i]; }
  const ScalarField& operator[](int i) const { return comp[i]; }

  bool all_finite() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(VectorField a, double s);
VectorField operator*(double s, VectorField a);

/// Pointwise Euclidean norm squared over the components.
ScalarField norm2(const VectorField& u);
ScalarField dot(const VectorField& a, const VectorField& b);
/// Each component multiplied pointwise by s.
VectorField scale(const VectorField& u, const ScalarField& s);

/// Rank-2 tensor field, row-major: entry (r,c) is comp[r*dim + c].
struct TensorField {
  int dim = 0;
  std::vector<ScalarField> comp;

  TensorField() = default;
  explicit TensorField(const GridSpec& grid, double fill = 0.0);

  ScalarField& operator()(int r, int c) { return comp[r * dim + c]; }
  const ScalarField& operator()(int r, int c) const { return comp[r * dim + c]; }
  const GridSpec& grid() const { return comp.front().grid(); }
};

/// Pointwise Frobenius norm squared.
ScalarField frobenius2(const TensorField& t);

void require_same_grid(const GridSpec& a, const GridSpec& b);

}  // namespace cnslab
