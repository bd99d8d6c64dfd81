#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "cnslab/state.hpp"

namespace cnslab {

using Point = std::array<double, 3>;

/// Flow quantities at one point and time.
struct FlowSample {
  Point u{0.0, 0.0, 0.0};
  double div_u = 0.0;
  double p = 0.0;
  double src = 0.0;  ///< 2 mu |D(u)|^2 + lambda (div u)^2
  double rho = 1.0;
};

using FlowSampler = std::function<FlowSample(const Point& x, double t)>;

/// Time-ordered stored states with derived fields precomputed, sampled by
/// periodic multilinear interpolation in space and linear interpolation in
/// time (clamped outside the stored interval).
class FieldSeries {
 public:
  /// Throws std::invalid_argument on an empty list, mixed grids or
  /// non-increasing times.
  explicit FieldSeries(std::span<const State> states);

  FlowSample sample(const Point& x, double t) const;
  FlowSampler sampler() const;

  const GridSpec& grid() const { return grid_; }
  double t_begin() const { return frames_.front().t; }
  double t_end() const { return frames_.back().t; }
  std::size_t size() const { return frames_.size(); }

 private:
  struct Frame {
    double t;
    std::vector<ScalarField> fields;  // u components, div u, P, source, rho
  };
  void sample_frame(const Frame& f, const Point& x, double* out) const;

  GridSpec grid_;
  std::vector<Frame> frames_;
};

struct Tracer {
  Point x0{0.0, 0.0, 0.0};
  std::vector<Point> x;      ///< position per output time, wrapped into the box
  std::vector<double> a;     ///< integral of div u along the path
  std::vector<double> p;     ///< sampled pressure
  std::vector<double> src;   ///< sampled heating source
  std::vector<double> rho;   ///< sampled density
  bool vacuum = false;       ///< path touched rho <= vacuum threshold
};

struct TracerSet {
  int dim = 2;
  Point box{1.0, 1.0, 1.0};
  std::vector<double> times;
  std::vector<Tracer> tracers;
};

struct AdvectOptions {
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 1e-3;
  double vacuum_threshold = 1e-8;
};

/// RK4 integration of dX/dt = u(X, t), da/dt = div u(X, t) from every seed.
/// Samples are stored at t0 and after every step. Throws std::invalid_argument
/// for an empty seed list, dt <= 0 or t1 < t0.
TracerSet advect(const FlowSampler& flow, int dim, const Point& box, std::span<const Point> seeds,
                 const AdvectOptions& opt);
TracerSet advect(const FieldSeries& series, std::span<const Point> seeds, const AdvectOptions& opt);

/// Uniform lattice with per_axis points per axis, offset by half a cell.
std::vector<Point> lattice_seeds(int dim, const Point& box, int per_axis);
/// count uniformly random points drawn with the given seed.
std::vector<Point> random_seeds(int dim, const Point& box, int count, std::uint64_t seed);

struct PressureFormulaReport {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::size_t excluded_vacuum = 0;
  bool rhs_nonnegative = true;  ///< formula >= 0 wherever P(0) >= 0 and the source stayed >= 0
  std::vector<std::vector<double>> formula;  ///< per tracer, per time
};

/// Compares sampled P(X(t), t) with
///   exp(-2 a(t)) [P(0) + int_0^t exp(2 a(s)) F(s) ds]
/// evaluated by the trapezoidal rule on the stored times. Relative errors use
/// max(|P|, 1e-14). Vacuum-flagged tracers are excluded.
PressureFormulaReport pressure_formula_check(const TracerSet& tr);

/// One row per (tracer, time): tracer,t,x,y,z,a,p_sampled,p_formula,vacuum.
void write_tracers_csv(std::ostream& out, const TracerSet& tr, const PressureFormulaReport& rep);

}  // namespace cnslab
