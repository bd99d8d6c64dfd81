#include "cnslab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace cnslab {
namespace {

// FFTW's planner is not re-entrant; executing distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(int dim, int n) : real_size_(1), complex_size_(1) {
    int dims[3] = {n, n, n};
    for (int a = 0; a < dim; ++a) real_size_ *= static_cast<std::size_t>(n);
    complex_size_ = real_size_ / static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
    real_ = fftw_alloc_real(real_size_);
    cplx_ = fftw_alloc_complex(complex_size_);
    std::lock_guard lock(planner_mutex());
    r2c_ = fftw_plan_dft_r2c(dim, dims, real_, cplx_, FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r(dim, dims, cplx_, real_, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
    fftw_free(real_);
    fftw_free(cplx_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::span<const double> in, std::vector<std::complex<double>>& out) {
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(r2c_);
    out.resize(complex_size_);
    for (std::size_t i = 0; i < complex_size_; ++i) out[i] = {cplx_[i][0], cplx_[i][1]};
  }

  void inverse(const std::vector<std::complex<double>>& in, std::span<double> out) {
    for (std::size_t i = 0; i < complex_size_; ++i) {
      cplx_[i][0] = in[i].real();
      cplx_[i][1] = in[i].imag();
    }
    fftw_execute(c2r_);
    const double norm = 1.0 / static_cast<double>(real_size_);
    for (std::size_t i = 0; i < real_size_; ++i) out[i] = real_[i] * norm;
  }

 private:
  std::size_t real_size_;
  std::size_t complex_size_;
  double* real_ = nullptr;
  fftw_complex* cplx_ = nullptr;
  fftw_plan r2c_{};
  fftw_plan c2r_{};
};

FftPlan& plan_for(const GridSpec& g) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[{g.dim, g.n}];
  if (!slot) slot = std::make_unique<FftPlan>(g.dim, g.n);
  return *slot;
}

void require_finite(const ScalarField& f) {
  if (!f.all_finite()) throw NonFiniteError("spectral operator received non-finite values");
}

void require_velocity_like(const VectorField& u) {
  if (u.comp.empty() || u.components() != u.grid().dim)
    throw std::invalid_argument("vector field must have one component per grid axis");
}

// Applies multiplier(mode) to the spectrum of f.
template <class Mult>
ScalarField apply(const ScalarField& f, Mult&& mult) {
  Spectrum s = forward(f);
  const auto& md = modes(f.grid());
  for (std::size_t i = 0; i < s.coef.size(); ++i) s.coef[i] *= mult(md[i]);
  return inverse(s);
}

}  // namespace

std::size_t spectral_size(const GridSpec& grid) {
  return grid.size() / static_cast<std::size_t>(grid.n) * static_cast<std::size_t>(grid.n / 2 + 1);
}

const std::vector<Mode>& modes(const GridSpec& grid) {
  using Key = std::tuple<int, int, double, double, double>;
  thread_local std::map<Key, std::vector<Mode>> cache;
  const Key key{grid.dim, grid.n, grid.length[0], grid.length[1], grid.length[2]};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const int n = grid.n;
  const int half = n / 2 + 1;
  std::vector<Mode> out(spectral_size(grid));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    Mode md;
    std::size_t rest = flat;
    for (int a = grid.dim - 1; a >= 0; --a) {
      const int extent = (a == grid.dim - 1) ? half : n;
      const int idx = static_cast<int>(rest % static_cast<std::size_t>(extent));
      rest /= static_cast<std::size_t>(extent);
      const int m = (a == grid.dim - 1) ? idx : (idx <= n / 2 - 1 ? idx : idx - n);
      md.m[a] = m;
      const double k = 2.0 * std::numbers::pi * m / grid.length[a];
      md.k[a] = k;
      md.kd[a] = (std::abs(m) == n / 2) ? 0.0 : k;
      md.k2 += k * k;
      md.kd2 += md.kd[a] * md.kd[a];
      if (3 * std::abs(m) >= n) md.kept = false;
    }
    out[flat] = md;
  }
  return cache.emplace(key, std::move(out)).first->second;
}

Spectrum forward(const ScalarField& f) {
  Spectrum s{f.grid(), {}};
  plan_for(f.grid()).forward(f.values(), s.coef);
  return s;
}

ScalarField inverse(const Spectrum& s) {
  ScalarField f(s.grid);
  plan_for(s.grid).inverse(s.coef, f.values());
  return f;
}

ScalarField derivative(const ScalarField& f, int axis) {
  require_finite(f);
  return apply(f, [axis](const Mode& md) { return std::complex<double>(0.0, md.kd[axis]); });
}

VectorField gradient(const ScalarField& f) {
  require_finite(f);
  const Spectrum s = forward(f);
  const auto& md = modes(f.grid());
  VectorField out(f.grid());
  Spectrum tmp = s;
  for (int a = 0; a < f.grid().dim; ++a) {
    for (std::size_t i = 0; i < s.coef.size(); ++i) tmp.coef[i] = s.coef[i] * std::complex<double>(0.0, md[i].kd[a]);
    out[a] = inverse(tmp);
  }
  return out;
}

ScalarField divergence(const VectorField& u) {
  require_velocity_like(u);
  const GridSpec& g = u.grid();
  const auto& md = modes(g);
  Spectrum acc{g, std::vector<std::complex<double>>(spectral_size(g))};
  for (int a = 0; a < g.dim; ++a) {
    require_finite(u[a]);
    const Spectrum s = forward(u[a]);
    for (std::size_t i = 0; i < s.coef.size(); ++i) acc.coef[i] += s.coef[i] * std::complex<double>(0.0, md[i].kd[a]);
  }
  return inverse(acc);
}

TensorField jacobian(const VectorField& u) {
  require_velocity_like(u);
  const GridSpec& g = u.grid();
  const auto& md = modes(g);
  TensorField out(g);
  for (int r = 0; r < g.dim; ++r) {
    require_finite(u[r]);
    const Spectrum s = forward(u[r]);
    Spectrum tmp = s;
    for (int c = 0; c < g.dim; ++c) {
      for (std::size_t i = 0; i < s.coef.size(); ++i) tmp.coef[i] = s.coef[i] * std::complex<double>(0.0, md[i].kd[c]);
      out(r, c) = inverse(tmp);
    }
  }
  return out;
}

VectorField curl(const VectorField& u) {
  require_velocity_like(u);
  const GridSpec& g = u.grid();
  if (g.dim == 2) {
    return VectorField(std::vector<ScalarField>{derivative(u[1], 0) - derivative(u[0], 1)});
  }
  const TensorField J = jacobian(u);
  return VectorField(std::vector<ScalarField>{J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1)});
}

VectorField curl_of_vorticity(const VectorField& w) {
  const GridSpec& g = w.grid();
  if (g.dim == 2) {
    if (w.components() != 1) throw std::invalid_argument("2D vorticity must have one component");
    return VectorField(std::vector<ScalarField>{derivative(w[0], 1), -derivative(w[0], 0)});
  }
  return curl(w);
}

ScalarField laplacian(const ScalarField& f) {
  require_finite(f);
  return apply(f, [](const Mode& md) { return std::complex<double>(-md.k2, 0.0); });
}

VectorField vector_laplacian(const VectorField& u) {
  VectorField out = u;
  for (auto& c : out.comp) c = laplacian(c);
  return out;
}

VectorField grad_div(const VectorField& u) { return gradient(divergence(u)); }

double integrate(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_volume();
}

double mean(const ScalarField& f) { return integrate(f) / f.grid().volume(); }

double lp_norm(const ScalarField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  if (std::isinf(p)) return sup_norm(f);
  double sum = 0.0;
  for (double v : f.values()) sum += std::pow(std::abs(v), p);
  return std::pow(sum * f.grid().cell_volume(), 1.0 / p);
}

double sup_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

namespace {
ScalarField pointwise_sqrt(ScalarField f) {
  for (auto& v : f.values()) v = std::sqrt(v);
  return f;
}
}  // namespace

double lp_norm(const VectorField& u, double p) { return lp_norm(pointwise_sqrt(norm2(u)), p); }

double lp_norm(const TensorField& t, double p) { return lp_norm(pointwise_sqrt(frobenius2(t)), p); }

ScalarField truncate(const ScalarField& f) {
  require_finite(f);
  return apply(f, [](const Mode& md) { return md.kept ? 1.0 : 0.0; });
}

ScalarField dealias_product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  return truncate(a * b);
}

}  // namespace cnslab
