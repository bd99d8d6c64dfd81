#include "cnslab/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cnslab/dynamics.hpp"
#include "cnslab/spectral.hpp"

namespace cnslab {

namespace {

constexpr int kMaxFields = 8;

double wrap(double v, double L) {
  double r = std::fmod(v, L);
  if (r < 0.0) r += L;
  if (r >= L) r -= L;  // fmod of a tiny negative can round up to L
  return r;
}

}  // namespace

FieldSeries::FieldSeries(std::span<const State> states) {
  if (states.empty()) throw std::invalid_argument("FieldSeries needs at least one state");
  grid_ = states.front().grid();
  for (const State& s : states) {
    if (!(s.grid() == grid_)) throw std::invalid_argument("FieldSeries states must share a grid");
    if (!frames_.empty() && !(s.t > frames_.back().t))
      throw std::invalid_argument("FieldSeries times must be strictly increasing");
    const VectorField u = velocity(s);
    Frame f;
    f.t = s.t;
    for (const auto& c : u.comp) f.fields.push_back(c);
    f.fields.push_back(divergence(u));
    f.fields.push_back(s.p);
    f.fields.push_back(viscous_heating(u, s.params));
    f.fields.push_back(s.rho);
    frames_.push_back(std::move(f));
  }
}

void FieldSeries::sample_frame(const Frame& f, const Point& x, double* out) const {
  const int d = grid_.dim;
  const int n = grid_.n;
  std::array<int, 3> i0{0, 0, 0}, i1{0, 0, 0};
  std::array<double, 3> w{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    const double s = wrap(x[a], grid_.length[a]) / grid_.spacing(a);
    const double fl = std::floor(s);
    w[a] = s - fl;
    i0[a] = static_cast<int>(fl) % n;
    i1[a] = (i0[a] + 1) % n;
  }
  const std::size_t nf = f.fields.size();
  for (std::size_t q = 0; q < nf; ++q) out[q] = 0.0;
  const int corners = 1 << d;
  for (int c = 0; c < corners; ++c) {
    double weight = 1.0;
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      const bool hi = (c >> a) & 1;
      weight *= hi ? w[a] : 1.0 - w[a];
      flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(hi ? i1[a] : i0[a]);
    }
    for (std::size_t q = 0; q < nf; ++q) out[q] += weight * f.fields[q][flat];
  }
}

FlowSample FieldSeries::sample(const Point& x, double t) const {
  const int d = grid_.dim;
  std::array<double, kMaxFields> v{}, v1{};
  auto it = std::upper_bound(frames_.begin(), frames_.end(), t, [](double tt, const Frame& f) { return tt < f.t; });
  if (it == frames_.begin()) {
    sample_frame(frames_.front(), x, v.data());
  } else if (it == frames_.end()) {
    sample_frame(frames_.back(), x, v.data());
  } else {
    const Frame& b = *it;
    const Frame& a = *(it - 1);
    sample_frame(a, x, v.data());
    sample_frame(b, x, v1.data());
    const double th = (t - a.t) / (b.t - a.t);
    for (std::size_t q = 0; q < a.fields.size(); ++q) v[q] = (1.0 - th) * v[q] + th * v1[q];
  }
  FlowSample s;
  for (int a = 0; a < d; ++a) s.u[a] = v[a];
  s.div_u = v[d];
  s.p = v[d + 1];
  s.src = v[d + 2];
  s.rho = v[d + 3];
  return s;
}

FlowSampler FieldSeries::sampler() const {
  return [this](const Point& x, double t) { return sample(x, t); };
}

TracerSet advect(const FlowSampler& flow, int dim, const Point& box, std::span<const Point> seeds,
                 const AdvectOptions& opt) {
  if (seeds.empty()) throw std::invalid_argument("advect needs at least one seed");
  if (!(opt.dt > 0.0)) throw std::invalid_argument("advect needs dt > 0");
  if (!(opt.t1 >= opt.t0)) throw std::invalid_argument("advect needs t1 >= t0");
  if (dim != 2 && dim != 3) throw std::invalid_argument("advect: dim must be 2 or 3");

  TracerSet tr;
  tr.dim = dim;
  tr.box = box;
  tr.times.push_back(opt.t0);
  std::vector<double> step_sizes;
  {
    double t = opt.t0;
    const double eps = 1e-12 * std::max(1.0, std::abs(opt.t1));
    while (opt.t1 - t > eps) {
      const double h = std::min(opt.dt, opt.t1 - t);
      step_sizes.push_back(h);
      t += h;
      tr.times.push_back(t);
    }
    if (!step_sizes.empty()) tr.times.back() = opt.t1;
  }

  auto wrap_point = [&](Point x) {
    for (int a = 0; a < dim; ++a) x[a] = wrap(x[a], box[a]);
    return x;
  };

  for (const Point& seed : seeds) {
    Tracer tc;
    tc.x0 = wrap_point(seed);
    Point x = tc.x0;
    double a = 0.0;
    auto store = [&](double t) {
      const FlowSample s = flow(x, t);
      tc.x.push_back(x);
      tc.a.push_back(a);
      tc.p.push_back(s.p);
      tc.src.push_back(s.src);
      tc.rho.push_back(s.rho);
      if (!(s.rho > opt.vacuum_threshold)) tc.vacuum = true;
    };
    store(opt.t0);
    for (std::size_t k = 0; k < step_sizes.size(); ++k) {
      const double t = tr.times[k];
      const double h = step_sizes[k];
      auto shifted = [&](const FlowSample& s, double c) {
        Point y = x;
        for (int q = 0; q < dim; ++q) y[q] += c * s.u[q];
        return y;
      };
      const FlowSample k1 = flow(x, t);
      const FlowSample k2 = flow(shifted(k1, 0.5 * h), t + 0.5 * h);
      const FlowSample k3 = flow(shifted(k2, 0.5 * h), t + 0.5 * h);
      const FlowSample k4 = flow(shifted(k3, h), t + h);
      for (int q = 0; q < dim; ++q) x[q] += h / 6.0 * (k1.u[q] + 2.0 * k2.u[q] + 2.0 * k3.u[q] + k4.u[q]);
      a += h / 6.0 * (k1.div_u + 2.0 * k2.div_u + 2.0 * k3.div_u + k4.div_u);
      x = wrap_point(x);
      store(tr.times[k + 1]);
    }
    tr.tracers.push_back(std::move(tc));
  }
  return tr;
}

TracerSet advect(const FieldSeries& series, std::span<const Point> seeds, const AdvectOptions& opt) {
  const GridSpec& g = series.grid();
  return advect(series.sampler(), g.dim, g.length, seeds, opt);
}

std::vector<Point> lattice_seeds(int dim, const Point& box, int per_axis) {
  if (per_axis < 1) throw std::invalid_argument("lattice_seeds needs per_axis >= 1");
  std::vector<Point> out;
  const int count = dim == 3 ? per_axis * per_axis * per_axis : per_axis * per_axis;
  for (int flat = 0; flat < count; ++flat) {
    Point p{0.0, 0.0, 0.0};
    int rest = flat;
    for (int a = dim - 1; a >= 0; --a) {
      p[a] = (rest % per_axis + 0.5) * box[a] / per_axis;
      rest /= per_axis;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Point> random_seeds(int dim, const Point& box, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("random_seeds needs count >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) p[a] = unit(rng) * box[a];
    out.push_back(p);
  }
  return out;
}

PressureFormulaReport pressure_formula_check(const TracerSet& tr) {
  PressureFormulaReport rep;
  const auto& t = tr.times;
  for (const Tracer& tc : tr.tracers) {
    std::vector<double> formula(t.size(), 0.0);
    const double p0 = tc.p.front();
    bool source_nonneg = true;
    double integral = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (tc.src[k] < 0.0) source_nonneg = false;
      if (k > 0) {
        const double h = t[k] - t[k - 1];
        integral += 0.5 * h * (std::exp(2.0 * tc.a[k - 1]) * tc.src[k - 1] + std::exp(2.0 * tc.a[k]) * tc.src[k]);
      }
      formula[k] = std::exp(-2.0 * tc.a[k]) * (p0 + integral);
      if (p0 >= 0.0 && source_nonneg && formula[k] < 0.0) rep.rhs_nonnegative = false;
    }
    if (tc.vacuum) {
      ++rep.excluded_vacuum;
    } else {
      ++rep.checked;
      for (std::size_t k = 0; k < t.size(); ++k) {
        const double err = std::abs(formula[k] - tc.p[k]) / std::max(std::abs(tc.p[k]), 1e-14);
        rep.max_rel_error = std::max(rep.max_rel_error, err);
      }
    }
    rep.formula.push_back(std::move(formula));
  }
  return rep;
}

void write_tracers_csv(std::ostream& out, const TracerSet& tr, const PressureFormulaReport& rep) {
  out << "tracer,t,x,y,z,a,p_sampled,p_formula,vacuum\n";
  out.precision(17);
  for (std::size_t i = 0; i < tr.tracers.size(); ++i) {
    const Tracer& tc = tr.tracers[i];
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const double pf = i < rep.formula.size() ? rep.formula[i][k] : 0.0;
      out << i << ',' << tr.times[k] << ',' << tc.x[k][0] << ',' << tc.x[k][1] << ',' << tc.x[k][2] << ','
          << tc.a[k] << ',' << tc.p[k] << ',' << pf << ',' << (tc.vacuum ? 1 : 0) << '\n';
    }
  }
}

}  // namespace cnslab
