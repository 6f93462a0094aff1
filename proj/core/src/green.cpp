#include "fracmc/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "fracmc/gamma.hpp"

namespace fracmc {
namespace {

void ensure_finite(double v, const char* where, double x) {
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string(where) + ": non-finite kernel value at draw x = " +
                             std::to_string(x));
  }
}

// Shared two-layer time change: s is the inverse subordinator time (or t when
// beta = 1) and tau the operational Gaussian variance after the spatial
// subordination (or s when alpha = 2). Draw order is fixed: s, then the
// stable factor, then the initial position.
struct HeatDraw {
  double tau;
  double y;
};

HeatDraw draw_heat(const HeatSpec& spec, double t, RngStream& stream) {
  const double beta = spec.order.beta;
  const double alpha = spec.order.alpha;
  double s = t;
  if (beta < 1.0) {
    s = draw(InverseSubordinator{beta, t}, stream);
  }
  double tau = s;
  if (alpha < 2.0) {
    tau = draw(StableOneSided{alpha / 2.0}, stream) * std::pow(s, 2.0 / alpha);
  }
  return {tau, spec.initial.sample(stream)};
}

}  // namespace

InitialData InitialData::point_mass(double x0) {
  InitialData d;
  d.kind_ = Kind::kPoint;
  d.x0_ = x0;
  if (!std::isfinite(x0)) throw std::invalid_argument("InitialData: x0 must be finite");
  return d;
}

InitialData InitialData::gaussian(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    throw std::invalid_argument("InitialData: gaussian needs finite mean and variance > 0");
  }
  InitialData d;
  d.kind_ = Kind::kGaussian;
  d.mean_ = mean;
  d.sd_ = std::sqrt(variance);
  return d;
}

InitialData InitialData::tabulated(std::vector<double> x, std::vector<double> density) {
  if (x.size() != density.size() || x.size() < 2) {
    throw std::invalid_argument("InitialData: tabulated needs matching lists of length >= 2");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(density[i]) || density[i] < 0.0) {
      throw std::invalid_argument("InitialData: tabulated values must be finite, density >= 0");
    }
    if (i > 0) {
      if (!(x[i] > x[i - 1])) {
        throw std::invalid_argument("InitialData: abscissae must be strictly increasing");
      }
      mass += 0.5 * (density[i] + density[i - 1]) * (x[i] - x[i - 1]);
    }
  }
  if (!(mass > 0.0)) {
    throw std::invalid_argument("InitialData: tabulated density has zero mass");
  }
  InitialData d;
  d.kind_ = Kind::kTabulated;
  d.xs_ = std::move(x);
  d.density_ = std::move(density);
  d.cdf_.resize(d.xs_.size());
  d.cdf_[0] = 0.0;
  for (std::size_t i = 1; i < d.xs_.size(); ++i) {
    d.cdf_[i] = d.cdf_[i - 1] +
                0.5 * (d.density_[i] + d.density_[i - 1]) * (d.xs_[i] - d.xs_[i - 1]) / mass;
  }
  d.cdf_.back() = 1.0;
  for (double& v : d.density_) v /= mass;
  return d;
}

double InitialData::sample(RngStream& stream) const {
  switch (kind_) {
    case Kind::kPoint:
      return x0_;
    case Kind::kGaussian:
      return mean_ + sd_ * detail::normal01(stream);
    case Kind::kTabulated:
      break;
  }
  const double u = stream.uniform_open01();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t i =
      std::min<std::size_t>(cdf_.size() - 2,
                            it == cdf_.begin() ? 0 : static_cast<std::size_t>(it - cdf_.begin()) - 1);
  const double h = xs_[i + 1] - xs_[i];
  const double d0 = density_[i];
  const double d1 = density_[i + 1];
  const double target = u - cdf_[i];
  // solve 0.5 * slope * w^2 + d0 * w = target for the offset w in [0, h]
  const double slope = (d1 - d0) / h;
  double w;
  if (std::abs(slope) * h < 1e-12 * std::max(d0, 1e-300)) {
    w = target / std::max(d0, 1e-300);
  } else {
    const double disc = std::max(0.0, d0 * d0 + 2.0 * slope * target);
    w = (std::sqrt(disc) - d0) / slope;
  }
  return xs_[i] + std::clamp(w, 0.0, h);
}

Estimate heat_solution(const HeatSpec& spec, double x, double t, std::uint64_t n,
                       std::uint64_t master_seed) {
  validate(spec.order);
  if (spec.order.theta != 0.0) {
    throw std::domain_error("heat_solution: only theta = 0 is supported");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("heat_solution: t must be finite and > 0");
  }
  if (n == 0) throw std::invalid_argument("heat_solution: n must be >= 1");

  if (spec.order.alpha == 2.0 && spec.order.beta == 1.0 && spec.initial.is_point_mass()) {
    Estimate e;
    e.mean = heat_kernel(x - spec.initial.location(), t);
    e.std_error = 0.0;
    e.n = n;
    return e;
  }

  RngStream stream(master_seed, 0);
  Accumulator acc;
  for (std::uint64_t i = 0; i < n; ++i) {
    const HeatDraw d = draw_heat(spec, t, stream);
    const double v = heat_kernel(x - d.y, d.tau);
    ensure_finite(v, "heat_solution", d.tau);
    acc.add(v);
  }
  return acc.estimate();
}

SolutionSurface heat_surface(const HeatSpec& spec, const GridSpec& x_grid, const GridSpec& t_grid,
                             std::uint64_t n, std::uint64_t master_seed, unsigned workers) {
  validate(x_grid);
  validate(t_grid);
  if (workers == 0) throw std::invalid_argument("heat_surface: workers must be >= 1");

  SolutionSurface surf;
  surf.x = x_grid.points();
  surf.t = t_grid.points();
  surf.cells.resize(surf.x.size() * surf.t.size());

  const std::size_t total = surf.cells.size();
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const std::size_t ix = c / surf.t.size();
      const std::size_t it = c % surf.t.size();
      surf.cells[c] = heat_solution(spec, surf.x[ix], surf.t[it], n,
                                    RngStream::derive_seed(master_seed, c));
    }
  };

  const unsigned used = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));
  if (used <= 1) {
    run_range(0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(used);
    const std::size_t chunk = (total + used - 1) / used;
    for (unsigned w = 0; w < used; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return surf;
}

double frac_abs_moment(const FracOrder& order, double s, double t) {
  validate(order);
  if (order.theta != 0.0) {
    throw std::domain_error("frac_abs_moment: only theta = 0 is supported");
  }
  if (!(t > 0.0)) throw std::invalid_argument("frac_abs_moment: t must be > 0");
  const double alpha = order.alpha;
  const double beta = order.beta;
  if (!(s > -std::min(1.0, alpha)) || !(s < alpha)) {
    throw std::domain_error("frac_abs_moment: s must lie in (-min(1, alpha), alpha)");
  }
  if (s == 0.0) return 1.0;
  const double r = s / alpha;
  return std::pow(t, beta * r) * gamma_fn(1.0 - r) * gamma_fn(1.0 + r) * gamma_fn(1.0 + s) /
         (gamma_fn(1.0 - 0.5 * s) * gamma_fn(1.0 + 0.5 * s) * gamma_fn(1.0 + beta * r));
}

Estimate wave_solution(const WaveSpec& spec, double x, double t, std::uint64_t n,
                       std::uint64_t master_seed) {
  if (!(spec.beta > 0.0) || spec.beta >= 1.0) {
    throw std::domain_error("wave_solution: beta must lie in (0, 1)");
  }
  if (!(spec.wave_speed > 0.0) || !std::isfinite(spec.wave_speed)) {
    throw std::domain_error("wave_solution: wave_speed must be > 0");
  }
  if (!spec.profile) throw std::invalid_argument("wave_solution: profile must be callable");
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("wave_solution: t must be finite and >= 0");
  }
  if (n == 0) throw std::invalid_argument("wave_solution: n must be >= 1");

  RngStream stream(master_seed, 0);
  Accumulator acc;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double s = draw(InverseSubordinator{spec.beta, t}, stream);
    const double shift = spec.wave_speed * s;
    const double v = 0.5 * (spec.profile(x - shift) + spec.profile(x + shift));
    ensure_finite(v, "wave_solution", s);
    acc.add(v);
  }
  return acc.estimate();
}

double ou_kernel(double x, double s, double y) {
  if (!(s >= 0.0)) throw std::invalid_argument("ou_kernel: s must be >= 0");
  const double var = std::max(1e-12, 1.0 - std::exp(-2.0 * s));
  const double m = x - std::exp(-s) * y;
  return std::exp(-m * m / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

Estimate fokker_planck_solution(const FokkerPlanckSpec& spec, double x, double t, std::uint64_t n,
                                std::uint64_t master_seed) {
  if (!(spec.beta > 0.0) || spec.beta > 1.0) {
    throw std::domain_error("fokker_planck_solution: beta must lie in (0, 1]");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("fokker_planck_solution: t must be finite and > 0");
  }
  if (n == 0) throw std::invalid_argument("fokker_planck_solution: n must be >= 1");

  RngStream stream(master_seed, 0);
  Accumulator acc;
  for (std::uint64_t i = 0; i < n; ++i) {
    double s = t;
    if (spec.beta < 1.0) {
      s = draw(InverseSubordinator{spec.beta, t}, stream);
    }
    const double y = spec.initial.sample(stream);
    const double v = ou_kernel(x, s, y);
    ensure_finite(v, "fokker_planck_solution", s);
    acc.add(v);
  }
  return acc.estimate();
}

}  // namespace fracmc
