#include "fracmc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fracmc/gamma.hpp"
#include "fracmc/green.hpp"

namespace fracmc {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Wynn's epsilon algorithm over a sequence of partial sums; best() returns
// the deepest even-order extrapolation of the latest diagonal.
class EpsilonTable {
 public:
  void add(double s) {
    const std::vector<double> old = diag_;
    diag_.resize(old.size() + 1);
    diag_[0] = s;
    for (std::size_t k = 1; k < diag_.size(); ++k) {
      const double denom = diag_[k - 1] - old[k - 1];
      if (std::abs(denom) < 1e-305) {
        // column converged exactly; deeper entries would blow up
        diag_.resize(k);
        break;
      }
      const double lower = k >= 2 ? old[k - 2] : 0.0;
      diag_[k] = lower + 1.0 / denom;
    }
    prev_best_ = best_;
    const std::size_t top = diag_.size() - 1;
    best_ = diag_[(top % 2 == 0) ? top : top - 1];
  }

  double best() const { return best_; }
  double step() const { return std::abs(best_ - prev_best_); }
  std::size_t entries() const { return diag_.size(); }

 private:
  std::vector<double> diag_;
  double best_ = kNan;
  double prev_best_ = kNan;
};

// Adaptive integration of f over [a, b] split at the given interior points
// (used to keep evaluator region boundaries away from the error estimator).
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& seams, const QuadratureConfig& piece_cfg,
                       double* err_out) {
  std::vector<double> cuts{a};
  for (double s : seams) {
    if (s > a && s < b) cuts.push_back(s);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const QuadratureResult r = integrate(f, cuts[i], cuts[i + 1], piece_cfg);
    total += r.value;
    err += r.error_estimate;
  }
  if (err_out) *err_out += err;
  return total;
}

// Integrated large-argument expansion over [R, inf):
//   int_R^inf E_beta(-k^alpha t^beta) dk
//     ~= sum_m (-1)^{m+1} rgamma(1 - m beta) t^{-m beta} R^{1 - m alpha} / (m alpha - 1),
// valid for alpha > 1; err receives the first omitted term's magnitude.
double tail_expansion(double alpha, double beta, double t, double R, double* err) {
  double sum = 0.0;
  double best = kInf;
  *err = 0.0;
  for (int m = 1; m <= 12; ++m) {
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    const double term = sign * rgamma(1.0 - m * beta) * std::pow(t, -m * beta) *
                        std::pow(R, 1.0 - m * alpha) / (m * alpha - 1.0);
    const double mag = std::abs(term);
    if (mag == 0.0) continue;
    if (mag > best) {
      *err = mag;
      return sum;
    }
    sum += term;
    best = mag;
    *err = mag;
  }
  return sum;
}

}  // namespace

double green_fourier(const FracOrder& order, double x, double t, const QuadratureConfig& cfg) {
  validate(order);
  if (order.theta != 0.0) {
    throw std::domain_error("green_fourier: only theta = 0 is supported");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("green_fourier: t must be finite and > 0");
  }
  if (!std::isfinite(x)) {
    throw std::invalid_argument("green_fourier: x must be finite");
  }

  const double alpha = order.alpha;
  const double beta = order.beta;
  const double ax = std::abs(x);
  const double tb = std::pow(t, beta);
  const MLParams ml{beta, 1.0};

  auto u = [&](double k) { return mittag_leffler(ml, -std::pow(k, alpha) * tb); };
  auto f = [&](double k) { return std::cos(k * ax) * u(k); };

  QuadratureConfig piece_cfg;
  piece_cfg.abs_tol = std::max(0.01 * cfg.abs_tol, 1e-14);
  piece_cfg.rel_tol = 1e-12;
  piece_cfg.max_subdivisions = cfg.max_subdivisions;

  // evaluator hand-off points, kept off the interior of any one panel
  std::vector<double> seams;
  if (beta < 1.0) {
    seams.push_back(std::pow(std::pow(14.0, beta) / tb, 1.0 / alpha));
    seams.push_back(std::pow(50.0 / tb, 1.0 / alpha));
  }

  if (beta == 1.0) {
    // integrand decays like exp(-k^alpha t); past R it is below 1e-12
    const double R = cfg.truncation_radius > 0.0
                         ? cfg.truncation_radius
                         : std::pow(27.64 / tb, 1.0 / alpha);
    double err = 0.0;
    const double head = integrate_split(f, 0.0, R, seams, piece_cfg, &err);
    return head / std::numbers::pi;
  }

  if (ax == 0.0) {
    if (alpha <= 1.0) {
      throw quadrature_error(
          "green_fourier: integral diverges at x = 0 for alpha <= 1 and beta < 1 "
          "(the algebraic k^{ -alpha} tail of the transform is not integrable)",
          kNan, kInf);
    }
    double R = cfg.truncation_radius > 0.0 ? cfg.truncation_radius
                                           : std::pow(50.0 / tb, 1.0 / alpha);
    double tail_err = 0.0;
    double tail = tail_expansion(alpha, beta, t, R, &tail_err);
    for (int i = 0; i < 60 && tail_err > 0.25 * cfg.abs_tol * std::numbers::pi; ++i) {
      R *= 2.0;
      tail = tail_expansion(alpha, beta, t, R, &tail_err);
    }
    double err = 0.0;
    const double head = integrate_split(u, 0.0, R, seams, piece_cfg, &err);
    return (head + tail) / std::numbers::pi;
  }

  // oscillatory path: head up to the first cosine zero, then half-period
  // segments accelerated with the epsilon algorithm
  const double z0 = 0.5 * std::numbers::pi / ax;
  const double period = std::numbers::pi / ax;
  double piece_err = 0.0;
  double partial = integrate_split(f, 0.0, z0, seams, piece_cfg, &piece_err);

  EpsilonTable eps;
  eps.add(partial);
  double best = partial;
  int small_steps = 0;
  const int max_segments = 512;
  for (int j = 0; j < max_segments; ++j) {
    const double a = z0 + j * period;
    const double b = a + period;
    const double seg = integrate_split(f, a, b, seams, piece_cfg, &piece_err);
    partial += seg;
    eps.add(partial);
    best = eps.best();
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(best));
    const double scale = std::numbers::pi;  // tolerances refer to the final value
    if (eps.entries() >= 4 && eps.step() < 0.5 * target * scale) {
      ++small_steps;
    } else {
      small_steps = 0;
    }
    if (small_steps >= 2 || std::abs(seg) < 0.01 * target * scale) {
      return best / std::numbers::pi;
    }
  }
  throw quadrature_error("green_fourier: oscillatory tail did not settle within 512 segments",
                         best / std::numbers::pi, eps.step() / std::numbers::pi);
}

double g_half_density(double x, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("g_half_density: t must be > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("g_half_density: x must be >= 0");
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(std::numbers::pi * t);
}

LaplaceCheck laplace_check(double beta, double s, double t, std::uint64_t n,
                           std::uint64_t master_seed) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("laplace_check: s must be finite and >= 0");
  }
  RngStream stream(master_seed, 0);
  LaplaceCheck out;
  out.mc = expect(stream, InverseSubordinator{beta, t},
                  [s](double v) { return std::exp(-s * v); }, n);
  out.exact = mittag_leffler({beta, 1.0}, -s * std::pow(t, beta));
  return out;
}

double green_mass_radius(const FracOrder& order, double t, double tail_tol) {
  validate(order);
  if (!(tail_tol > 0.0) || !(tail_tol < 1.0)) {
    throw std::invalid_argument("green_mass_radius: tail_tol must lie in (0, 1)");
  }
  double radius = kInf;
  for (int i = 1; i < 60; ++i) {
    const double s = order.alpha * static_cast<double>(i) / 60.0;
    const double moment = frac_abs_moment(order, s, t);
    radius = std::min(radius, std::pow(moment / tail_tol, 1.0 / s));
  }
  return radius;
}

}  // namespace fracmc
