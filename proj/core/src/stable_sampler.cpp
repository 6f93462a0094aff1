#include "fracmc/stable_sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracmc {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// Kanter draw assembled in log space: the angular factor alone overflows
// double once 1/(1-alpha) gets large (alpha near 1, phi near pi), while
// log X = (1-alpha)/alpha * (log a - log W) stays modest.
double log_kanter_draw(double alpha, RngStream& stream) {
  const double u = stream.uniform_open01();
  const double phi = std::numbers::pi * stream.uniform_open01();
  const double log_sa = std::log(std::sin(alpha * phi));
  const double log_a = (log_sa - std::log(std::sin(phi))) / (1.0 - alpha) +
                       std::log(std::sin((1.0 - alpha) * phi)) - log_sa;
  return (1.0 - alpha) / alpha * (log_a - std::log(-std::log(u)));
}

double draw_stable_oneside(double alpha, RngStream& stream) {
  return std::exp(log_kanter_draw(alpha, stream));
}

struct ValidateVisitor {
  void operator()(const StableOneSided& law) const {
    require(law.alpha > 0.0 && law.alpha < 1.0, "StableOneSided: alpha must lie in (0, 1)");
  }
  void operator()(const Subordinator& law) const {
    require(law.alpha > 0.0 && law.alpha < 1.0, "Subordinator: alpha must lie in (0, 1)");
    require(law.t > 0.0 && std::isfinite(law.t), "Subordinator: t must be > 0");
  }
  void operator()(const InverseSubordinator& law) const {
    require(law.beta > 0.0 && law.beta < 1.0,
            "InverseSubordinator: beta must lie in (0, 1); at beta = 1 the process "
            "degenerates to the deterministic time t");
    require(law.t >= 0.0 && std::isfinite(law.t), "InverseSubordinator: t must be >= 0");
  }
  void operator()(const GaussianKernel& law) const {
    require(law.tau >= 0.0 && std::isfinite(law.tau), "GaussianKernel: tau must be >= 0");
  }
};

struct DrawVisitor {
  RngStream& stream;
  double operator()(const StableOneSided& law) const {
    return draw_stable_oneside(law.alpha, stream);
  }
  double operator()(const Subordinator& law) const {
    return draw_stable_oneside(law.alpha, stream) * std::pow(law.t, 1.0 / law.alpha);
  }
  double operator()(const InverseSubordinator& law) const {
    // Stays in log space: t^beta / X^beta is representable even when X is not
    // (small beta), and never produces a spurious 0 from an overflowed X.
    const double log_x = log_kanter_draw(law.beta, stream);
    if (law.t == 0.0) return 0.0;
    return std::exp(law.beta * (std::log(law.t) - log_x));
  }
  double operator()(const GaussianKernel& law) const {
    return detail::normal01(stream) * std::sqrt(2.0 * law.tau);
  }
};

struct NameVisitor {
  std::string operator()(const StableOneSided&) const { return "stable-oneside"; }
  std::string operator()(const Subordinator&) const { return "subordinator"; }
  std::string operator()(const InverseSubordinator&) const { return "inverse-subordinator"; }
  std::string operator()(const GaussianKernel&) const { return "gaussian"; }
};

SampleBatch fill_batch(RngStream& stream, const Law& law, std::size_t n) {
  validate(law);
  SampleBatch batch;
  batch.law = law;
  batch.master_seed = stream.master_seed();
  batch.stream_id = stream.stream_id();
  batch.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    batch.values[i] = draw(law, stream);
  }
  return batch;
}

}  // namespace

namespace detail {

double normal01(RngStream& stream) {
  const double u1 = stream.uniform_open01();
  const double u2 = stream.uniform_open01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

double kanter_a(double alpha, double phi) {
  require(alpha > 0.0 && alpha < 1.0, "kanter_a: alpha must lie in (0, 1)");
  require(phi > 0.0 && phi < std::numbers::pi, "kanter_a: phi must lie in (0, pi)");
  const double sa = std::sin(alpha * phi);
  return std::pow(sa / std::sin(phi), 1.0 / (1.0 - alpha)) *
         (std::sin((1.0 - alpha) * phi) / sa);
}

std::string law_name(const Law& law) { return std::visit(NameVisitor{}, law); }

void validate(const Law& law) { std::visit(ValidateVisitor{}, law); }

double draw(const Law& law, RngStream& stream) {
  return std::visit(DrawVisitor{stream}, law);
}

SampleBatch sample_stable_oneside(RngStream& stream, double alpha, std::size_t n) {
  return fill_batch(stream, StableOneSided{alpha}, n);
}

SampleBatch sample_subordinator(RngStream& stream, double alpha, double t, std::size_t n) {
  return fill_batch(stream, Subordinator{alpha, t}, n);
}

SampleBatch sample_inverse_subordinator(RngStream& stream, double beta, double t, std::size_t n) {
  return fill_batch(stream, InverseSubordinator{beta, t}, n);
}

SampleBatch sample_gaussian(RngStream& stream, double tau, std::size_t n) {
  return fill_batch(stream, GaussianKernel{tau}, n);
}

}  // namespace fracmc
