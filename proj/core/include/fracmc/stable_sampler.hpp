#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fracmc/rng.hpp"

namespace fracmc {

// Standard one-sided stable law, Laplace transform E exp(-s X) = exp(-s^alpha).
struct StableOneSided {
  double alpha;
};

// Stable subordinator at time t: X * t^{1/alpha}.
struct Subordinator {
  double alpha;
  double t;
};

// Inverse (hitting-time) process of the subordinator at time t: t^beta / X^beta.
struct InverseSubordinator {
  double beta;
  double t;
};

// Centered Gaussian with variance 2 * tau, matching the heat kernel scaling.
struct GaussianKernel {
  double tau;
};

using Law = std::variant<StableOneSided, Subordinator, InverseSubordinator, GaussianKernel>;

std::string law_name(const Law& law);
void validate(const Law& law);

// One draw; consumes a fixed number of uniforms per law (two for each stable
// or Gaussian variate), which keeps streams reproducible across batch sizes.
double draw(const Law& law, RngStream& stream);

struct SampleBatch {
  Law law;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  std::vector<double> values;
};

// Kanter's angular factor a(phi) on (0, pi) for stability index 0 < alpha < 1.
double kanter_a(double alpha, double phi);

SampleBatch sample_stable_oneside(RngStream& stream, double alpha, std::size_t n);
SampleBatch sample_subordinator(RngStream& stream, double alpha, double t, std::size_t n);
SampleBatch sample_inverse_subordinator(RngStream& stream, double beta, double t, std::size_t n);
SampleBatch sample_gaussian(RngStream& stream, double tau, std::size_t n);

namespace detail {
// Standard normal via Box-Muller; consumes exactly two uniforms.
double normal01(RngStream& stream);
}  // namespace detail

}  // namespace fracmc
