#pragma once

#include <cstdint>

#include "fracmc/mc.hpp"
#include "fracmc/mittag_leffler.hpp"
#include "fracmc/quadrature.hpp"

namespace fracmc {

// Green function of the space-time fractional diffusion by Fourier inversion:
//   G(x, t) = (1/pi) int_0^inf cos(k x) E_beta(-k^alpha t^beta) dk.
// theta must be 0. Oscillatory tails are summed over half-period segments
// with epsilon-algorithm acceleration. At x = 0 with alpha <= 1 and beta < 1
// the integral diverges and a quadrature_error is raised.
double green_fourier(const FracOrder& order, double x, double t,
                     const QuadratureConfig& cfg = {});

// Closed-form inverse subordinator density at beta = 1/2:
// exp(-x^2 / (4 t)) / sqrt(pi t) on x >= 0.
double g_half_density(double x, double t);

struct LaplaceCheck {
  Estimate mc;
  double exact = 0.0;
};

// Sample mean of exp(-s T) under the inverse subordinator against its
// transform E_beta(-s t^beta).
LaplaceCheck laplace_check(double beta, double s, double t, std::uint64_t n,
                           std::uint64_t master_seed);

// Radius R with two-sided tail mass below tail_tol, from the optimized
// Markov bound over the fractional absolute moments.
double green_mass_radius(const FracOrder& order, double t, double tail_tol);

}  // namespace fracmc
