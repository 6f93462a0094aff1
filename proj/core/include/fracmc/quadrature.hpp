#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace fracmc {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  // Cutoff for semi-infinite ranges; 0 means the caller picks one from the
  // integrand's decay envelope.
  double truncation_radius = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

// Carries the best value and the achieved error when a tolerance target is
// missed, so callers can still inspect the partial result.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double value, double achieved_error)
      : std::runtime_error(what), value_(value), achieved_error_(achieved_error) {}
  double value() const noexcept { return value_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double value_;
  double achieved_error_;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b]: bisects the worst interval until the
// summed error estimate meets max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg = {});

}  // namespace fracmc
