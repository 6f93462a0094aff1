#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracmc {

// Two-parameter family E_{beta,alpha}(z) = sum_k z^k / Gamma(beta*k + alpha).
struct MLParams {
  double beta;
  double alpha = 1.0;
};

// Orders of the time/space operators: time order beta in (0, 1], space order
// alpha in (0, 2] with skewness |theta| <= min(alpha, 2 - alpha).
struct FracOrder {
  double beta = 1.0;
  double alpha = 2.0;
  double theta = 0.0;
};

void validate(const FracOrder& order);

// Raised when an evaluation cannot reach its accuracy target; carries the
// partial sum and the number of terms consumed for diagnostics.
class ml_convergence_error : public std::runtime_error {
 public:
  ml_convergence_error(const std::string& what, double partial_sum, std::size_t terms)
      : std::runtime_error(what), partial_sum_(partial_sum), terms_(terms) {}
  double partial_sum() const noexcept { return partial_sum_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  double partial_sum_;
  std::size_t terms_;
};

double mittag_leffler(const MLParams& p, double z);
std::complex<double> mittag_leffler(const MLParams& p, std::complex<double> z);

// sin_beta(t) = t^beta E_{2beta, beta+1}(-t^{2beta}) and
// cos_beta(t) = E_{2beta, 1}(-t^{2beta}); both reduce to sin/cos at beta = 1.
double frac_sin(double beta, double t);
double frac_cos(double beta, double t);

// Term-wise transform of a power series: given coeffs c_n of an analytic
// function, returns sum_n c_n t^{beta*n} / Gamma(beta*n + 1).
double frac_transform_series(const std::vector<double>& coeffs, double beta, double t);

// 1D Gaussian kernel with variance 2t: (4 pi t)^{-1/2} exp(-x^2/(4t)).
double heat_kernel(double x, double t);

}  // namespace fracmc
