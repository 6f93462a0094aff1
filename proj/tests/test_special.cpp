#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fracmc/gamma.hpp"
#include "fracmc/mittag_leffler.hpp"
#include "fracmc/quadrature.hpp"

using namespace fracmc;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
}  // namespace

TEST_SUITE("special") {

TEST_CASE("gamma reproduces integer factorials exactly") {
  double factorial = 1.0;
  for (int n = 1; n <= 22; ++n) {
    CHECK(gamma_fn(static_cast<double>(n)) == factorial);
    factorial *= n;
  }
}

TEST_CASE("gamma at half integers") {
  CHECK(gamma_fn(0.5) == doctest::Approx(kSqrtPi).epsilon(1e-15));
  CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * kSqrtPi).epsilon(1e-15));
  CHECK(gamma_fn(2.5) == doctest::Approx(0.75 * kSqrtPi).epsilon(2e-15));
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * kSqrtPi).epsilon(1e-13));
}

TEST_CASE("gamma agrees with the C library over the real line") {
  const double xs[] = {0.07, 0.5,   1.31,  3.7,  10.3, 25.6, 50.2, 100.9,
                       140.5, 155.3, 170.6, -0.3, -1.7, -5.5, -20.3};
  for (double x : xs) {
    CAPTURE(x);
    CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(5e-13).scale(0.0));
  }
}

TEST_CASE("gamma recurrence x*gamma(x) = gamma(x+1)") {
  const double xs[] = {-2.5, -0.5, 0.3, 1.7, 5.5, 33.3, 121.7};
  for (double x : xs) {
    CAPTURE(x);
    CHECK(x * gamma_fn(x) == doctest::Approx(gamma_fn(x + 1.0)).epsilon(5e-14).scale(0.0));
  }
}

TEST_CASE("gamma overflows to infinity past the double range") {
  CHECK(std::isinf(gamma_fn(172.0)));
  CHECK(std::isfinite(gamma_fn(171.0)));
}

TEST_CASE("gamma throws at the poles") {
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-7.0), std::domain_error);
}

TEST_CASE("log gamma agrees with the C library") {
  const double xs[] = {0.07, 0.6, 1.31, 3.7, 25.6, 100.9, 170.6, 500.0, 1e4};
  for (double x : xs) {
    CAPTURE(x);
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("reciprocal gamma is exactly zero at the poles") {
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-1.0) == 0.0);
  CHECK(rgamma(-2.0) == 0.0);
  CHECK(rgamma(-10.0) == 0.0);
}

TEST_CASE("reciprocal gamma inverts gamma") {
  const double xs[] = {0.21, 0.5, 1.0, 2.0, 4.9, 22.5, 77.7, 150.2, -0.7, -3.3, -15.1};
  for (double x : xs) {
    CAPTURE(x);
    CHECK(rgamma(x) * gamma_fn(x) == doctest::Approx(1.0).epsilon(5e-13));
  }
  CHECK(rgamma(1.0) == 1.0);
  CHECK(rgamma(2.0) == 1.0);
}

TEST_CASE("reciprocal gamma stays finite where gamma overflows") {
  // Gamma(172) overflows double but its reciprocal is still a subnormal.
  CHECK(rgamma(172.0) > 0.0);
  CHECK(rgamma(172.0) < 1e-300);
  // Far enough out even the reciprocal underflows to an exact zero.
  CHECK(rgamma(200.0) == 0.0);
}

TEST_CASE("sin of pi x hits integer zeros exactly") {
  CHECK(detail::sin_pi(3.0) == 0.0);
  CHECK(detail::sin_pi(-6.0) == 0.0);
  CHECK(detail::sin_pi(0.5) == 1.0);
  CHECK(detail::sin_pi(-0.5) == -1.0);
  CHECK(detail::sin_pi(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("quadrature integrates smooth functions to tolerance") {
  const auto square = [](double x) { return x * x; };
  const QuadratureResult r1 = integrate(square, 0.0, 1.0);
  CHECK(std::abs(r1.value - 1.0 / 3.0) < 1e-13);
  CHECK(r1.error_estimate < 1e-10);

  const QuadratureResult r2 = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
  CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-13));

  const QuadratureResult r3 = integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0);
  CHECK(r3.value == doctest::Approx(kSqrtPi).epsilon(1e-12));
}

TEST_CASE("quadrature adapts around a derivative kink") {
  const auto f = [](double x) { return std::sqrt(std::abs(x - 0.3)); };
  const double exact = (std::pow(0.7, 1.5) + std::pow(0.3, 1.5)) / 1.5;
  const QuadratureResult r = integrate(f, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
  CHECK(r.subdivisions > 1);
}

TEST_CASE("quadrature reports failure with the partial value attached") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-14;
  cfg.max_subdivisions = 4;
  bool thrown = false;
  try {
    integrate([](double x) { return std::sin(1000.0 * x); }, 0.0, 10.0, cfg);
  } catch (const quadrature_error& e) {
    thrown = true;
    CHECK(std::isfinite(e.value()));
    CHECK(e.achieved_error() > 0.0);
  }
  CHECK(thrown);
}

TEST_CASE("quadrature rejects non-finite integrand values") {
  CHECK_THROWS_AS(
      integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
      quadrature_error);
}

TEST_CASE("ml with unit parameters is the exponential") {
  for (double z : {-10.0, -1.0, 0.0, 0.5, 3.0, 10.0}) {
    CAPTURE(z);
    CHECK(mittag_leffler({1.0, 1.0}, z) == std::exp(z));
  }
}

TEST_CASE("ml at zero equals the reciprocal gamma of the second parameter") {
  CHECK(mittag_leffler({0.5, 1.0}, 0.0) == 1.0);
  CHECK(mittag_leffler({0.3, 2.2}, 0.0) == doctest::Approx(rgamma(2.2)).epsilon(1e-15));
}

TEST_CASE("ml of order one half matches the scaled complementary error function") {
  // E_{1/2}(-x) = exp(x^2) erfc(x); direct library form up to x ~ 26, frozen
  // scaled values past the double overflow of the unscaled product. The series
  // branch cancels ~exp(x^2) of headroom, so its tolerance widens with x up to
  // the branch cutoff near 3.74; the integral branch beyond is uniformly tight.
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 8.0, 15.0, 26.0}) {
    CAPTURE(x);
    const double expected = std::exp(x * x) * std::erfc(x);
    const double tol = x <= 2.0 ? 5e-12 : (x <= 4.0 ? 1e-9 : 5e-12);
    CHECK(mittag_leffler({0.5, 1.0}, -x) == doctest::Approx(expected).epsilon(tol));
  }
  CHECK(mittag_leffler({0.5, 1.0}, -1.0) == doctest::Approx(0.42758357615580705).epsilon(1e-12));
  CHECK(mittag_leffler({0.5, 1.0}, -10.0) ==
        doctest::Approx(0.056140992743822588).epsilon(1e-11));
  CHECK(mittag_leffler({0.5, 1.0}, -30.0) ==
        doctest::Approx(0.018795888861416754).epsilon(1e-11));
  CHECK(mittag_leffler({0.5, 1.0}, -50.0) ==
        doctest::Approx(0.011281536265323772).epsilon(3e-10));
  CHECK(mittag_leffler({0.5, 1.0}, -80.0) ==
        doctest::Approx(0.0070518189570391021).epsilon(3e-10));
}

TEST_CASE("ml on the positive axis") {
  CHECK(mittag_leffler({0.5, 1.0}, 1.0) == doctest::Approx(5.008980080762283).epsilon(1e-12));
  const double expected2 = std::exp(4.0) * (2.0 - std::erfc(2.0));
  CHECK(mittag_leffler({0.5, 1.0}, 2.0) == doctest::Approx(expected2).epsilon(1e-12));
  const double expected5 = std::exp(25.0) * (2.0 - std::erfc(5.0));
  CHECK(mittag_leffler({0.5, 1.0}, 5.0) == doctest::Approx(expected5).epsilon(1e-12));
  const double expected8 = std::exp(64.0) * (2.0 - std::erfc(8.0));
  CHECK(mittag_leffler({0.5, 1.0}, 8.0) == doctest::Approx(expected8).epsilon(1e-12));
  // Near the overflow guard the erfc(-x) factor saturates at 2.
  CHECK(mittag_leffler({0.5, 1.0}, 26.0) ==
        doctest::Approx(2.0 * std::exp(676.0)).epsilon(1e-10));
  CHECK_THROWS_AS(mittag_leffler({0.5, 1.0}, 800.0), std::overflow_error);
}

TEST_CASE("ml two-parameter recurrence holds across evaluation regimes") {
  // E_{b,a}(z) = 1/Gamma(a) + z E_{b,a+b}(z) ties the series, integral and
  // asymptotic branches together.
  for (double beta : {0.3, 0.5, 0.8}) {
    for (double alpha : {0.7, 1.0, 1.8}) {
      for (double z : {-0.5, -3.0, -20.0, -45.0, -60.0, -120.0}) {
        CAPTURE(beta);
        CAPTURE(alpha);
        CAPTURE(z);
        const double lhs = mittag_leffler({beta, alpha}, z);
        const double rhs = rgamma(alpha) + z * mittag_leffler({beta, alpha + beta}, z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("ml with second parameter two matches the exponential difference quotient") {
  for (double z : {-10.0, -3.0, 0.5, 10.0}) {
    CAPTURE(z);
    const double expected = (std::exp(z) - 1.0) / z;
    CHECK(mittag_leffler({1.0, 2.0}, z) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("ml with first parameter two gives circular functions") {
  for (double t : {0.3, 2.0, 7.5}) {
    CAPTURE(t);
    CHECK(mittag_leffler({2.0, 1.0}, -t * t) == doctest::Approx(std::cos(t)).epsilon(1e-12));
    CHECK(mittag_leffler({2.0, 2.0}, -t * t) ==
          doctest::Approx(std::sin(t) / t).epsilon(1e-12));
  }
}

TEST_CASE("complex ml agrees with the exponential and frozen references") {
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> e1 = mittag_leffler({1.0, 1.0}, i);
  CHECK(e1.real() == doctest::Approx(std::cos(1.0)).epsilon(1e-13));
  CHECK(e1.imag() == doctest::Approx(std::sin(1.0)).epsilon(1e-13));

  const std::complex<double> v = mittag_leffler({0.5, 1.0}, std::complex<double>(0.3, 0.4));
  CHECK(v.real() == doctest::Approx(1.1560949880874196).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(0.69687746798459449).epsilon(1e-12));

  // Conjugate symmetry of a real-coefficient series.
  const std::complex<double> z(1.2, -0.8);
  const std::complex<double> a = mittag_leffler({0.7, 1.3}, z);
  const std::complex<double> b = mittag_leffler({0.7, 1.3}, std::conj(z));
  CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-14));
  CHECK(a.imag() == doctest::Approx(-b.imag()).epsilon(1e-14));

  CHECK_THROWS_AS(mittag_leffler({0.5, 1.0}, std::complex<double>(60.0, 10.0)),
                  std::domain_error);
}

TEST_CASE("complex and real ml agree on the real axis") {
  for (double z : {-2.0, -0.3, 0.7}) {
    CAPTURE(z);
    const std::complex<double> c = mittag_leffler({0.7, 1.0}, std::complex<double>(z, 0.0));
    CHECK(c.imag() == 0.0);
    CHECK(c.real() == doctest::Approx(mittag_leffler({0.7, 1.0}, z)).epsilon(1e-13));
  }
}

TEST_CASE("fractional sine and cosine reduce to sine and cosine at order one") {
  for (int k = 0; k <= 32; ++k) {
    const double t = 4.0 * kPi * k / 32.0;
    CAPTURE(t);
    CHECK(std::abs(frac_sin(1.0, t) - std::sin(t)) < 1e-10);
    CHECK(std::abs(frac_cos(1.0, t) - std::cos(t)) < 1e-10);
  }
}

TEST_CASE("fractional trig at order one half has closed forms") {
  // cos_{1/2}(t) = E_{1,1}(-t) = exp(-t); sin_{1/2} values frozen from an
  // independent confluent-hypergeometric evaluation.
  for (double t : {0.2, 1.0, 4.0, 9.0}) {
    CAPTURE(t);
    CHECK(frac_cos(0.5, t) == doctest::Approx(std::exp(-t)).epsilon(1e-12));
  }
  CHECK(frac_sin(0.5, 0.5) == doctest::Approx(0.57828954244423902).epsilon(1e-10));
  CHECK(frac_sin(0.5, 1.0) == doctest::Approx(0.60715770584139361).epsilon(1e-10));
  CHECK(frac_sin(0.5, 5.0) == doctest::Approx(0.29193927286794435).epsilon(1e-10));
  CHECK(frac_sin(0.5, 10.0) == doctest::Approx(0.1892512546236832).epsilon(1e-10));
}

TEST_CASE("fractional trig initial values are exact") {
  for (double beta : {0.2, 0.5, 1.0}) {
    CAPTURE(beta);
    CHECK(frac_sin(beta, 0.0) == 0.0);
    CHECK(frac_cos(beta, 0.0) == 1.0);
  }
  CHECK_THROWS_AS(frac_sin(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(frac_cos(1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(frac_sin(0.5, -1.0), std::domain_error);
}

TEST_CASE("series transform of exponential coefficients gives ml") {
  for (double lambda : {-1.0, 0.7}) {
    std::vector<double> coeffs(101);
    double c = 1.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      coeffs[n] = c;
      c *= lambda;
    }
    for (double beta : {0.5, 0.9}) {
      for (double t : {0.3, 1.0, 1.5}) {
        CAPTURE(lambda);
        CAPTURE(beta);
        CAPTURE(t);
        const double expected = mittag_leffler({beta, 1.0}, lambda * std::pow(t, beta));
        CHECK(frac_transform_series(coeffs, beta, t) ==
              doctest::Approx(expected).epsilon(1e-11));
      }
    }
  }
  CHECK_THROWS_AS(frac_transform_series({}, 0.5, 1.0), std::invalid_argument);
  CHECK(frac_transform_series({3.0}, 0.5, 2.0) == 3.0);
}

TEST_CASE("heat kernel integrates to one") {
  for (double t : {0.1, 1.0, 10.0}) {
    CAPTURE(t);
    const double radius = 12.0 * std::sqrt(t);
    const QuadratureResult r =
        integrate([t](double x) { return heat_kernel(x, t); }, -radius, radius);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK(heat_kernel(0.0, 1.0) == doctest::Approx(0.28209479177387814).epsilon(1e-15));
  CHECK_THROWS_AS(heat_kernel(0.0, 0.0), std::domain_error);
}

TEST_CASE("operator order validation") {
  CHECK_NOTHROW(validate(FracOrder{0.5, 1.0, 0.0}));
  CHECK_NOTHROW(validate(FracOrder{1.0, 2.0, 0.0}));
  CHECK_NOTHROW(validate(FracOrder{0.5, 0.8, 0.7}));
  CHECK_THROWS_AS(validate(FracOrder{0.0, 2.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(validate(FracOrder{1.2, 2.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(validate(FracOrder{0.5, 2.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(validate(FracOrder{0.5, 2.0, 0.1}), std::domain_error);
  CHECK_THROWS_AS(validate(FracOrder{0.5, 1.5, 0.6}), std::domain_error);
}

}  // TEST_SUITE
