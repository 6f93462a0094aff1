#pragma once

namespace fracmc {

// Gamma(x). Exact table values at integer x in [1, 23); poles at
// non-positive integers raise std::domain_error; overflow gives +inf.
double gamma_fn(double x);

// log Gamma(x), x > 0 only.
double log_gamma(double x);

// 1/Gamma(x) for any finite x. Exactly zero at the poles of Gamma.
double rgamma(double x);

namespace detail {

// sin(pi*x) with argument reduction at the integers, so the zeros are exact.
double sin_pi(double x);

}  // namespace detail

}  // namespace fracmc
