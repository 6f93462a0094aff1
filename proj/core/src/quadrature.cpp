#include "fracmc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace fracmc {
namespace {

// 15-point Kronrod nodes on [-1, 1] (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

bool worse(const Segment& s1, const Segment& s2) { return s1.error < s2.error; }

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kXgk[i];
    double fsum;
    if (i == 7) {
      fsum = f(c);
    } else {
      fsum = f(c - dx) + f(c + dx);
    }
    if (!std::isfinite(fsum)) {
      throw quadrature_error(
          "integrate: integrand is not finite near x = " + std::to_string(c - dx),
          std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity());
    }
    kronrod += kWgk[i] * fsum;
    if (i & 1) {
      gauss += kWg[i / 2] * fsum;
    }
  }
  Segment s;
  s.a = a;
  s.b = b;
  s.value = kronrod * h;
  s.error = std::abs(kronrod - gauss) * std::abs(h);
  return s;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw std::invalid_argument("integrate: endpoints must be finite");
  }
  if (a == b) {
    return {0.0, 0.0, 0};
  }

  std::priority_queue<Segment, std::vector<Segment>, decltype(&worse)> heap(&worse);
  Segment first = gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  int splits = 0;

  auto tolerance = [&]() { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  while (err > tolerance()) {
    if (splits >= cfg.max_subdivisions) {
      throw quadrature_error("integrate: subdivision limit " +
                                 std::to_string(cfg.max_subdivisions) +
                                 " reached, achieved error " + std::to_string(err),
                             total, err);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw quadrature_error("integrate: interval shrank to roundoff width at x = " +
                                 std::to_string(worst.a) + ", achieved error " +
                                 std::to_string(err),
                             total, err);
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  return {total, err, splits};
}

}  // namespace fracmc
