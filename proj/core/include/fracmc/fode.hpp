#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracmc/mc.hpp"

namespace fracmc {

// Linear constant-coefficient problem of fractional time order: with n =
// y0.size(), the companion integer-order equation is
//   sum_{k=1}^{n} a[k-1] z^{(k)}(x) + a[n] z(x) = forcing(x),
//   z^{(i)}(0) = y0[i],
// and the fractional solution is the expectation of z run at the inverse
// subordinator time. a has size n + 1 and a[n-1] (the top derivative) is
// nonzero.
struct LinearFodeSpec {
  std::vector<double> a;
  std::vector<double> y0;
  double beta = 0.5;
  std::function<double(double)> forcing;  // empty = zero forcing
};

void validate(const LinearFodeSpec& spec);

struct RkTolerances {
  double rel = 1e-9;
  double abs = 1e-12;
};

using SystemRhs = std::function<void(double, const std::vector<double>&, std::vector<double>&)>;

// Accepted integration nodes with state and derivative; values between nodes
// come from the cubic Hermite interpolant of the bracketing pair.
struct OdePath {
  struct Node {
    double x;
    std::vector<double> y;
    std::vector<double> dy;
  };
  std::vector<Node> nodes;
  SystemRhs rhs;
  RkTolerances tol;

  double x_max() const { return nodes.empty() ? 0.0 : nodes.back().x; }
};

// Dormand-Prince 5(4) with PI-free step control and FSAL reuse.
OdePath solve_system(const SystemRhs& rhs, const std::vector<double>& y0, double x_max,
                     const RkTolerances& tol = {});

// Companion integer-order initial value problem of `spec` on [0, x_max].
OdePath solve_classical(const LinearFodeSpec& spec, double x_max, const RkTolerances& tol = {});

// Continues an existing path to a larger endpoint, reusing its stored rhs.
void extend_path(OdePath& path, double new_x_max);

// First state component at x; x outside [0, x_max] raises std::out_of_range.
double eval_path(const OdePath& path, double x);

// Expectation of the companion solution at the inverse subordinator time. One
// classical solve per call: draws are sorted, the path is built out to their
// 0.9999 quantile (extended by doubling if the maximum lies beyond), then all
// draws are evaluated in one monotone interpolation sweep.
Estimate solve_fode_at(const LinearFodeSpec& spec, double t, std::uint64_t n, RngStream& stream,
                       const RkTolerances& tol = {});

struct FodePoint {
  double t = 0.0;
  Estimate estimate;
};

// solve_fode_at on every grid point; point i uses RngStream(master_seed, i).
std::vector<FodePoint> solve_fode(const LinearFodeSpec& spec, const GridSpec& t_grid,
                                  std::uint64_t n, std::uint64_t master_seed,
                                  const RkTolerances& tol = {});

// Named example problems: "decay" (D^beta y = -y), "growth" (D^beta y = y),
// "oscillator" (D^{beta+1} y = -y), "constant" (D^beta y = 1).
LinearFodeSpec builtin_fode_spec(const std::string& name, double beta);

// Closed form for the named problems; empty function if the name is unknown.
std::function<double(double)> fode_exact_solution(const std::string& name, double beta);

// Reads `key = value` lines ('#' comments): beta, a, y0 (comma lists),
// forcing_const, or preset = <builtin name>.
LinearFodeSpec parse_fode_config(std::istream& in);
LinearFodeSpec load_fode_config(const std::string& path);

}  // namespace fracmc
