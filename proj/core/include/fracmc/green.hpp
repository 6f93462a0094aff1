#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fracmc/mc.hpp"
#include "fracmc/mittag_leffler.hpp"

namespace fracmc {

// Initial profile for the kernel estimators. Point mass needs no draws; the
// Gaussian samples directly; a tabulated density samples by inverse CDF with
// linear interpolation of the density between abscissae.
class InitialData {
 public:
  static InitialData point_mass(double x0);
  static InitialData gaussian(double mean, double variance);
  static InitialData tabulated(std::vector<double> x, std::vector<double> density);

  bool is_point_mass() const { return kind_ == Kind::kPoint; }
  double location() const { return x0_; }
  double sample(RngStream& stream) const;

 private:
  enum class Kind { kPoint, kGaussian, kTabulated };
  Kind kind_ = Kind::kPoint;
  double x0_ = 0.0;
  double mean_ = 0.0;
  double sd_ = 1.0;
  std::vector<double> xs_;
  std::vector<double> density_;
  std::vector<double> cdf_;
};

struct HeatSpec {
  FracOrder order;  // theta must be 0
  InitialData initial = InitialData::point_mass(0.0);
};

struct WaveSpec {
  double beta = 0.5;       // time order is beta + 1, beta in (0, 1)
  double wave_speed = 1.0;
  std::function<double(double)> profile;  // initial displacement
};

struct FokkerPlanckSpec {
  double beta = 1.0;  // (0, 1]; beta = 1 is the classical drift-diffusion
  InitialData initial = InitialData::point_mass(0.0);
};

// Space-time fractional diffusion at one point: mean of the Gaussian kernel
// over the randomized operational variance. alpha = 2, beta = 1 with a point
// mass is fully deterministic and returns the kernel value with zero error.
Estimate heat_solution(const HeatSpec& spec, double x, double t, std::uint64_t n,
                       std::uint64_t master_seed);

// Full grid; cell (ix, it) runs on seed derive_seed(master_seed, ix * nt + it),
// so the surface is reproducible for any worker count.
SolutionSurface heat_surface(const HeatSpec& spec, const GridSpec& x_grid, const GridSpec& t_grid,
                             std::uint64_t n, std::uint64_t master_seed, unsigned workers = 1);

// E |X(t)|^s for the (alpha, beta) process, -min(1, alpha) < s < alpha.
double frac_abs_moment(const FracOrder& order, double s, double t);

// Fractional wave: average of the two d'Alembert rays at the random time.
Estimate wave_solution(const WaveSpec& spec, double x, double t, std::uint64_t n,
                       std::uint64_t master_seed);

// Ornstein-Uhlenbeck transition density from y after elapsed time s, with the
// equilibrium variance clamped below by 1e-12 for s near 0.
double ou_kernel(double x, double s, double y);

// Time-fractional Fokker-Planck solution via the OU kernel at random time.
Estimate fokker_planck_solution(const FokkerPlanckSpec& spec, double x, double t, std::uint64_t n,
                                std::uint64_t master_seed);

}  // namespace fracmc
