#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "fracmc/rng.hpp"
#include "fracmc/stable_sampler.hpp"

namespace fracmc {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(n); +inf when n < 2
  std::uint64_t n = 0;
};

// Uniform grid start..stop inclusive; count == 1 collapses to {start}.
struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;

  double point(std::size_t i) const;
  std::vector<double> points() const;
};

void validate(const GridSpec& grid);

// Rectangular x-t array of estimates, row-major with t fastest.
struct SolutionSurface {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<Estimate> cells;

  Estimate& at(std::size_t ix, std::size_t it) { return cells[ix * t.size() + it]; }
  const Estimate& at(std::size_t ix, std::size_t it) const { return cells[ix * t.size() + it]; }
};

// Streaming mean/variance (Welford) with an order-fixed pairwise merge, so a
// sharded reduction gives the same bits regardless of thread scheduling.
struct Accumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  Estimate estimate() const;
};

Accumulator merge(const Accumulator& a, const Accumulator& b);

using Integrand = std::function<double(double)>;

// Sample mean of f under the law, drawing from the given stream.
Estimate expect(RngStream& stream, const Law& law, const Integrand& f, std::uint64_t n);

// Same estimator split over `shards` worker threads. Shard s draws its slice
// from RngStream(master_seed, s); n is split evenly with the remainder on the
// last shard. The result is identical for every shard count's thread
// schedule, and shards == 1 reproduces expect() on stream (master_seed, 0).
Estimate expect_sharded(std::uint64_t master_seed, const Law& law, const Integrand& f,
                        std::uint64_t n, unsigned shards);

struct SweepPoint {
  double t = 0.0;
  Estimate estimate;   // mean of the repeat means, pooled std_error
  double lo = 0.0;     // envelope over repeat means
  double hi = 0.0;
  unsigned repeats = 0;
};

// Runs `estimator` repeats times per grid point on streams
// stream_id = point_index * repeats + r, and reports the repeat envelope.
std::vector<SweepPoint> sweep(std::uint64_t master_seed, const GridSpec& t_grid,
                              const std::function<Estimate(double, RngStream&)>& estimator,
                              unsigned repeats);

}  // namespace fracmc
