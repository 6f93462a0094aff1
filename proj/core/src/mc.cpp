#include "fracmc/mc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace fracmc {

void validate(const GridSpec& grid) {
  if (grid.count == 0) {
    throw std::invalid_argument("GridSpec: count must be >= 1");
  }
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop)) {
    throw std::invalid_argument("GridSpec: endpoints must be finite");
  }
  if (grid.count > 1 && !(grid.start < grid.stop)) {
    throw std::invalid_argument("GridSpec: start < stop required when count > 1");
  }
}

double GridSpec::point(std::size_t i) const {
  if (count == 1) return start;
  if (i + 1 == count) return stop;  // endpoint is exact, not start + width
  return start + (stop - start) * (static_cast<double>(i) / static_cast<double>(count - 1));
}

std::vector<double> GridSpec::points() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = point(i);
  return out;
}

void Accumulator::add(double x) {
  ++count;
  const double d = x - mean;
  mean += d / static_cast<double>(count);
  m2 += d * (x - mean);
}

Estimate Accumulator::estimate() const {
  Estimate e;
  e.mean = mean;
  e.n = count;
  if (count < 2) {
    e.std_error = std::numeric_limits<double>::infinity();
  } else {
    e.std_error =
        std::sqrt(m2 / (static_cast<double>(count - 1) * static_cast<double>(count)));
  }
  return e;
}

Accumulator merge(const Accumulator& a, const Accumulator& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  Accumulator r;
  r.count = a.count + b.count;
  const double d = b.mean - a.mean;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = static_cast<double>(r.count);
  r.mean = a.mean + d * nb / n;
  r.m2 = a.m2 + b.m2 + d * d * na * nb / n;
  return r;
}

namespace {

Accumulator accumulate(RngStream& stream, const Law& law, const Integrand& f, std::uint64_t n) {
  Accumulator acc;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = draw(law, stream);
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw std::runtime_error("expect: integrand returned a non-finite value at draw " +
                               std::to_string(i) + " (x = " + std::to_string(x) + ")");
    }
    acc.add(v);
  }
  return acc;
}

}  // namespace

Estimate expect(RngStream& stream, const Law& law, const Integrand& f, std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("expect: n must be >= 1");
  }
  validate(law);
  return accumulate(stream, law, f, n).estimate();
}

Estimate expect_sharded(std::uint64_t master_seed, const Law& law, const Integrand& f,
                        std::uint64_t n, unsigned shards) {
  if (shards == 0) {
    throw std::invalid_argument("expect_sharded: shards must be >= 1");
  }
  if (n == 0) {
    throw std::invalid_argument("expect_sharded: n must be >= 1");
  }
  validate(law);

  const std::uint64_t base = n / shards;
  std::vector<Accumulator> accs(shards);
  std::vector<std::exception_ptr> errors(shards);

  auto run_shard = [&](unsigned s) {
    try {
      RngStream stream(master_seed, s);
      const std::uint64_t ns = (s + 1 == shards) ? base + n % shards : base;
      accs[s] = accumulate(stream, law, f, ns);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };

  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(shards);
    for (unsigned s = 0; s < shards; ++s) pool.emplace_back(run_shard, s);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  // fixed-shape pairwise merge tree; never depends on completion order
  while (accs.size() > 1) {
    std::vector<Accumulator> next;
    next.reserve((accs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < accs.size(); i += 2) {
      next.push_back(merge(accs[i], accs[i + 1]));
    }
    if (accs.size() & 1) next.push_back(accs.back());
    accs.swap(next);
  }
  return accs[0].estimate();
}

std::vector<SweepPoint> sweep(std::uint64_t master_seed, const GridSpec& t_grid,
                              const std::function<Estimate(double, RngStream&)>& estimator,
                              unsigned repeats) {
  validate(t_grid);
  if (repeats == 0) {
    throw std::invalid_argument("sweep: repeats must be >= 1");
  }
  std::vector<SweepPoint> out;
  out.reserve(t_grid.count);
  for (std::size_t i = 0; i < t_grid.count; ++i) {
    SweepPoint p;
    p.t = t_grid.point(i);
    p.repeats = repeats;
    p.lo = std::numeric_limits<double>::infinity();
    p.hi = -std::numeric_limits<double>::infinity();
    double mean_sum = 0.0;
    double var_sum = 0.0;
    std::uint64_t n_total = 0;
    for (unsigned r = 0; r < repeats; ++r) {
      RngStream stream(master_seed, static_cast<std::uint64_t>(i) * repeats + r);
      const Estimate e = estimator(p.t, stream);
      mean_sum += e.mean;
      var_sum += e.std_error * e.std_error;
      n_total += e.n;
      p.lo = std::min(p.lo, e.mean);
      p.hi = std::max(p.hi, e.mean);
    }
    p.estimate.mean = mean_sum / repeats;
    p.estimate.std_error = std::sqrt(var_sum) / repeats;
    p.estimate.n = n_total;
    out.push_back(p);
  }
  return out;
}

}  // namespace fracmc
