#pragma once

#include <cstdint>
#include <limits>

namespace fracmc {

// Counter-style splittable generator. Each (master_seed, stream_id) pair
// fixes an odd per-stream increment and a starting state, both derived with
// the splitmix64 finalizer; next_u64() walks the Weyl sequence and finalizes.
// The mapping is pure integer arithmetic, so a pair reproduces the same
// sequence on every platform and compiler. Distinct stream_ids get distinct
// increments and therefore non-overlapping orbits.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : state_(mix64(master_seed ^ mix64(stream_id + 0x9E3779B97F4A7C15ull))),
        gamma_(mix64(stream_id ^ 0xBF58476D1CE4E5B9ull) | 1ull),
        master_seed_(master_seed),
        stream_id_(stream_id) {}

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix64(state_);
  }

  // Uniform on the open interval (0, 1): top 53 bits; an exact zero is mapped
  // to the smallest positive double so log(u) stays finite.
  double uniform_open01() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u == 0.0 ? std::numeric_limits<double>::denorm_min() : u;
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // splitmix64 output finalizer
  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Fresh master seed for fan-out (one per grid cell or sweep lane), so that
  // nested components can open their own stream_id space without collisions.
  static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed ^ mix64(index * 0x94D049BB133111EBull + 0x9E3779B97F4A7C15ull));
  }

 private:
  std::uint64_t state_;
  std::uint64_t gamma_;
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
};

}  // namespace fracmc
