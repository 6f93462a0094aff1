#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracmc/mc.hpp"
#include "fracmc/rng.hpp"
#include "fracmc/stable_sampler.hpp"
#include "helpers.hpp"

using namespace fracmc;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::uint64_t kSeed = 0x5EEDBA5Eull;

// Asymptotic two-sided KS acceptance threshold at the 1% level.
double ks_critical(std::size_t n) { return 1.6276236307187293 / std::sqrt(static_cast<double>(n)); }
}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("stream is deterministic per coordinate pair and distinct across ids") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  RngStream c(42, 8);
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    any_diff = any_diff || (va != c.next_u64());
  }
  CHECK(any_diff);
}

TEST_CASE("uniforms stay inside the open unit interval") {
  RngStream s(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform_open01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("derived seeds separate indices") {
  const std::uint64_t s0 = RngStream::derive_seed(5, 0);
  const std::uint64_t s1 = RngStream::derive_seed(5, 1);
  CHECK(s0 != s1);
  CHECK(s0 == RngStream::derive_seed(5, 0));
}

TEST_CASE("every law consumes exactly two uniforms per draw") {
  const Law laws[] = {Law{StableOneSided{0.6}}, Law{Subordinator{0.4, 2.0}},
                      Law{InverseSubordinator{0.7, 1.5}}, Law{GaussianKernel{0.8}}};
  for (const Law& law : laws) {
    CAPTURE(law_name(law));
    RngStream a(kSeed, 3);
    RngStream b(kSeed, 3);
    for (int i = 0; i < 5; ++i) draw(law, a);
    for (int i = 0; i < 10; ++i) b.next_u64();
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("kanter angular factor closed values") {
  CHECK(kanter_a(0.5, kPi / 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  // Small-angle limit a -> alpha^{alpha/(1-alpha)} (1 - alpha).
  CHECK(kanter_a(0.5, 1e-8) == doctest::Approx(0.25).epsilon(1e-7));
  CHECK_THROWS_AS(kanter_a(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(kanter_a(0.5, kPi), std::domain_error);
  CHECK_THROWS_AS(kanter_a(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kanter_a(0.0, 1.0), std::domain_error);
}

TEST_CASE("law validation rejects out-of-range parameters") {
  CHECK_THROWS_AS(validate(Law{StableOneSided{0.0}}), std::domain_error);
  CHECK_THROWS_AS(validate(Law{StableOneSided{1.0}}), std::domain_error);
  CHECK_THROWS_AS(validate(Law{Subordinator{0.5, 0.0}}), std::domain_error);
  CHECK_THROWS_AS(validate(Law{InverseSubordinator{1.0, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(validate(Law{InverseSubordinator{0.5, -1.0}}), std::domain_error);
  CHECK_THROWS_AS(validate(Law{GaussianKernel{-0.1}}), std::domain_error);
  CHECK_NOTHROW(validate(Law{InverseSubordinator{0.5, 0.0}}));
}

TEST_CASE("law names are stable strings") {
  CHECK(law_name(Law{StableOneSided{0.5}}) == "stable-oneside");
  CHECK(law_name(Law{Subordinator{0.5, 1.0}}) == "subordinator");
  CHECK(law_name(Law{InverseSubordinator{0.5, 1.0}}) == "inverse-subordinator");
  CHECK(law_name(Law{GaussianKernel{1.0}}) == "gaussian");
}

TEST_CASE("one-sided stable draws match the Laplace transform") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (double s : {0.5, 1.0}) {
      CAPTURE(alpha);
      CAPTURE(s);
      RngStream stream(kSeed, 11);
      const SampleBatch batch = sample_stable_oneside(stream, alpha, 200000);
      Accumulator acc;
      for (double x : batch.values) acc.add(std::exp(-s * x));
      const Estimate e = acc.estimate();
      const double exact = std::exp(-std::pow(s, alpha));
      CHECK(std::abs(e.mean - exact) < 4.0 * e.std_error);
    }
  }
}

TEST_CASE("one-sided stable at one half matches its closed-form distribution") {
  RngStream stream(kSeed, 2);
  const SampleBatch batch = sample_stable_oneside(stream, 0.5, 100000);
  const double d = testutil::ks_statistic(
      batch.values, [](double x) { return x <= 0.0 ? 0.0 : std::erfc(1.0 / (2.0 * std::sqrt(x))); });
  CHECK(d < ks_critical(batch.values.size()));
}

TEST_CASE("subordinator rescales the unit draw exactly") {
  const double alpha = 0.7;
  RngStream a(kSeed, 4);
  RngStream b(kSeed, 4);
  const SampleBatch unit = sample_subordinator(a, alpha, 1.0, 1000);
  const SampleBatch later = sample_subordinator(b, alpha, 2.0, 1000);
  const double scale = std::pow(2.0, 1.0 / alpha);
  for (std::size_t i = 0; i < unit.values.size(); ++i) {
    CHECK(later.values[i] == unit.values[i] * scale);
  }
}

TEST_CASE("inverse subordinator at time zero is identically zero") {
  RngStream stream(kSeed, 5);
  const SampleBatch batch = sample_inverse_subordinator(stream, 0.5, 0.0, 64);
  for (double v : batch.values) CHECK(v == 0.0);
  // The draws still consume the stream so later values stay aligned.
  RngStream reference(kSeed, 5);
  for (int i = 0; i < 128; ++i) reference.next_u64();
  CHECK(stream.next_u64() == reference.next_u64());
}

TEST_CASE("inverse subordinator moments match the gamma-ratio formula") {
  // E[T^k] = Gamma(k+1) t^{k beta} / Gamma(k beta + 1).
  RngStream stream(kSeed, 6);
  const SampleBatch batch = sample_inverse_subordinator(stream, 0.5, 1.0, 200000);
  Accumulator m1;
  Accumulator m2;
  for (double v : batch.values) {
    m1.add(v);
    m2.add(v * v);
  }
  const Estimate e1 = m1.estimate();
  const Estimate e2 = m2.estimate();
  CHECK(std::abs(e1.mean - 2.0 / std::sqrt(kPi)) < 4.0 * e1.std_error);
  CHECK(std::abs(e2.mean - 2.0) < 4.0 * e2.std_error);
}

TEST_CASE("inverse subordinator at one half matches its closed-form distribution") {
  const double t = 2.0;
  RngStream stream(kSeed, 9);
  const SampleBatch batch = sample_inverse_subordinator(stream, 0.5, t, 100000);
  const double d = testutil::ks_statistic(batch.values, [t](double x) {
    return x <= 0.0 ? 0.0 : std::erf(x / (2.0 * std::sqrt(t)));
  });
  CHECK(d < ks_critical(batch.values.size()));
}

TEST_CASE("inverse subordinator concentrates at the deterministic time near order one") {
  RngStream stream(kSeed, 10);
  SampleBatch batch = sample_inverse_subordinator(stream, 0.999, 1.0, 20000);
  std::sort(batch.values.begin(), batch.values.end());
  const double q25 = batch.values[batch.values.size() / 4];
  const double q75 = batch.values[3 * batch.values.size() / 4];
  CHECK(q75 - q25 < 0.05);
  CHECK(std::abs(batch.values[batch.values.size() / 2] - 1.0) < 0.05);
}

TEST_CASE("composition of inverse subordinators reproduces the product order") {
  // T_{0.5}(T_{0.8}(1)) has the law of T_{0.4}(1); compared by two-sample KS.
  const std::size_t n = 30000;
  RngStream nested_stream(kSeed, 12);
  RngStream direct_stream(kSeed, 13);
  std::vector<double> nested(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = draw(InverseSubordinator{0.8, 1.0}, nested_stream);
    nested[i] = draw(InverseSubordinator{0.5, s}, nested_stream);
  }
  SampleBatch direct = sample_inverse_subordinator(direct_stream, 0.4, 1.0, n);
  std::sort(nested.begin(), nested.end());
  std::sort(direct.values.begin(), direct.values.end());
  // Two-sample KS statistic over the merged support.
  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < n) {
    if (nested[i] <= direct.values[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) - static_cast<double>(j)) /
                        static_cast<double>(n));
  }
  const double critical = 1.6276236307187293 * std::sqrt(2.0 / static_cast<double>(n));
  CHECK(d < critical);
}

TEST_CASE("gaussian kernel draws have the advertised variance") {
  RngStream stream(kSeed, 14);
  const SampleBatch batch = sample_gaussian(stream, 1.5, 200000);
  Accumulator m1;
  Accumulator m2;
  for (double v : batch.values) {
    m1.add(v);
    m2.add(v * v);
  }
  const Estimate e1 = m1.estimate();
  const Estimate e2 = m2.estimate();
  CHECK(std::abs(e1.mean) < 4.0 * e1.std_error);
  CHECK(std::abs(e2.mean - 3.0) < 4.0 * e2.std_error);
}

TEST_CASE("batches record their stream coordinates") {
  RngStream stream(7, 3);
  const SampleBatch batch = sample_inverse_subordinator(stream, 0.6, 1.2, 10);
  CHECK(batch.master_seed == 7);
  CHECK(batch.stream_id == 3);
  CHECK(batch.values.size() == 10);
  const auto* law = std::get_if<InverseSubordinator>(&batch.law);
  REQUIRE(law != nullptr);
  CHECK(law->beta == 0.6);
  CHECK(law->t == 1.2);
}

TEST_CASE("batches are reproducible bit for bit") {
  RngStream a(kSeed, 21);
  RngStream b(kSeed, 21);
  const SampleBatch first = sample_stable_oneside(a, 0.6, 500);
  const SampleBatch second = sample_stable_oneside(b, 0.6, 500);
  CHECK(first.values == second.values);
}

TEST_CASE("standard normal helper has unit variance") {
  RngStream stream(kSeed, 22);
  Accumulator m1;
  Accumulator m2;
  for (int i = 0; i < 200000; ++i) {
    const double z = detail::normal01(stream);
    m1.add(z);
    m2.add(z * z);
  }
  const Estimate e1 = m1.estimate();
  const Estimate e2 = m2.estimate();
  CHECK(std::abs(e1.mean) < 4.0 * e1.std_error);
  CHECK(std::abs(e2.mean - 1.0) < 4.0 * e2.std_error);
}

}  // TEST_SUITE
