#include "doctest.h"

#include "cointreg/dgp.hpp"
#include "cointreg/errors.hpp"
#include "cointreg/kernels.hpp"

#include <cmath>

using namespace cointreg;

TEST_CASE("catalog values")
{
  const auto epa = Kernel::epanechnikov();
  CHECK(epa(0.0) == 0.75);
  CHECK(epa(1.5) == 0.0);
  CHECK(epa(-1.0) == 0.0);
  CHECK(Kernel::biweight()(0.0) == 0.9375);
  CHECK(Kernel::triangular()(0.25) == 0.75);
  CHECK(kernel_catalog().size() == 3);
  CHECK(kernel_by_id("biweight").kind() == Kernel::Kind::biweight);
  CHECK_THROWS_AS(kernel_by_id("gaussian"), InvalidParameter);
  for (const auto& k : kernel_catalog())
    CHECK(kernel_by_id(k.id()).kind() == k.kind());
}

TEST_CASE("every catalog kernel passes the certificates")
{
  for (const auto& k : kernel_catalog()) {
    CAPTURE(k.id());
    const auto cert = certify(k);
    CHECK(cert.passed());
    CHECK(std::abs(cert.integral - 1.0) <= 1e-9);
    CHECK(std::abs(cert.first_moment) <= 1e-9);
    CHECK(cert.zero_outside);
    CHECK(cert.lipschitz_ratio <= k.lipschitz_const() * (1 + 1e-9));
    // The stated constant is attained, not just an upper bound.
    CHECK(cert.lipschitz_ratio >= 0.999 * k.lipschitz_const());
  }
  const auto bw = Kernel::biweight();
  CHECK(std::abs(simpson([&](double x) { return x * bw(x); }, -1.0, 1.0, 100'000)) <= 1e-12);
  CHECK(Kernel::epanechnikov().second_moment() == doctest::Approx(0.2));
  CHECK(simpson([&](double x) { return x * x * bw(x); }, -1, 1, 10'000) ==
        doctest::Approx(bw.second_moment()).epsilon(1e-10));
}

TEST_CASE("bandwidth rules")
{
  // n = 512 unit-root path: e_n = sqrt(1024) = 32.
  const auto path = simulate_path(unit_root_gaussian(), 512, {9, 0});
  REQUIRE(path.norming.e == doctest::Approx(32.0).epsilon(1e-14));

  const auto fixed = select_bandwidth(BandwidthRule::fixed(0.5), path);
  CHECK(fixed.h == 0.5);
  CHECK_FALSE(fixed.clipped);

  const auto power = select_bandwidth(BandwidthRule::power(1.0, 0.2), path);
  CHECK(power.h == doctest::Approx(0.5).epsilon(1e-14));

  CHECK(bandwidth_floor(512, 32.0, 0.125) == doctest::Approx(std::pow(512.0, 0.25) / 32.0).epsilon(1e-14));

  const auto big = select_bandwidth(BandwidthRule::fixed(5.0), path);
  CHECK(big.h == 1.0);
  CHECK(big.clipped);
  CHECK(big.raw == 5.0);
  const auto tiny = select_bandwidth(BandwidthRule::fixed(1e-4), path);
  CHECK(tiny.h == doctest::Approx(tiny.lower));
  CHECK(tiny.clipped);

  CHECK_THROWS_AS(BandwidthRule::fixed(-1.0).validate(), InvalidParameter);
}

TEST_CASE("plug-in bandwidth on Gaussian increments")
{
  const double target = 0.74 * std::pow(std::sqrt(2048.0), -0.2);
  CHECK(target == doctest::Approx(0.345).epsilon(0.01));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto path = simulate_path(unit_root_gaussian(), 1024, {seed, 0});
    const double h = select_bandwidth(BandwidthRule::plugin(0.74), path).h;
    CHECK(h == doctest::Approx(target).epsilon(0.2));
  }
  const auto path = simulate_path(unit_root_gaussian(), 20000, {1, 0});
  CHECK(robust_increment_scale(path) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("bandwidth always lies in the admissible interval")
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::size_t n : {16u, 256u, 4096u}) {
      const auto path = simulate_path(unit_root_gaussian(), n, {seed, n});
      for (const auto& rule : {BandwidthRule::fixed(0.01), BandwidthRule::fixed(3.0), BandwidthRule::power(2.0, 0.2),
                               BandwidthRule::power(0.1, 0.9), BandwidthRule::plugin(1.0)}) {
        const auto c = select_bandwidth(rule, path);
        if (c.lower <= c.upper) {
          CHECK(c.h >= c.lower);
          CHECK(c.h <= c.upper);
        } else {
          CHECK(c.h == c.upper);
        }
      }
    }
  }
}

TEST_CASE("kappa = 1/5 balances squared bias against the variance order")
{
  double first = 0.0;
  for (std::size_t n = 1024; n <= (1u << 16); n *= 4) {
    const auto path = simulate_path(unit_root_gaussian(), n, {5, n});
    const double h = select_bandwidth(BandwidthRule::power(1.0, 0.2), path).h;
    const double balance = h * h * std::sqrt(path.norming.e * h);
    if (first == 0.0)
      first = balance;
    CHECK(balance == doctest::Approx(first).epsilon(1e-12));
  }
}
