#include "doctest.h"
#include "stats.hpp"

#include "cointreg/errors.hpp"
#include "cointreg/innovations.hpp"
#include "cointreg/rng.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

using namespace cointreg;

namespace {

std::vector<double> draws(const StableLaw& law, std::size_t count, std::uint64_t seed)
{
  RngStream s({seed, 0});
  std::vector<double> v(count);
  for (auto& x : v)
    x = draw_stable(law, s);
  return v;
}

std::string message_of(const StableLaw& law)
{
  try {
    law.validate();
  } catch (const InvalidParameter& e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("rng streams are reproducible and distinct")
{
  RngStream a({42, 3}), b({42, 3}), c({42, 4}), d({43, 3});
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    differ_c |= va != c.next_u64();
    differ_d |= va != d.next_u64();
  }
  CHECK(differ_c);
  CHECK(differ_d);
  CHECK(StreamId::for_task(1, 2, 3).index == ((2ull << 32) | 3ull));
}

TEST_CASE("uniform draws lie in the open unit interval with the right moments")
{
  RngStream s({7, 0});
  std::vector<double> u(200000);
  for (auto& x : u) {
    x = s.uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
  CHECK(stats::mean(u) == doctest::Approx(0.5).epsilon(0.005));
  CHECK(stats::variance(u) == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("stable law validation")
{
  CHECK(message_of({2.5, 0.0, 1.0}).find("alpha must lie in (0,2]") != std::string::npos);
  CHECK(message_of({0.0, 0.0, 1.0}).find("alpha must lie in (0,2]") != std::string::npos);
  CHECK_FALSE(message_of({1.0, 0.3, 1.0}).empty());
  CHECK_FALSE(message_of({1.5, 1.2, 1.0}).empty());
  CHECK_FALSE(message_of({1.5, 0.0, 0.0}).empty());
  CHECK(message_of({1.0, 0.0, 1.0}).empty());

  InnovationConfig cfg;
  cfg.stable = {1.0, 0.0, 1.0};
  cfg.endo_rho = 0.5;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
  cfg.stable = {1.5, 0.0, 1.0};
  CHECK_NOTHROW(cfg.validate());
  cfg.endo_rho = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
}

TEST_CASE("alpha = 2 is Gaussian with variance 2 * scale")
{
  const auto v = draws({2.0, 0.0, 1.0}, 1'000'000, 11);
  CHECK(std::abs(stats::variance(v) - 2.0) <= 0.02);
  CHECK(std::abs(stats::mean(v)) <= 0.01);
}

TEST_CASE("alpha = 1 is Cauchy with quartiles at +- scale")
{
  for (double scale : {1.0, 2.5}) {
    const auto v = draws({1.0, 0.0, scale}, 1'000'000, 12);
    CHECK(std::abs(stats::quantile(v, 0.5)) <= 0.01 * scale);
    const double iqr = stats::quantile(v, 0.75) - stats::quantile(v, 0.25);
    CHECK(iqr == doctest::Approx(2.0 * scale).epsilon(0.01));
  }
}

TEST_CASE("alpha = 1.5 Hill index on the top 1 percent")
{
  const auto v = draws({1.5, 0.0, 1.0}, 1'000'000, 13);
  const double index = stats::hill(v, 10'000);
  CHECK(index >= 1.3);
  CHECK(index <= 1.7);
}

TEST_CASE("empirical characteristic function matches the increment cf")
{
  for (const StableLaw law : {StableLaw{1.5, 0.5, 1.0}, StableLaw{0.8, -0.3, 2.0}, StableLaw{1.2, 1.0, 0.5},
                              StableLaw{1.0, 0.0, 0.7}, StableLaw{1.9, -1.0, 1.3}}) {
    const auto v = draws(law, 200'000, 14);
    for (double lambda : {-0.7, 0.3, 1.1}) {
      const double a = std::abs(lambda);
      const double sign = lambda > 0 ? 1.0 : -1.0;
      const double skew = law.alpha == 1.0 ? 0.0 : law.beta * sign * std::tan(std::numbers::pi * law.alpha / 2.0);
      const std::complex<double> expected =
        std::exp(std::complex<double>(-law.scale * std::pow(a, law.alpha), law.scale * std::pow(a, law.alpha) * skew));
      CAPTURE(law.alpha);
      CAPTURE(law.beta);
      CAPTURE(lambda);
      CHECK(std::abs(stats::ecf(v, lambda) - expected) <= 0.01);
    }
  }
}

TEST_CASE("standardised Gaussian partial sums pass a KS normality check")
{
  const std::size_t n = 10'000, reps = 500;
  std::vector<double> z(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream s({21, r});
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      sum += draw_stable({2.0, 0.0, 1.0}, s);
    z[r] = sum / std::sqrt(2.0 * static_cast<double>(n));
  }
  const double d = stats::ks_statistic(z, stats::normal_cdf);
  CHECK(stats::ks_pvalue(d, reps) > 0.01);
}

TEST_CASE("exogenous eta is an independent standard normal")
{
  InnovationConfig cfg;
  cfg.stable = {1.5, 0.5, 1.0};
  RngStream s({31, 0});
  std::vector<double> eps(200'000), eta(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto p = draw_innovation_pair(cfg, s);
    eps[i] = p.epsilon;
    eta[i] = p.eta;
  }
  CHECK(std::abs(stats::mean(eta)) <= 0.01);
  CHECK(stats::variance(eta) == doctest::Approx(1.0).epsilon(0.01));
  std::vector<double> sign_eps(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i)
    sign_eps[i] = std::tanh(eps[i]);
  CHECK(std::abs(stats::correlation(sign_eps, eta)) <= 0.01);
  const double d = stats::ks_statistic(std::vector<double>(eta.begin(), eta.begin() + 20000), stats::normal_cdf);
  CHECK(stats::ks_pvalue(d, 20000) > 0.01);
}

TEST_CASE("endogenous eta is correlated with eps")
{
  InnovationConfig cfg;
  cfg.stable = {2.0, 0.0, 0.5};
  cfg.endo_rho = 0.8;
  RngStream s({32, 0});
  std::vector<double> eps(100'000), eta(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto p = draw_innovation_pair(cfg, s);
    eps[i] = p.epsilon;
    eta[i] = p.eta;
  }
  CHECK(stats::correlation(eps, eta) > 0.2);
}

TEST_CASE("eta has mean zero for skewed laws")
{
  InnovationConfig cfg;
  cfg.stable = {1.3, 0.9, 1.0};
  cfg.endo_rho = 0.9;
  RngStream s({33, 0});
  double sum = 0.0;
  const std::size_t count = 1'000'000;
  for (std::size_t i = 0; i < count; ++i)
    sum += draw_innovation_pair(cfg, s).eta;
  CHECK(std::abs(sum / count) <= 0.01);
}

TEST_CASE("tanh centre: zero for symmetric laws, Monte Carlo otherwise")
{
  CHECK(tanh_mean({1.5, 0.0, 1.0}) == 0.0);
  const StableLaw skewed{1.3, 0.9, 1.0};
  const double centre = tanh_mean(skewed);
  CHECK(tanh_mean(skewed) == centre);
  const auto v = draws(skewed, 400'000, 99);
  double sum = 0.0;
  for (double x : v)
    sum += std::tanh(x);
  CHECK(std::abs(sum / static_cast<double>(v.size()) - centre) <= 0.005);
}

TEST_CASE("eta moments are stable across sample sizes")
{
  InnovationConfig cfg;
  cfg.stable = {2.0, 0.0, 0.5};
  cfg.endo_rho = 0.8;
  const auto moment = [&](std::size_t n) {
    RngStream s({34, n});
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sum += std::pow(draw_innovation_pair(cfg, s).eta, 4);
    return sum / static_cast<double>(n);
  };
  for (std::size_t n : {10'000u, 100'000u}) {
    const double ratio = moment(2 * n) / moment(n);
    CHECK(ratio > 0.5);
    CHECK(ratio < 2.0);
  }
}

TEST_CASE("identical streams give bit-identical pairs")
{
  InnovationConfig cfg;
  cfg.stable = {1.7, -0.4, 2.0};
  cfg.endo_rho = 0.3;
  RngStream a({5, 9}), b({5, 9});
  for (int i = 0; i < 1000; ++i) {
    const auto p = draw_innovation_pair(cfg, a), q = draw_innovation_pair(cfg, b);
    REQUIRE(p.epsilon == q.epsilon);
    REQUIRE(p.eta == q.eta);
  }
}
