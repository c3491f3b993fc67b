#include "doctest.h"

#include "cointreg/config.hpp"
#include "cointreg/io.hpp"

#include <string>

using namespace cointreg;

namespace {

std::string error_of(const std::string& text)
{
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("minimal config takes the unit-root defaults")
{
  const auto cfg = parse_run_config(R"({"schema_version": 1})");
  CHECK(cfg.dgp.innov.stable.alpha == 2.0);
  CHECK(cfg.dgp.innov.stable.scale == 0.5);
  CHECK(cfg.dgp.coeff.regime == Regime::short_memory);
  CHECK(cfg.bandwidth.kind == BandwidthRule::Kind::fixed);
  CHECK(cfg.bandwidth.value == 0.5);
  CHECK(cfg.bandwidth.r0 == 0.125);
  CHECK(cfg.estimator == EstimatorKind::local_linear);
  CHECK(cfg.eps == 0.05);
  CHECK(cfg.kernel.kind() == Kernel::Kind::epanechnikov);
}

TEST_CASE("full config")
{
  const auto cfg = parse_run_config(R"({
    "schema_version": 1, "seed": 12, "n": 4096, "output": "out", "threads": 2,
    "kernel": "biweight",
    "dgp": {
      "innovations": {"alpha": 1.5, "beta": 0.25, "scale": 1.0, "endo_rho": 0.8, "q0": 4},
      "regressor": {"regime": "LM", "H": 0.8, "max_lag": 500},
      "disturbance": {"kind": "polynomial", "parameter": 3.0, "lags": 50},
      "m0": {"id": "linear_sin", "a": 5},
      "burn_in": 600, "rho_scale": 1.0
    },
    "bandwidth": {"rule": "power", "c": 1.0, "kappa": 0.2},
    "grid": {"resolution": 64},
    "estimate": {"estimator": "NW", "eps": 0.1, "domain": "R"},
    "experiment": {"n_grid": [256, 512, 1024], "reps": 3, "slope_band": [-0.4, -0.1]}
  })");
  CHECK(cfg.seed == 12);
  CHECK(cfg.dgp.coeff.alpha == 1.5);
  CHECK(cfg.dgp.coeff.regime == Regime::long_memory);
  CHECK(cfg.dgp.theta.theta.size() == 51);
  CHECK(cfg.dgp.m0.eval(0.0) == 0.0);
  CHECK(cfg.dgp.m0.d1(0.0) == 6.0);
  CHECK(*cfg.dgp.burn_in == 600);
  CHECK(cfg.bandwidth.r0 == 0.25);
  CHECK(cfg.grid.resolution == 64.0);
  CHECK(cfg.estimator == EstimatorKind::nadaraya_watson);
  CHECK(cfg.domain == DomainKind::R);
  CHECK(cfg.slope_band->lo == -0.4);
  const auto rates = cfg.rate_experiment();
  CHECK(rates.n_grid.size() == 3);
  CHECK(rates.base_seed == 12);
  CHECK(rates.threads == 2);
}

TEST_CASE("errors name the failing key")
{
  CHECK(error_of(R"({})").find("schema_version") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 2})").find("schema_version") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "sed": 3})").find("sed: unknown key") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dgp": {"innovations": {"alpfa": 2}}})")
          .find("dgp.innovations.alpfa") != std::string::npos);
  const auto alpha = error_of(R"({"schema_version": 1, "dgp": {"innovations": {"alpha": 2.5}}})");
  CHECK(alpha.find("alpha must lie in (0,2]") != std::string::npos);
  CHECK(alpha.find("dgp.innovations") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "experiment": {"n_grid": [512, 256, 1024]}})")
          .find("experiment.n_grid") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "n": "many"})").find("n:") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "kernel": "gaussian"})").find("kernel") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "bandwidth": {"rule": "silverman"}})").find("bandwidth.rule") !=
        std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dgp": {"regressor": {"regime": "LM", "H": 0.4}}})")
          .find("dgp.regressor") != std::string::npos);
  CHECK(error_of(R"({"schema_version": 1, "dgp": {"disturbance": {"kind": "polynomial", "parameter": 2.0}}})")
          .find("admissibility") != std::string::npos);
  CHECK_FALSE(error_of("{not json").empty());
  CHECK(error_of(R"({"schema_version": 1, "seed": -4})").find("seed") != std::string::npos);
}

TEST_CASE("canonical form ignores layout and key order")
{
  const auto a = parse_run_config(R"({"schema_version": 1, "seed": 3, "n": 100})");
  const auto b = parse_run_config("{\n  \"n\" : 100,\n\"seed\":3,  \"schema_version\":1}");
  CHECK(a.canonical == b.canonical);
  CHECK(fnv1a_hex(a.canonical) == fnv1a_hex(b.canonical));
  CHECK(fnv1a_hex(a.canonical).size() == 16);
  const auto c = parse_run_config(R"({"schema_version": 1, "seed": 4, "n": 100})");
  CHECK(fnv1a_hex(a.canonical) != fnv1a_hex(c.canonical));
}
