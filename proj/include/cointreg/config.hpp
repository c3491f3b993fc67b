#pragma once

#include "cointreg/dgp.hpp"
#include "cointreg/experiments.hpp"
#include "cointreg/grid.hpp"
#include "cointreg/kernels.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cointreg {

/// Invalid or unreadable run configuration. The message names the key path.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

/// Optional slope band checked by the rates command.
struct SlopeBand {
  double lo;
  double hi;
};

struct RunConfig {
  DgpConfig dgp;
  Kernel kernel = Kernel::epanechnikov();
  BandwidthRule bandwidth;
  GridPolicy grid;
  EstimatorKind estimator = EstimatorKind::local_linear;
  DomainKind domain = DomainKind::A;
  double eps = 0.05;
  std::size_t n = 1024;
  std::vector<std::size_t> n_grid;
  std::size_t reps = 1;
  std::optional<SlopeBand> slope_band;
  std::uint64_t seed = 0;
  std::string output;
  unsigned threads = 1;
  /// Canonical serialisation of the parsed document (sorted keys), hashed
  /// into the manifest.
  std::string canonical;

  RateExperimentConfig rate_experiment() const;
  OrderExperimentConfig order_experiment() const;
};

/// Parses a JSON document. Unknown keys, a missing schema_version and any
/// invalid value raise ConfigError.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

} // namespace cointreg
