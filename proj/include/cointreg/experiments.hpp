#pragma once

#include "cointreg/dgp.hpp"
#include "cointreg/grid.hpp"
#include "cointreg/kernels.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cointreg {

enum class EstimatorKind { nadaraya_watson, local_linear };
enum class DomainKind { A, R };

EstimatorKind parse_estimator(const std::string& name);
std::string to_string(EstimatorKind kind);
DomainKind parse_domain_kind(const std::string& name);
std::string to_string(DomainKind kind);

struct RateExperimentConfig {
  DgpConfig dgp;
  EstimatorKind estimator = EstimatorKind::local_linear;
  Kernel kernel = Kernel::epanechnikov();
  BandwidthRule bandwidth = BandwidthRule::fixed(0.5);
  double eps = 0.05;
  DomainKind domain = DomainKind::A;
  std::vector<std::size_t> n_grid;
  std::size_t reps = 1;
  std::uint64_t base_seed = 0;
  GridPolicy grid;
  unsigned threads = 1;

  void validate() const;
};

struct RateRow {
  std::size_t n = 0;
  std::size_t rep = 0;
  double h = 0.0;
  bool h_clipped = false;
  double sup_err = 0.0;
  double coverage = 0.0;       ///< fraction of x_t outside the domain
  double domain_measure = 0.0; ///< total length of the domain (x units)
  std::size_t degenerate_count = 0;
  bool ok = true;
  std::string error;
};

struct RateTable {
  std::vector<RateRow> rows; ///< ordered by (n index, rep)
};

/// One row per (n, rep): simulate on stream (base_seed, n index, rep),
/// choose h, build the shared grid, the domain and the estimate, and record
/// the sup error over the domain. Row-level numeric failures are recorded
/// in the row (ok = false) rather than thrown.
RateTable run_rate_experiment(const RateExperimentConfig& cfg);

void write_rate_csv(std::ostream& os, const RateTable& table);

/// Per-n aggregate of one response column over the rows with ok = true.
struct LogLogPoint {
  std::size_t n;
  double mean;
  double median;
  std::size_t count;
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;
  std::vector<LogLogPoint> points;
};

/// OLS of log(mean response) on log n. Needs at least 3 distinct n and
/// positive means (NumericError otherwise).
LogLogFit fit_loglog(const std::vector<std::pair<std::size_t, double>>& samples);

enum class RateColumn { sup_err, coverage, domain_measure, h };
LogLogFit fit_loglog(const RateTable& table, RateColumn column = RateColumn::sup_err);

/// Power-law exponent of the variance order e_n^-1/2 h^-1/2 along n:
/// fixed h gives -(1-H)/2; the power rule h = c e_n^-kappa gives
/// -(1-H) min(2 kappa, (1-kappa)/2), i.e. -2(1-H)/5 at kappa = 1/5.
/// Log factors are ignored, so measured slopes sit above this value.
double predicted_exponent(const RateExperimentConfig& cfg);

// Order estimates ------------------------------------------------------------

struct OrderExperimentConfig {
  DgpConfig dgp;
  Kernel kernel = Kernel::epanechnikov();
  BandwidthRule bandwidth = BandwidthRule::fixed(0.5);
  std::vector<std::size_t> n_grid;
  std::size_t reps = 1;
  std::uint64_t base_seed = 0;
  GridPolicy grid;
  unsigned threads = 1;

  void validate() const;
};

struct OrderRow {
  std::size_t n = 0;
  std::size_t rep = 0;
  double h = 0.0;
  double covariance = 0.0;       ///< covariance_sup with f = K
  double zero_energy = 0.0;      ///< zero_energy_sup with g = K^[1]
  double covariance_argmax = 0.0;
  double zero_energy_argmax = 0.0;
  std::size_t eta_exceedances = 0; ///< #{t : |eta_t| > n^(1/q0)}
};

struct OrderTable {
  std::vector<OrderRow> rows;
};

OrderTable run_order_experiment(const OrderExperimentConfig& cfg);
void write_order_csv(std::ostream& os, const OrderTable& table);

enum class OrderColumn { covariance, zero_energy };
LogLogFit fit_loglog(const OrderTable& table, OrderColumn column);

// Domain coverage --------------------------------------------------------------

struct CoverageExperimentConfig {
  DgpConfig dgp;
  Kernel kernel = Kernel::epanechnikov();
  BandwidthRule bandwidth = BandwidthRule::power(1.0, 0.2);
  double eps = 0.05;
  std::size_t n = 4096;
  std::size_t reps = 1;
  std::uint64_t base_seed = 0;
  GridPolicy grid;
  unsigned threads = 1;
};

struct CoverageRow {
  std::size_t rep = 0;
  double h = 0.0;
  double coverage_a = 0.0;
  double coverage_r = 0.0;
  double measure_a = 0.0;
  double measure_r = 0.0;
  /// min over grid nodes in R_n^eps of sum_t K_h(x_t - x).
  double min_signal_r = 0.0;
};

std::vector<CoverageRow> run_coverage_experiment(const CoverageExperimentConfig& cfg);
void write_coverage_csv(std::ostream& os, const std::vector<CoverageRow>& rows);

} // namespace cointreg
