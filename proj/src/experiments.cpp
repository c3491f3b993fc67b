#include "cointreg/experiments.hpp"

#include "cointreg/empirical_processes.hpp"
#include "cointreg/errors.hpp"
#include "cointreg/estimators.hpp"
#include "cointreg/io.hpp"
#include "cointreg/parallel.hpp"
#include "cointreg/signal_domains.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cointreg {

EstimatorKind parse_estimator(const std::string& name)
{
  if (name == "NW")
    return EstimatorKind::nadaraya_watson;
  if (name == "LL")
    return EstimatorKind::local_linear;
  throw InvalidParameter("estimator must be NW or LL (got '" + name + "')");
}

std::string to_string(EstimatorKind kind)
{
  return kind == EstimatorKind::nadaraya_watson ? "NW" : "LL";
}

DomainKind parse_domain_kind(const std::string& name)
{
  if (name == "A")
    return DomainKind::A;
  if (name == "R")
    return DomainKind::R;
  throw InvalidParameter("domain must be A or R (got '" + name + "')");
}

std::string to_string(DomainKind kind)
{
  return kind == DomainKind::A ? "A" : "R";
}

namespace {

void validate_n_grid(const std::vector<std::size_t>& n_grid, std::size_t reps)
{
  require(!n_grid.empty(), "n_grid must be nonempty");
  require(n_grid.front() >= 1, "n_grid entries must be at least 1");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    require(n_grid[i] > n_grid[i - 1], "n_grid must be strictly increasing");
  require(reps >= 1, "reps must be at least 1");
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

} // namespace

void RateExperimentConfig::validate() const
{
  dgp.validate();
  bandwidth.validate();
  require(eps >= 0.0, "eps must be nonnegative");
  require(domain == DomainKind::A || eps < 1.0, "eps must lie in [0,1) for the R domain");
  validate_n_grid(n_grid, reps);
}

RateTable run_rate_experiment(const RateExperimentConfig& cfg)
{
  cfg.validate();
  const std::size_t tasks = cfg.n_grid.size() * cfg.reps;
  RateTable table;
  table.rows.resize(tasks);

  parallel_for(tasks, cfg.threads, [&](std::size_t task) {
    const auto n_index = task / cfg.reps;
    const auto rep = task % cfg.reps;
    RateRow& row = table.rows[task];
    row.n = cfg.n_grid[n_index];
    row.rep = rep;

    const auto path = simulate_path(cfg.dgp, row.n,
                                    StreamId::for_task(cfg.base_seed, static_cast<std::uint32_t>(n_index),
                                                       static_cast<std::uint32_t>(rep)));
    const auto bw = select_bandwidth(cfg.bandwidth, path);
    row.h = bw.h;
    row.h_clipped = bw.clipped;
    const auto grid = make_grid(path, cfg.kernel, row.h, cfg.grid);

    const DomainSet domain = cfg.domain == DomainKind::A
                               ? domain_A(path, cfg.kernel, row.h, cfg.eps, grid)
                               : domain_R(path, cfg.eps);
    row.coverage = coverage_fraction(path, domain);
    row.domain_measure = domain.measure();

    const auto sheet = cfg.estimator == EstimatorKind::local_linear
                         ? local_linear(path, cfg.kernel, row.h, grid)
                         : nadaraya_watson(path, cfg.kernel, row.h, grid);
    row.degenerate_count = sheet.degenerate_count();
    try {
      row.sup_err = sup_error(sheet, cfg.dgp.m0, domain);
    } catch (const NumericError& e) {
      row.ok = false;
      row.error = e.what();
      row.sup_err = std::nan("");
    }
  });
  return table;
}

void write_rate_csv(std::ostream& os, const RateTable& table)
{
  CsvWriter csv(os, {"n", "rep", "h", "h_clipped", "sup_err", "coverage", "domain_measure",
                     "degenerate_count", "ok"});
  for (const auto& r : table.rows)
    csv.row(r.n, r.rep, r.h, r.h_clipped, r.sup_err, r.coverage, r.domain_measure, r.degenerate_count, r.ok);
}

LogLogFit fit_loglog(const std::vector<std::pair<std::size_t, double>>& samples)
{
  std::map<std::size_t, std::vector<double>> by_n;
  for (const auto& [n, v] : samples)
    by_n[n].push_back(v);
  if (by_n.size() < 3)
    throw NumericError("log-log fit needs at least 3 distinct n");

  LogLogFit fit;
  std::vector<double> lx, ly;
  for (const auto& [n, values] : by_n) {
    double sum = 0.0;
    for (double v : values)
      sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (!(mean > 0.0))
      throw NumericError("log-log fit needs positive means (n = " + std::to_string(n) + ")");
    fit.points.push_back({n, mean, median(values), values.size()});
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(mean));
  }

  const auto k = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - fit.intercept - fit.slope * lx[i];
    rss += r * r;
  }
  fit.std_error = std::sqrt(rss / (k - 2.0) / sxx);
  return fit;
}

LogLogFit fit_loglog(const RateTable& table, RateColumn column)
{
  std::vector<std::pair<std::size_t, double>> samples;
  for (const auto& r : table.rows) {
    if (!r.ok)
      continue;
    double v = 0.0;
    switch (column) {
    case RateColumn::sup_err:
      v = r.sup_err;
      break;
    case RateColumn::coverage:
      v = r.coverage;
      break;
    case RateColumn::domain_measure:
      v = r.domain_measure;
      break;
    case RateColumn::h:
      v = r.h;
      break;
    }
    samples.emplace_back(r.n, v);
  }
  return fit_loglog(samples);
}

double predicted_exponent(const RateExperimentConfig& cfg)
{
  const double e_index = 1.0 - cfg.dgp.coeff.memory_index();
  switch (cfg.bandwidth.kind) {
  case BandwidthRule::Kind::fixed:
    return -e_index / 2.0;
  case BandwidthRule::Kind::power: {
    const double kappa = cfg.bandwidth.kappa;
    return -e_index * std::min(2.0 * kappa, (1.0 - kappa) / 2.0);
  }
  case BandwidthRule::Kind::plugin:
    break;
  }
  throw InvalidParameter("no closed-form exponent for the plugin bandwidth rule");
}

void OrderExperimentConfig::validate() const
{
  dgp.validate();
  bandwidth.validate();
  validate_n_grid(n_grid, reps);
}

OrderTable run_order_experiment(const OrderExperimentConfig& cfg)
{
  cfg.validate();
  const std::size_t tasks = cfg.n_grid.size() * cfg.reps;
  OrderTable table;
  table.rows.resize(tasks);
  const KernelFunction f{cfg.kernel, 0};
  const KernelFunction g{cfg.kernel, 1};

  parallel_for(tasks, cfg.threads, [&](std::size_t task) {
    const auto n_index = task / cfg.reps;
    OrderRow& row = table.rows[task];
    row.n = cfg.n_grid[n_index];
    row.rep = task % cfg.reps;

    const auto path = simulate_path(cfg.dgp, row.n,
                                    StreamId::for_task(cfg.base_seed, static_cast<std::uint32_t>(n_index),
                                                       static_cast<std::uint32_t>(row.rep)));
    row.h = select_bandwidth(cfg.bandwidth, path).h;
    const auto grid = make_grid(path, cfg.kernel, row.h, cfg.grid);
    const auto cov = covariance_sup(path, f, row.h, grid);
    const auto zero = zero_energy_sup(path, g, row.h, grid);
    row.covariance = cov.value;
    row.covariance_argmax = cov.argmax_a;
    row.zero_energy = zero.value;
    row.zero_energy_argmax = zero.argmax_a;

    const double threshold = std::pow(static_cast<double>(row.n), 1.0 / cfg.dgp.innov.eta_q0);
    row.eta_exceedances = static_cast<std::size_t>(
      std::count_if(path.eta.begin(), path.eta.end(), [&](double e) { return std::abs(e) > threshold; }));
  });
  return table;
}

void write_order_csv(std::ostream& os, const OrderTable& table)
{
  CsvWriter csv(os, {"n", "rep", "h", "covariance_sup", "covariance_argmax", "zero_energy_sup",
                     "zero_energy_argmax", "eta_exceedances"});
  for (const auto& r : table.rows)
    csv.row(r.n, r.rep, r.h, r.covariance, r.covariance_argmax, r.zero_energy, r.zero_energy_argmax,
            r.eta_exceedances);
}

LogLogFit fit_loglog(const OrderTable& table, OrderColumn column)
{
  std::vector<std::pair<std::size_t, double>> samples;
  for (const auto& r : table.rows)
    samples.emplace_back(r.n, column == OrderColumn::covariance ? r.covariance : r.zero_energy);
  return fit_loglog(samples);
}

std::vector<CoverageRow> run_coverage_experiment(const CoverageExperimentConfig& cfg)
{
  cfg.dgp.validate();
  cfg.bandwidth.validate();
  require(cfg.reps >= 1, "reps must be at least 1");
  require(cfg.eps >= 0.0 && cfg.eps < 1.0, "eps must lie in [0,1)");

  std::vector<CoverageRow> rows(cfg.reps);
  parallel_for(cfg.reps, cfg.threads, [&](std::size_t rep) {
    CoverageRow& row = rows[rep];
    row.rep = rep;
    const auto path = simulate_path(cfg.dgp, cfg.n, {cfg.base_seed, rep});
    row.h = select_bandwidth(cfg.bandwidth, path).h;
    const auto grid = make_grid(path, cfg.kernel, row.h, cfg.grid);
    const auto signal = signal_process(path, cfg.kernel, row.h, grid);
    const auto a_set = domain_from_signal(signal, grid, path.norming.d, cfg.eps);
    const auto r_set = domain_R(path, cfg.eps);
    row.coverage_a = coverage_fraction(path, a_set);
    row.coverage_r = coverage_fraction(path, r_set);
    row.measure_a = a_set.measure();
    row.measure_r = r_set.measure();

    // Unnormalised signal sum_t K_h(x_t - x) = e_n L_n(x / d_n).
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (r_set.contains(grid.x(i)))
        lowest = std::min(lowest, signal[i] * path.norming.e);
    row.min_signal_r = std::isfinite(lowest) ? lowest : 0.0;
  });
  return rows;
}

void write_coverage_csv(std::ostream& os, const std::vector<CoverageRow>& rows)
{
  CsvWriter csv(os, {"rep", "h", "coverage_a", "coverage_r", "measure_a", "measure_r", "min_signal_r"});
  for (const auto& r : rows)
    csv.row(r.rep, r.h, r.coverage_a, r.coverage_r, r.measure_a, r.measure_r, r.min_signal_r);
}

} // namespace cointreg
