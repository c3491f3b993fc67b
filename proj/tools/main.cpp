#include "cointreg/config.hpp"
#include "cointreg/empirical_processes.hpp"
#include "cointreg/errors.hpp"
#include "cointreg/estimators.hpp"
#include "cointreg/experiments.hpp"
#include "cointreg/io.hpp"
#include "cointreg/signal_domains.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace cointreg;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

struct Run {
  RunConfig cfg;
  fs::path dir;
};

Run prepare(const Options& opt)
{
  Run run{load_run_config(opt.config), {}};
  if (opt.seed)
    run.cfg.seed = *opt.seed;
  if (opt.threads)
    run.cfg.threads = *opt.threads;
  const std::string out = opt.out.empty() ? run.cfg.output : opt.out;
  if (out.empty())
    throw ConfigError("output: no output directory (set 'output' or pass --out)");
  run.dir = out;
  std::error_code ec;
  fs::create_directories(run.dir, ec);
  if (ec)
    throw ConfigError("output: cannot create '" + out + "': " + ec.message());
  return run;
}

std::ofstream open(const fs::path& file)
{
  std::ofstream os(file, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write " + file.string());
  return os;
}

ordered_json number(double v)
{
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

void write_json(const fs::path& file, const ordered_json& doc)
{
  auto os = open(file);
  os << doc.dump(2) << '\n';
}

void write_manifest(const Run& run, const std::string& command)
{
  ordered_json m;
  m["command"] = command;
  m["config_hash"] = fnv1a_hex(run.cfg.canonical);
  m["seed"] = run.cfg.seed;
  m["version"] = kVersion;
  m["schema_version"] = kSchemaVersion;
  write_json(run.dir / "manifest.json", m);
}

ordered_json norming_json(const SamplePath& path)
{
  return {{"c_n", number(path.norming.c)},
          {"d_n", number(path.norming.d)},
          {"e_n", number(path.norming.e)},
          {"rho_scale", number(path.rho_scale)}};
}

ordered_json fit_json(const LogLogFit& fit)
{
  ordered_json points = ordered_json::array();
  for (const auto& p : fit.points)
    points.push_back({{"n", p.n}, {"mean", number(p.mean)}, {"median", number(p.median)}, {"count", p.count}});
  return {{"slope", number(fit.slope)},
          {"intercept", number(fit.intercept)},
          {"stderr", number(fit.std_error)},
          {"points", points}};
}

SamplePath simulate(const RunConfig& cfg)
{
  return simulate_path(cfg.dgp, cfg.n, {cfg.seed, 0});
}

void cmd_simulate(const Options& opt)
{
  const Run run = prepare(opt);
  const auto path = simulate(run.cfg);
  {
    auto os = open(run.dir / "path.csv");
    write_path_csv(os, path);
  }
  ordered_json meta;
  meta["n"] = path.n;
  meta["norming"] = norming_json(path);
  const double tail = phi_tail_mass(run.cfg.dgp.coeff);
  meta["phi_tail_mass"] = std::isfinite(tail) ? ordered_json(tail) : ordered_json("inf");
  meta["max_lag"] = run.cfg.dgp.coeff.effective_lag();
  meta["burn_in"] = run.cfg.dgp.resolved_burn_in();
  meta["theta_admissible"] = run.cfg.dgp.theta.admissible;
  write_json(run.dir / "path_meta.json", meta);
  write_manifest(run, "simulate");
}

struct DomainProducts {
  BandwidthChoice bw;
  EvalGrid grid;
  std::vector<double> signal;
  DomainSet a_set;
  DomainSet r_set;
};

DomainProducts domains_for(const RunConfig& cfg, const SamplePath& path, const fs::path& dir)
{
  DomainProducts p{select_bandwidth(cfg.bandwidth, path), {}, {}, {}, {}};
  p.grid = make_grid(path, cfg.kernel, p.bw.h, cfg.grid);
  p.signal = signal_process(path, cfg.kernel, p.bw.h, p.grid);
  p.a_set = domain_from_signal(p.signal, p.grid, path.norming.d, cfg.eps);
  p.r_set = domain_R(path, cfg.eps);
  {
    auto os = open(dir / "signal.csv");
    write_signal_csv(os, p.grid, p.signal);
  }
  {
    auto os = open(dir / "domain_a.csv");
    write_domain_csv(os, p.a_set);
  }
  {
    auto os = open(dir / "domain_r.csv");
    write_domain_csv(os, p.r_set);
  }
  return p;
}

ordered_json domain_json(const SamplePath& path, const DomainProducts& p, double eps)
{
  ordered_json j;
  j["eps"] = eps;
  j["h"] = number(p.bw.h);
  j["h_clipped"] = p.bw.clipped;
  j["grid_nodes"] = p.grid.size();
  j["grid_mesh"] = number(p.grid.mesh);
  j["norming"] = norming_json(path);
  j["coverage_a"] = number(coverage_fraction(path, p.a_set));
  j["coverage_r"] = number(coverage_fraction(path, p.r_set));
  j["measure_a"] = number(p.a_set.measure());
  j["measure_r"] = number(p.r_set.measure());
  j["intervals_a"] = p.a_set.intervals().size();
  return j;
}

void cmd_domains(const Options& opt)
{
  const Run run = prepare(opt);
  const auto path = simulate(run.cfg);
  const auto p = domains_for(run.cfg, path, run.dir);
  write_json(run.dir / "domains.json", domain_json(path, p, run.cfg.eps));
  write_manifest(run, "domains");
}

void cmd_estimate(const Options& opt)
{
  const Run run = prepare(opt);
  const auto& cfg = run.cfg;
  const auto path = simulate(cfg);
  const auto p = domains_for(cfg, path, run.dir);
  const auto sheet = cfg.estimator == EstimatorKind::local_linear
                       ? local_linear(path, cfg.kernel, p.bw.h, p.grid)
                       : nadaraya_watson(path, cfg.kernel, p.bw.h, p.grid);
  {
    auto os = open(run.dir / "estimate.csv");
    write_estimate_csv(os, sheet);
  }
  auto meta = domain_json(path, p, cfg.eps);
  meta["estimator"] = to_string(cfg.estimator);
  meta["degenerate_count"] = sheet.degenerate_count();
  const auto sup = [&](const DomainSet& d) -> ordered_json {
    try {
      return number(sup_error(sheet, cfg.dgp.m0, d));
    } catch (const NumericError& e) {
      return e.what();
    }
  };
  meta["sup_error_a"] = sup(p.a_set);
  meta["sup_error_r"] = sup(p.r_set);
  write_json(run.dir / "estimate.json", meta);
  write_manifest(run, "estimate");
}

bool monotone_trend(const LogLogFit& fit, std::size_t& inversions)
{
  inversions = 0;
  for (std::size_t i = 1; i < fit.points.size(); ++i)
    if (fit.points[i].mean > fit.points[i - 1].mean)
      ++inversions;
  return inversions <= 1;
}

std::vector<std::size_t> require_grid(const RunConfig& cfg)
{
  if (cfg.n_grid.size() < 3)
    throw ConfigError("experiment.n_grid: at least 3 sample sizes required");
  return cfg.n_grid;
}

void cmd_rates(const Options& opt)
{
  const Run run = prepare(opt);
  require_grid(run.cfg);
  const auto ecfg = run.cfg.rate_experiment();
  const auto table = run_rate_experiment(ecfg);
  {
    auto os = open(run.dir / "rates.csv");
    write_rate_csv(os, table);
  }
  const auto fit = fit_loglog(table, RateColumn::sup_err);

  ordered_json s = fit_json(fit);
  try {
    s["predicted_exponent"] = predicted_exponent(ecfg);
  } catch (const InvalidParameter&) {
    s["predicted_exponent"] = nullptr;
  }
  std::size_t failed = 0;
  for (const auto& r : table.rows)
    failed += r.ok ? 0 : 1;
  s["failed_rows"] = failed;
  s["estimator"] = to_string(ecfg.estimator);
  s["domain"] = to_string(ecfg.domain);
  s["eps"] = ecfg.eps;
  s["reps"] = ecfg.reps;

  ordered_json rules;
  std::size_t inversions = 0;
  const bool monotone = monotone_trend(fit, inversions);
  rules["monotone_trend"] = {{"inversions", inversions}, {"pass", monotone}};
  if (run.cfg.slope_band) {
    const auto band = *run.cfg.slope_band;
    rules["slope_band"] = {{"lo", band.lo}, {"hi", band.hi}, {"pass", fit.slope >= band.lo && fit.slope <= band.hi}};
  }
  s["rules"] = rules;
  write_json(run.dir / "summary.json", s);
  write_manifest(run, "rates");
}

void cmd_orderest(const Options& opt)
{
  const Run run = prepare(opt);
  require_grid(run.cfg);
  const auto table = run_order_experiment(run.cfg.order_experiment());
  {
    auto os = open(run.dir / "order.csv");
    write_order_csv(os, table);
  }
  ordered_json s;
  s["covariance"] = fit_json(fit_loglog(table, OrderColumn::covariance));
  s["zero_energy"] = fit_json(fit_loglog(table, OrderColumn::zero_energy));
  if (run.cfg.slope_band) {
    const auto band = *run.cfg.slope_band;
    const auto in_band = [&](const char* key) {
      const double slope = s[key]["slope"].get<double>();
      return slope >= band.lo && slope <= band.hi;
    };
    s["rules"] = {{"slope_band", {{"lo", band.lo},
                                  {"hi", band.hi},
                                  {"covariance_pass", in_band("covariance")},
                                  {"zero_energy_pass", in_band("zero_energy")}}}};
  }
  write_json(run.dir / "summary.json", s);
  write_manifest(run, "orderest");
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Kernel regression with nonstationary regressors: simulation and rate experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options opt;
  const auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "JSON run configuration")->required();
    sub->add_option("--out", opt.out, "output directory (overrides 'output')");
    sub->add_option("--seed", opt.seed, "base seed (overrides 'seed')");
    sub->add_option("--threads", opt.threads, "worker thread cap")->check(CLI::PositiveNumber);
    return sub;
  };
  auto* simulate_cmd = add("simulate", "simulate one path: path.csv, path_meta.json");
  auto* estimate_cmd = add("estimate", "estimate m0 on one path: estimate.csv, signal.csv, domain CSVs");
  auto* domains_cmd = add("domains", "signal process and maximal domains on one path");
  auto* order_cmd = add("orderest", "order estimates of the covariance and zero-energy sups");
  auto* rates_cmd = add("rates", "sup-error rate experiment: rates.csv, summary.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate_cmd->parsed())
      cmd_simulate(opt);
    else if (estimate_cmd->parsed())
      cmd_estimate(opt);
    else if (domains_cmd->parsed())
      cmd_domains(opt);
    else if (order_cmd->parsed())
      cmd_orderest(opt);
    else if (rates_cmd->parsed())
      cmd_rates(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
