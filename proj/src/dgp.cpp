#include "cointreg/dgp.hpp"

#include "cointreg/convolution.hpp"
#include "cointreg/errors.hpp"
#include "cointreg/io.hpp"

#include <algorithm>

namespace cointreg {

void DgpConfig::validate() const
{
  innov.validate();
  coeff.validate();
  require(coeff.alpha == innov.stable.alpha, "regressor alpha must equal innovation alpha");
  require(!theta.theta.empty(), "theta must be nonempty");
  require(theta.admissible || waive_theta_check,
          "theta fails the sum |theta_k| k^(7/6) < inf admissibility check");
  if (rho_scale)
    require(*rho_scale > 0.0, "rho_scale must be positive");
  if (burn_in) {
    require(*burn_in >= theta.theta.size(), "burn_in must be at least len(theta)");
    require(*burn_in >= coeff.effective_lag(), "burn_in must be at least the lag cap M");
  }
}

std::size_t DgpConfig::resolved_burn_in() const
{
  return burn_in.value_or(std::max(coeff.effective_lag(), theta.theta.size()));
}

double DgpConfig::resolved_rho_scale() const
{
  return rho_scale.value_or(natural_rho_scale(innov.stable.alpha, innov.stable.scale));
}

NormingSequences DgpConfig::norming(std::size_t n) const
{
  return build_norming(coeff, resolved_rho_scale(), n);
}

DgpConfig unit_root_gaussian()
{
  DgpConfig cfg;
  cfg.innov.stable = {2.0, 0.0, 0.5};
  cfg.coeff.regime = Regime::short_memory;
  cfg.coeff.alpha = 2.0;
  cfg.coeff.sm_phi = {1.0};
  cfg.theta = build_theta({ThetaKind::explicit_list, 0.0, {1.0}}, 0);
  return cfg;
}

SamplePath simulate_path(const DgpConfig& cfg, std::size_t n, const StreamId& stream_id)
{
  cfg.validate();
  require(n >= 1, "n must be at least 1");

  const std::vector<double> phi = build_phi(cfg.coeff);
  const std::size_t lag = phi.size() - 1;
  const std::size_t pre = cfg.resolved_burn_in() + lag;
  const std::size_t total = pre + n;

  InnovationSampler sampler(cfg.innov);
  RngStream stream(stream_id);
  std::vector<double> eps(total), eta(total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto pair = sampler.draw(stream);
    eps[i] = pair.epsilon;
    eta[i] = pair.eta;
  }

  SamplePath path;
  path.n = n;
  // Index pre + t - 1 holds time t.
  const std::vector<double> v = causal_filter(eps, phi, pre, n);
  path.x.resize(n);
  double level = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    level += v[t];
    path.x[t] = level;
  }
  path.u = causal_filter(eta, cfg.theta.theta, pre, n);
  path.y.resize(n);
  for (std::size_t t = 0; t < n; ++t)
    path.y[t] = cfg.m0.eval(path.x[t]) + path.u[t];

  path.epsilon.assign(eps.begin() + static_cast<std::ptrdiff_t>(pre), eps.end());
  path.eta.assign(eta.begin() + static_cast<std::ptrdiff_t>(pre), eta.end());

  const auto norming = cfg.norming(n);
  path.norming = norming.at(n);
  path.rho_scale = norming.rho_scale();
  return path;
}

void write_path_csv(std::ostream& os, const SamplePath& path)
{
  CsvWriter csv(os, {"t", "x", "u", "y"});
  for (std::size_t t = 0; t < path.n; ++t)
    csv.row(static_cast<double>(t + 1), path.x[t], path.u[t], path.y[t]);
}

} // namespace cointreg
