#include "cointreg/innovations.hpp"

#include "cointreg/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace cointreg {

void StableLaw::validate() const
{
  require(alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0,2]");
  require(beta >= -1.0 && beta <= 1.0, "beta must lie in [-1,1]");
  require(!(alpha == 1.0 && beta != 0.0), "beta must be 0 when alpha = 1");
  require(scale > 0.0 && std::isfinite(scale), "scale must be positive");
}

void InnovationConfig::validate() const
{
  stable.validate();
  require(endo_rho >= -1.0 && endo_rho <= 1.0, "endo_rho must lie in [-1,1]");
  require(endo_rho == 0.0 || stable.alpha > 1.0, "endo_rho != 0 requires alpha > 1");
  require(eta_q0 > 2.0, "eta_q0 must exceed 2");
}

double draw_stable(const StableLaw& law, RngStream& stream)
{
  constexpr double pi = std::numbers::pi;
  const double alpha = law.alpha;

  if (alpha == 2.0)
    return std::sqrt(2.0 * law.scale) * stream.normal();

  const double sigma = std::pow(law.scale, 1.0 / alpha);
  const double v = pi * (stream.uniform() - 0.5);

  if (alpha == 1.0)
    return sigma * std::tan(v);

  const double w = stream.exponential();
  const double skew = law.beta * std::tan(pi * alpha / 2.0);
  const double shift = std::atan(skew) / alpha;
  const double stretch = std::pow(1.0 + skew * skew, 1.0 / (2.0 * alpha));
  const double phase = alpha * (v + shift);
  const double x = stretch * std::sin(phase) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - phase) / w, (1.0 - alpha) / alpha);
  return sigma * x;
}

double tanh_mean(const StableLaw& law)
{
  law.validate();
  if (law.beta == 0.0)
    return 0.0;

  static std::mutex mutex;
  static std::map<std::tuple<double, double, double>, double> cache;
  const auto key = std::make_tuple(law.alpha, law.beta, law.scale);

  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end())
    return it->second;

  constexpr int draws = 1'000'000;
  RngStream stream({0x7A4E5D1CULL, 0});
  double sum = 0.0;
  for (int i = 0; i < draws; ++i)
    sum += std::tanh(draw_stable(law, stream));
  const double mean = sum / draws;
  cache.emplace(key, mean);
  return mean;
}

InnovationSampler::InnovationSampler(const InnovationConfig& cfg) : cfg_(cfg)
{
  cfg_.validate();
  if (cfg_.endo_rho != 0.0)
    tanh_center_ = tanh_mean(cfg_.stable);
  noise_weight_ = std::sqrt(1.0 - cfg_.endo_rho * cfg_.endo_rho);
}

InnovationPair InnovationSampler::draw(RngStream& stream) const
{
  const double eps = draw_stable(cfg_.stable, stream);
  const double zeta = stream.normal();
  double eta = noise_weight_ * zeta;
  if (cfg_.endo_rho != 0.0)
    eta += cfg_.endo_rho * (std::tanh(eps) - tanh_center_);
  return {eps, eta};
}

InnovationPair draw_innovation_pair(const InnovationConfig& cfg, RngStream& stream)
{
  return InnovationSampler(cfg).draw(stream);
}

} // namespace cointreg
