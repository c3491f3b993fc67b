#include "cointreg/norming.hpp"

#include "cointreg/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace cointreg {

Regime parse_regime(const std::string& name)
{
  if (name == "SM")
    return Regime::short_memory;
  if (name == "LM")
    return Regime::long_memory;
  if (name == "AP")
    return Regime::antipersistent;
  throw InvalidParameter("regime must be one of SM, LM, AP (got '" + name + "')");
}

std::string to_string(Regime regime)
{
  switch (regime) {
  case Regime::short_memory:
    return "SM";
  case Regime::long_memory:
    return "LM";
  case Regime::antipersistent:
    return "AP";
  }
  return "?";
}

void RegressorCoeffSpec::validate() const
{
  require(alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0,2]");
  require(max_lag >= 1, "max_lag must be at least 1");
  switch (regime) {
  case Regime::short_memory: {
    require(alpha > 1.0, "short-memory regime requires alpha in (1,2]");
    require(!sm_phi.empty(), "short-memory regime requires a nonempty phi list");
    double abs_sum = 0.0;
    for (double p : sm_phi)
      abs_sum += std::abs(p);
    require(std::isfinite(abs_sum), "phi coefficients must be finite");
    const double sum = std::accumulate(sm_phi.begin(), sm_phi.end(), 0.0);
    require(sum != 0.0, "short-memory regime requires sum(phi) != 0");
    break;
  }
  case Regime::long_memory:
    require(H > 1.0 / 3.0 && H < 1.0, "H must lie in (1/3,1)");
    require(H > 1.0 / alpha, "long-memory regime requires H > 1/alpha");
    break;
  case Regime::antipersistent:
    require(H > 1.0 / 3.0 && H < 1.0, "H must lie in (1/3,1)");
    require(H < 1.0 / alpha, "antipersistent regime requires H < 1/alpha");
    break;
  }
}

std::vector<double> build_phi(const RegressorCoeffSpec& spec)
{
  spec.validate();
  if (spec.regime == Regime::short_memory)
    return spec.sm_phi;

  const double power = spec.H - 1.0 - 1.0 / spec.alpha;
  std::vector<double> phi(spec.max_lag + 1);
  for (std::size_t k = 1; k <= spec.max_lag; ++k)
    phi[k] = std::pow(static_cast<double>(k), power);

  if (spec.regime == Regime::long_memory) {
    phi[0] = -std::riemann_zeta(-power);
  } else {
    // Smallest terms first keeps the zero-sum residual tiny.
    double tail = 0.0;
    for (std::size_t k = spec.max_lag; k >= 1; --k)
      tail += phi[k];
    phi[0] = -tail;
  }
  return phi;
}

double phi_tail_mass(const RegressorCoeffSpec& spec)
{
  spec.validate();
  switch (spec.regime) {
  case Regime::short_memory:
    return 0.0;
  case Regime::long_memory:
    return std::numeric_limits<double>::infinity();
  case Regime::antipersistent: {
    // Euler-Maclaurin for sum_{k>M} k^-s.
    const double s = 1.0 + 1.0 / spec.alpha - spec.H;
    const double m = static_cast<double>(spec.max_lag);
    return std::pow(m, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(m, -s) +
           s * std::pow(m, -s - 1.0) / 12.0;
  }
  }
  return 0.0;
}

double build_c(const RegressorCoeffSpec& spec, std::size_t k)
{
  if (k == 0)
    return 1.0;
  if (spec.regime == Regime::short_memory)
    return std::accumulate(spec.sm_phi.begin(), spec.sm_phi.end(), 0.0);
  const double gap = spec.H - 1.0 / spec.alpha;
  return std::pow(static_cast<double>(k), gap) / std::abs(gap);
}

NormingSequences::NormingSequences(RegressorCoeffSpec spec, double rho_scale, std::size_t horizon)
  : spec_(std::move(spec)), rho_(rho_scale), horizon_(horizon)
{
  spec_.validate();
  require(rho_scale > 0.0 && std::isfinite(rho_scale), "rho_scale must be positive");
}

double NormingSequences::d(std::size_t k) const
{
  return std::pow(static_cast<double>(k), 1.0 / spec_.alpha) * c(k) * rho_;
}

NormingSequences build_norming(const RegressorCoeffSpec& spec, double rho_scale, std::size_t n)
{
  return NormingSequences(spec, rho_scale, n);
}

double natural_rho_scale(double alpha, double scale)
{
  return std::pow(scale, 1.0 / alpha);
}

bool explicit_theta_admissible(const std::vector<double>& theta)
{
  if (theta.empty())
    return true;
  const std::size_t m = theta.size() - 1;
  // Too short for a decade test; a finite moving average is always fine.
  if (m < 10)
    return true;
  const std::size_t decade_start = m / 10 + 1;
  double total = 0.0;
  double last_decade = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    const double w = std::abs(theta[k]) * std::pow(static_cast<double>(k), 7.0 / 6.0);
    total += w;
    if (k >= decade_start)
      last_decade += w;
  }
  if (!std::isfinite(total))
    return false;
  if (total == 0.0)
    return true;
  return last_decade < 1e-6 * total;
}

ThetaCoefficients build_theta(const ThetaSpec& spec, std::size_t M)
{
  ThetaCoefficients out;
  switch (spec.kind) {
  case ThetaKind::geometric: {
    require(std::abs(spec.parameter) < 1.0, "geometric theta requires |r| < 1");
    out.theta.resize(M + 1);
    double v = 1.0;
    for (std::size_t k = 0; k <= M; ++k, v *= spec.parameter)
      out.theta[k] = v;
    out.admissible = true;
    break;
  }
  case ThetaKind::polynomial: {
    require(spec.parameter > 0.0, "polynomial theta requires p > 0");
    out.theta.resize(M + 1);
    out.theta[0] = 1.0;
    for (std::size_t k = 1; k <= M; ++k)
      out.theta[k] = std::pow(static_cast<double>(k), -spec.parameter);
    out.admissible = spec.parameter > 13.0 / 6.0;
    break;
  }
  case ThetaKind::explicit_list:
    require(!spec.coefficients.empty(), "explicit theta list must be nonempty");
    out.theta = spec.coefficients;
    out.admissible = explicit_theta_admissible(out.theta);
    break;
  }
  return out;
}

} // namespace cointreg
