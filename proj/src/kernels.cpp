#include "cointreg/kernels.hpp"

#include "cointreg/errors.hpp"

#include <algorithm>

namespace cointreg {

std::string Kernel::id() const
{
  switch (kind_) {
  case Kind::epanechnikov:
    return "epanechnikov";
  case Kind::biweight:
    return "biweight";
  case Kind::triangular:
    return "triangular";
  }
  return "?";
}

double Kernel::lipschitz_const() const
{
  switch (kind_) {
  case Kind::epanechnikov:
    return 1.5;
  case Kind::biweight:
    return 15.0 * std::sqrt(3.0) / 18.0;
  case Kind::triangular:
    return 1.0;
  }
  return 0.0;
}

double Kernel::second_moment() const
{
  switch (kind_) {
  case Kind::epanechnikov:
    return 0.2;
  case Kind::biweight:
    return 1.0 / 7.0;
  case Kind::triangular:
    return 1.0 / 6.0;
  }
  return 0.0;
}

std::vector<Kernel> kernel_catalog()
{
  return {Kernel::epanechnikov(), Kernel::biweight(), Kernel::triangular()};
}

Kernel kernel_by_id(const std::string& id)
{
  for (const auto& k : kernel_catalog())
    if (k.id() == id)
      return k;
  throw InvalidParameter("unknown kernel id '" + id + "'");
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals)
{
  require(intervals > 0 && intervals % 2 == 0, "Simpson rule needs an even interval count");
  const double step = (b - a) / intervals;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < intervals; ++i) {
    const double v = f(a + i * step);
    (i % 2 ? odd : even) += v;
  }
  return step / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

bool KernelCertificate::passed() const
{
  return std::abs(integral - 1.0) <= 1e-9 && std::abs(first_moment) <= 1e-9 && zero_outside;
}

KernelCertificate certify(const Kernel& kernel)
{
  const double c = kernel.support_radius();
  KernelCertificate cert{};
  cert.integral = simpson([&](double x) { return kernel.eval(x); }, -c, c, 100'000);
  cert.first_moment = simpson([&](double x) { return x * kernel.eval(x); }, -c, c, 100'000);

  constexpr int points = 200'000;
  const double lo = -1.5 * c, step = 3.0 * c / points;
  double prev = kernel.eval(lo);
  cert.lipschitz_ratio = 0.0;
  for (int i = 1; i <= points; ++i) {
    const double cur = kernel.eval(lo + i * step);
    cert.lipschitz_ratio = std::max(cert.lipschitz_ratio, std::abs(cur - prev) / step);
    prev = cur;
  }

  cert.zero_outside = true;
  for (int i = 1; i <= 1000; ++i) {
    const double x = c + 3.0 * c * i / 1000.0;
    if (kernel.eval(x) != 0.0 || kernel.eval(-x) != 0.0)
      cert.zero_outside = false;
  }
  return cert;
}

void BandwidthRule::validate() const
{
  require(value > 0.0 && std::isfinite(value), "bandwidth value must be positive");
  require(r0 > 0.0, "bandwidth r0 must be positive");
  require(h_upper > 0.0, "h_upper must be positive");
  if (kind == Kind::power)
    require(kappa > 0.0 && kappa < 1.0, "power-rule kappa must lie in (0,1)");
}

double bandwidth_floor(std::size_t n, double e_n, double r0)
{
  return std::pow(static_cast<double>(n), 2.0 * r0) / e_n;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p)
{
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace

double robust_increment_scale(const SamplePath& path)
{
  require(path.n >= 1, "path must be nonempty");
  std::vector<double> inc(path.n);
  double prev = 0.0;
  for (std::size_t t = 0; t < path.n; ++t) {
    inc[t] = path.x[t] - prev;
    prev = path.x[t];
  }
  std::sort(inc.begin(), inc.end());
  return (quantile_sorted(inc, 0.75) - quantile_sorted(inc, 0.25)) / 1.349;
}

BandwidthChoice select_bandwidth(const BandwidthRule& rule, const SamplePath& path)
{
  rule.validate();
  require(path.n >= 1, "path must be nonempty");
  const double e_n = path.norming.e;

  BandwidthChoice out{};
  switch (rule.kind) {
  case BandwidthRule::Kind::fixed:
    out.raw = rule.value;
    break;
  case BandwidthRule::Kind::power:
    out.raw = rule.value * std::pow(e_n, -rule.kappa);
    break;
  case BandwidthRule::Kind::plugin:
    out.raw = rule.value * robust_increment_scale(path) * std::pow(e_n, -0.2);
    break;
  }
  out.lower = bandwidth_floor(path.n, e_n, rule.r0);
  out.upper = rule.h_upper;
  out.h = std::min(std::max(out.raw, out.lower), out.upper);
  out.clipped = out.h != out.raw;
  return out;
}

} // namespace cointreg
