#include "cointreg/empirical_processes.hpp"

#include "cointreg/errors.hpp"

#include <cmath>

namespace cointreg {

namespace {

SupStatistic finish(double best, double argmax, const SamplePath& path, double h)
{
  SupStatistic s;
  s.value = best / std::sqrt(path.norming.e * h);
  s.argmax_a = argmax;
  s.n = path.n;
  s.h = h;
  s.scaled_by_log = path.n > 1 ? s.value / std::log(static_cast<double>(path.n)) : 0.0;
  return s;
}

template <class Weight>
SupStatistic windowed_sup(const SamplePath& path, const KernelFunction& f, double h, const EvalGrid& grid,
                          Weight&& weight_of)
{
  require(h > 0.0, "bandwidth must be positive");
  const SortedSample sample(path.x);
  const auto weights = weight_of(sample);
  double best = 0.0, argmax = grid.size() ? grid.nodes.front() : 0.0;
  for_each_window(sample, grid, path.norming.d, f.support_radius() * h,
                  [&](std::size_t i, double center, std::size_t begin, std::size_t end) {
                    double sum = 0.0;
                    for (std::size_t j = begin; j < end; ++j)
                      sum += f((sample.x[j] - center) / h) * weights[j];
                    if (std::abs(sum) > best) {
                      best = std::abs(sum);
                      argmax = grid.nodes[i];
                    }
                  });
  return finish(best, argmax, path, h);
}

template <class Weight>
SupStatistic direct_sup(const SamplePath& path, const KernelFunction& f, double h, const EvalGrid& grid,
                        Weight&& weight)
{
  double best = 0.0, argmax = grid.size() ? grid.nodes.front() : 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double center = path.norming.d * grid.nodes[i];
    double sum = 0.0;
    for (std::size_t t = 0; t < path.n; ++t)
      sum += f((path.x[t] - center) / h) * weight(t);
    if (std::abs(sum) > best) {
      best = std::abs(sum);
      argmax = grid.nodes[i];
    }
  }
  return finish(best, argmax, path, h);
}

void certify_zero_mean(const KernelFunction& g)
{
  const double integral = function_integral(g);
  if (!(std::abs(integral) <= 1e-9))
    throw InvalidParameter("zero-energy function must integrate to 0 (got " + std::to_string(integral) + ")");
}

} // namespace

double function_integral(const KernelFunction& g)
{
  const double c = g.support_radius();
  return simpson([&](double x) { return g(x); }, -c, c, 100'000);
}

SupStatistic covariance_sup(const SamplePath& path, const KernelFunction& f, double h, const EvalGrid& grid)
{
  return windowed_sup(path, f, h, grid, [&](const SortedSample& s) { return s.gather(path.u); });
}

SupStatistic zero_energy_sup(const SamplePath& path, const KernelFunction& g, double h, const EvalGrid& grid)
{
  certify_zero_mean(g);
  return windowed_sup(path, g, h, grid,
                      [](const SortedSample& s) { return std::vector<double>(s.x.size(), 1.0); });
}

SupStatistic covariance_sup_direct(const SamplePath& path, const KernelFunction& f, double h,
                                   const EvalGrid& grid)
{
  return direct_sup(path, f, h, grid, [&](std::size_t t) { return path.u[t]; });
}

SupStatistic zero_energy_sup_direct(const SamplePath& path, const KernelFunction& g, double h,
                                    const EvalGrid& grid)
{
  certify_zero_mean(g);
  return direct_sup(path, g, h, grid, [](std::size_t) { return 1.0; });
}

std::vector<double> truncate_eta(std::span<const double> eta, std::size_t n, double q0)
{
  require(q0 > 2.0, "q0 must exceed 2");
  require(n >= 1, "n must be at least 1");
  const double threshold = std::pow(static_cast<double>(n), 1.0 / q0);
  std::vector<double> out(eta.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < eta.size(); ++t) {
    out[t] = std::abs(eta[t]) <= threshold ? eta[t] : 0.0;
    sum += out[t];
  }
  if (!out.empty()) {
    const double mean = sum / static_cast<double>(out.size());
    for (double& v : out)
      v -= mean;
  }
  return out;
}

} // namespace cointreg
