#include "cointreg/signal_domains.hpp"

#include "cointreg/errors.hpp"
#include "cointreg/io.hpp"
#include "cointreg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cointreg {

DomainSet::DomainSet(std::vector<Interval> intervals)
{
  for (const auto& iv : intervals)
    require(iv.lo <= iv.hi, "interval endpoints must satisfy l <= r");
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi)
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    else
      intervals_.push_back(iv);
  }
}

DomainSet DomainSet::whole_line()
{
  const double inf = std::numeric_limits<double>::infinity();
  return DomainSet({{-inf, inf}});
}

bool DomainSet::contains(double x) const
{
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin())
    return false;
  --it;
  return x <= it->hi;
}

double DomainSet::measure() const
{
  double total = 0.0;
  for (const auto& iv : intervals_)
    total += iv.hi - iv.lo;
  return total;
}

bool DomainSet::subset_of(const DomainSet& outer) const
{
  for (const auto& iv : intervals_) {
    const bool covered = std::any_of(outer.intervals_.begin(), outer.intervals_.end(),
                                     [&](const Interval& o) { return o.lo <= iv.lo && iv.hi <= o.hi; });
    if (!covered)
      return false;
  }
  return true;
}

std::vector<double> signal_process(const SamplePath& path, const Kernel& kernel, double h,
                                   const EvalGrid& grid)
{
  require(h > 0.0, "bandwidth must be positive");
  const double d = path.norming.d;
  const double norm = 1.0 / (path.norming.e * h);
  const SortedSample sample(path.x);

  std::vector<double> out(grid.size(), 0.0);
  for_each_window(sample, grid, d, kernel.support_radius() * h,
                  [&](std::size_t i, double center, std::size_t begin, std::size_t end) {
                    double sum = 0.0;
                    for (std::size_t j = begin; j < end; ++j)
                      sum += kernel.eval((sample.x[j] - center) / h);
                    out[i] = sum * norm;
                  });
  return out;
}

std::vector<double> signal_process_direct(const SamplePath& path, const Kernel& kernel, double h,
                                          const EvalGrid& grid)
{
  const double d = path.norming.d;
  const double norm = 1.0 / (path.norming.e * h);
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double center = d * grid.nodes[i];
    double sum = 0.0;
    for (double xt : path.x)
      sum += kernel.eval((xt - center) / h);
    out[i] = sum * norm;
  }
  return out;
}

DomainSet domain_from_signal(std::span<const double> signal, const EvalGrid& grid, double d_n, double eps)
{
  require(eps >= 0.0, "eps must be nonnegative");
  std::vector<Interval> runs;
  std::size_t i = 0;
  while (i < grid.size()) {
    if (signal[i] < eps) {
      ++i;
      continue;
    }
    const std::size_t first = i;
    while (i + 1 < grid.size() && signal[i + 1] >= eps)
      ++i;
    runs.push_back({d_n * grid.nodes[first], d_n * grid.nodes[i]});
    ++i;
  }
  return DomainSet(std::move(runs));
}

DomainSet domain_A(const SamplePath& path, const Kernel& kernel, double h, double eps,
                   const EvalGrid& grid)
{
  const auto signal = signal_process(path, kernel, h, grid);
  return domain_from_signal(signal, grid, path.norming.d, eps);
}

DomainSet domain_R(const SamplePath& path, double eps)
{
  require(eps >= 0.0 && eps < 1.0, "eps must lie in [0,1)");
  require(path.n >= 1, "path must be nonempty");
  const auto [lo, hi] = std::minmax_element(path.x.begin(), path.x.end());
  return DomainSet({{(1.0 - eps) * *lo, (1.0 - eps) * *hi}});
}

double coverage_fraction(const SamplePath& path, const DomainSet& domain)
{
  if (path.n == 0)
    return 0.0;
  std::size_t outside = 0;
  for (double xt : path.x)
    if (!domain.contains(xt))
      ++outside;
  return static_cast<double>(outside) / static_cast<double>(path.n);
}

DomainSet enlarge(const DomainSet& domain, double pad)
{
  require(pad >= 0.0, "pad must be nonnegative");
  std::vector<Interval> widened;
  widened.reserve(domain.intervals().size());
  for (const auto& iv : domain.intervals())
    widened.push_back({iv.lo - pad, iv.hi + pad});
  return DomainSet(std::move(widened));
}

double standard_normal_cdf(double z)
{
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

ReflectionEstimate reflection_probability_check(std::size_t n, double c0, std::size_t reps,
                                                std::uint64_t seed, unsigned threads)
{
  require(n >= 1 && reps >= 1, "reflection check needs n >= 1 and reps >= 1");
  require(c0 > 0.0, "C0 must be positive");
  DgpConfig cfg = unit_root_gaussian();
  cfg.theta = build_theta({ThetaKind::explicit_list, 0.0, {0.0}}, 0);
  const double barrier = c0 * std::sqrt(static_cast<double>(n)) / 2.0;

  std::vector<unsigned char> below(reps, 0);
  parallel_for(reps, threads, [&](std::size_t r) {
    const auto path = simulate_path(cfg, n, {seed, r});
    below[r] = *std::max_element(path.x.begin(), path.x.end()) <= barrier;
  });

  const double hits = static_cast<double>(std::count(below.begin(), below.end(), 1));
  const double p = hits / static_cast<double>(reps);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps)),
          2.0 * standard_normal_cdf(c0 / 2.0) - 1.0};
}

void write_domain_csv(std::ostream& os, const DomainSet& domain)
{
  CsvWriter csv(os, {"l", "r"});
  for (const auto& iv : domain.intervals())
    csv.row(iv.lo, iv.hi);
}

void write_signal_csv(std::ostream& os, const EvalGrid& grid, std::span<const double> signal)
{
  CsvWriter csv(os, {"a", "l_n"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv.row(grid.nodes[i], signal[i]);
}

} // namespace cointreg
