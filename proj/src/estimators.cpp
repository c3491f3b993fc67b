#include "cointreg/estimators.hpp"

#include "cointreg/errors.hpp"
#include "cointreg/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cointreg {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

EstimateSheet blank_sheet(const EvalGrid& grid)
{
  EstimateSheet s;
  s.grid = grid;
  s.m_hat.assign(grid.size(), nan);
  s.denom.assign(grid.size(), 0.0);
  s.slope.assign(grid.size(), nan);
  s.degenerate.assign(grid.size(), 0);
  return s;
}

} // namespace

std::size_t EstimateSheet::degenerate_count() const
{
  return static_cast<std::size_t>(std::count(degenerate.begin(), degenerate.end(), 1));
}

EstimateSheet nadaraya_watson(const SamplePath& path, const Kernel& kernel, double h, const EvalGrid& grid)
{
  require(h > 0.0, "bandwidth must be positive");
  const SortedSample sample(path.x);
  const auto ys = sample.gather(path.y);
  auto sheet = blank_sheet(grid);

  for_each_window(sample, grid, grid.scale, kernel.support_radius() * h,
                  [&](std::size_t i, double center, std::size_t begin, std::size_t end) {
                    double sk = 0.0, sky = 0.0;
                    for (std::size_t j = begin; j < end; ++j) {
                      const double k = kernel.eval((sample.x[j] - center) / h);
                      sk += k;
                      sky += k * ys[j];
                    }
                    sheet.denom[i] = sk / h;
                    if (sk > 0.0)
                      sheet.m_hat[i] = sky / sk;
                    else
                      sheet.degenerate[i] = 1;
                  });
  return sheet;
}

EstimateSheet local_linear(const SamplePath& path, const Kernel& kernel, double h, const EvalGrid& grid)
{
  require(h > 0.0, "bandwidth must be positive");
  const SortedSample sample(path.x);
  const auto ys = sample.gather(path.y);
  auto sheet = blank_sheet(grid);

  for_each_window(sample, grid, grid.scale, kernel.support_radius() * h,
                  [&](std::size_t i, double center, std::size_t begin, std::size_t end) {
                    double s0 = 0.0, s1 = 0.0, s2 = 0.0, t0 = 0.0, t1 = 0.0;
                    std::size_t support = 0;
                    for (std::size_t j = begin; j < end; ++j) {
                      const double z = (sample.x[j] - center) / h;
                      const double k = kernel.eval(z);
                      if (k <= 0.0)
                        continue;
                      ++support;
                      s0 += k;
                      s1 += k * z;
                      s2 += k * z * z;
                      t0 += k * ys[j];
                      t1 += k * z * ys[j];
                    }
                    sheet.denom[i] = s0 / h;
                    const double det = s0 * s2 - s1 * s1;
                    const double half_trace = 0.5 * (s0 + s2);
                    const double lambda_max =
                      half_trace + std::sqrt(0.25 * (s0 - s2) * (s0 - s2) + s1 * s1);
                    const double condition = det > 0.0 ? lambda_max * lambda_max / det
                                                       : std::numeric_limits<double>::infinity();
                    if (support < 2 || !(condition <= local_linear_max_condition)) {
                      sheet.degenerate[i] = 1;
                      return;
                    }
                    sheet.m_hat[i] = (s2 * t0 - s1 * t1) / det;
                    sheet.slope[i] = (s0 * t1 - s1 * t0) / det / h;
                  });
  return sheet;
}

NwDecomposition decompose_nw(const SamplePath& path, const Kernel& kernel, double h, const EvalGrid& grid,
                             const RegressionFunction& m0)
{
  require(h > 0.0, "bandwidth must be positive");
  const SortedSample sample(path.x);
  const auto us = sample.gather(path.u);
  std::vector<double> m_at(sample.x.size());
  for (std::size_t j = 0; j < m_at.size(); ++j)
    m_at[j] = m0.eval(sample.x[j]);

  NwDecomposition out;
  out.psi1.assign(grid.size(), 0.0);
  out.psi2.assign(grid.size(), 0.0);
  out.psi3.assign(grid.size(), 0.0);
  for_each_window(sample, grid, grid.scale, kernel.support_radius() * h,
                  [&](std::size_t i, double center, std::size_t begin, std::size_t end) {
                    const double m_center = m0.eval(center);
                    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
                    for (std::size_t j = begin; j < end; ++j) {
                      const double k = kernel.eval((sample.x[j] - center) / h) / h;
                      p1 += k * (m_at[j] - m_center);
                      p2 += k * us[j];
                      p3 += k;
                    }
                    out.psi1[i] = p1;
                    out.psi2[i] = p2;
                    out.psi3[i] = p3;
                  });
  return out;
}

double sup_error(const EstimateSheet& sheet, const RegressionFunction& m0, const DomainSet& domain)
{
  double worst = 0.0;
  std::size_t visited = 0;
  for (std::size_t i = 0; i < sheet.grid.size(); ++i) {
    const double x = sheet.grid.x(i);
    if (!domain.contains(x))
      continue;
    ++visited;
    if (sheet.degenerate[i] || std::isnan(sheet.m_hat[i]))
      throw NumericError("undefined estimate at x = " + format_double(x) +
                         " inside the evaluation domain");
    worst = std::max(worst, std::abs(sheet.m_hat[i] - m0.eval(x)));
  }
  if (visited == 0)
    throw NumericError("empty evaluation set");
  return worst;
}

DerivativeBounds derivative_bounds(const RegressionFunction& m0, const DomainSet& domain, double mesh)
{
  require(!domain.empty(), "derivative bounds need a nonempty domain");
  require(mesh > 0.0, "mesh must be positive");
  const double step = mesh / 10.0;
  DerivativeBounds out{0.0, 0.0};
  auto visit = [&](double x) {
    out.m1 = std::max(out.m1, std::abs(m0.d1(x)));
    out.m2 = std::max(out.m2, std::abs(m0.d2(x)));
  };
  for (const auto& iv : domain.intervals()) {
    require(std::isfinite(iv.lo) && std::isfinite(iv.hi), "derivative bounds need bounded intervals");
    const auto steps = static_cast<std::size_t>(std::ceil((iv.hi - iv.lo) / step));
    for (std::size_t k = 0; k < steps; ++k)
      visit(iv.lo + static_cast<double>(k) * step);
    visit(iv.hi);
  }
  return out;
}

void write_estimate_csv(std::ostream& os, const EstimateSheet& sheet)
{
  CsvWriter csv(os, {"x", "m_hat", "denom", "slope", "degenerate"});
  for (std::size_t i = 0; i < sheet.grid.size(); ++i)
    csv.row(sheet.grid.x(i), sheet.m_hat[i], sheet.denom[i], sheet.slope[i],
            static_cast<bool>(sheet.degenerate[i]));
}

} // namespace cointreg
