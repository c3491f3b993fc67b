#pragma once

#include "cointreg/dgp.hpp"
#include "cointreg/grid.hpp"
#include "cointreg/kernels.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace cointreg {

struct Interval {
  double lo;
  double hi;
};

/// A finite union of disjoint closed intervals, sorted left to right.
class DomainSet {
public:
  DomainSet() = default;
  /// Sorts and merges overlapping or touching intervals.
  explicit DomainSet(std::vector<Interval> intervals);

  static DomainSet whole_line();

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool contains(double x) const;
  /// Total length.
  double measure() const;
  /// Every interval of this set lies inside some interval of `outer`.
  bool subset_of(const DomainSet& outer) const;

private:
  std::vector<Interval> intervals_;
};

/// L_n(a) = (e_n h)^-1 sum_t K((x_t - d_n a) / h) at each node a of the grid.
std::vector<double> signal_process(const SamplePath& path, const Kernel& kernel, double h,
                                   const EvalGrid& grid);

/// Same sums by a direct double loop over (node, t). Reference implementation.
std::vector<double> signal_process_direct(const SamplePath& path, const Kernel& kernel, double h,
                                          const EvalGrid& grid);

/// Maximal runs of consecutive nodes with signal >= eps, as x-intervals
/// [d_n a_first, d_n a_last].
DomainSet domain_from_signal(std::span<const double> signal, const EvalGrid& grid, double d_n, double eps);

DomainSet domain_A(const SamplePath& path, const Kernel& kernel, double h, double eps,
                   const EvalGrid& grid);

/// [(1 - eps) min x_t, (1 - eps) max x_t].
DomainSet domain_R(const SamplePath& path, double eps);

/// n^-1 #{t : x_t not in domain}.
double coverage_fraction(const SamplePath& path, const DomainSet& domain);

/// Widens every interval by pad on both sides and re-merges.
DomainSet enlarge(const DomainSet& domain, double pad);

struct ReflectionEstimate {
  double estimate;
  double std_error;
  double limit; ///< 2 Phi(C0 / 2) - 1
};

/// Monte Carlo estimate of P{max_t x_t <= C0 sqrt(n) / 2} for the Gaussian
/// random walk with N(0,1) steps; replication r uses stream (seed, r).
ReflectionEstimate reflection_probability_check(std::size_t n, double c0, std::size_t reps,
                                                std::uint64_t seed, unsigned threads = 1);

double standard_normal_cdf(double z);

/// CSV rows "l,r".
void write_domain_csv(std::ostream& os, const DomainSet& domain);
/// CSV rows "a,l_n".
void write_signal_csv(std::ostream& os, const EvalGrid& grid, std::span<const double> signal);

} // namespace cointreg
