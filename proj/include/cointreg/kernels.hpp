#pragma once

#include "cointreg/dgp.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace cointreg {

/// Compactly supported, symmetric second-order kernels on [-1, 1].
class Kernel {
public:
  enum class Kind { epanechnikov, biweight, triangular };

  static Kernel epanechnikov() { return Kernel(Kind::epanechnikov); }
  static Kernel biweight() { return Kernel(Kind::biweight); }
  static Kernel triangular() { return Kernel(Kind::triangular); }

  Kind kind() const { return kind_; }
  std::string id() const;

  double eval(double x) const
  {
    const double ax = std::abs(x);
    if (ax > 1.0)
      return 0.0;
    switch (kind_) {
    case Kind::epanechnikov:
      return 0.75 * (1.0 - x * x);
    case Kind::biweight: {
      const double w = 1.0 - x * x;
      return 0.9375 * w * w;
    }
    case Kind::triangular:
      return 1.0 - ax;
    }
    return 0.0;
  }

  double operator()(double x) const { return eval(x); }

  double support_radius() const { return 1.0; }

  /// sup |K'|: 3/2, 15 sqrt(3) / 18 (at |x| = 1/sqrt 3), and 1.
  double lipschitz_const() const;

  /// int x^2 K(x) dx.
  double second_moment() const;

private:
  explicit Kernel(Kind kind) : kind_(kind) {}
  Kind kind_;
};

std::vector<Kernel> kernel_catalog();
Kernel kernel_by_id(const std::string& id);

/// x -> x^power K(x): K itself, the zero-mean K^[1], K^[2], ...
struct KernelFunction {
  Kernel kernel = Kernel::epanechnikov();
  int power = 0;

  double operator()(double x) const
  {
    const double k = kernel.eval(x);
    switch (power) {
    case 0:
      return k;
    case 1:
      return x * k;
    case 2:
      return x * x * k;
    default:
      return std::pow(x, power) * k;
    }
  }
  double support_radius() const { return kernel.support_radius(); }
};

/// Composite Simpson rule with an even number of intervals.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

struct KernelCertificate {
  double integral;        ///< int K, expected 1
  double first_moment;    ///< int x K, expected 0
  double lipschitz_ratio; ///< max |K(x)-K(y)| / |x-y| over a dense grid
  bool zero_outside;      ///< K = 0 sampled beyond the support
  bool passed() const;
};

/// Numerical checks: Simpson with 10^5 intervals, Lipschitz ratio over a
/// 2 * 10^5 point grid, support sampled on (c_K, 4 c_K].
KernelCertificate certify(const Kernel& kernel);

// Bandwidths ------------------------------------------------------------------

struct BandwidthRule {
  enum class Kind { fixed, power, plugin };

  Kind kind = Kind::fixed;
  double value = 0.5;  ///< h (fixed) or the constant c (power, plugin)
  double kappa = 0.2;  ///< exponent of the power rule
  double r0 = 0.125;   ///< lower-bound exponent, default 1/q0 with q0 = 8
  double h_upper = 1.0;

  static BandwidthRule fixed(double h) { return {Kind::fixed, h}; }
  static BandwidthRule power(double c, double kappa) { return {Kind::power, c, kappa}; }
  static BandwidthRule plugin(double c) { return {Kind::plugin, c}; }

  void validate() const;
};

struct BandwidthChoice {
  double h;
  double raw;   ///< rule output before projection
  double lower; ///< n^(2 r0) / e_n
  double upper;
  bool clipped;
};

/// Lower end of the admissible bandwidth interval, n^(2 r0) / e_n.
double bandwidth_floor(std::size_t n, double e_n, double r0);

/// Robust scale of the increments x_t - x_{t-1} (x_0 = 0): IQR / 1.349.
double robust_increment_scale(const SamplePath& path);

/// fixed -> h; power -> c e_n^-kappa; plugin -> c sd_robust e_n^(-1/5);
/// then projected into [lower, upper]. If lower > upper the upper end wins.
BandwidthChoice select_bandwidth(const BandwidthRule& rule, const SamplePath& path);

} // namespace cointreg
