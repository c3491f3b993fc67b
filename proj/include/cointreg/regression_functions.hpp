#pragma once

#include <string>
#include <vector>

namespace cointreg {

/// A twice continuously differentiable regression function with exact
/// first and second derivatives.
class RegressionFunction {
public:
  enum class Shape { zero, constant, linear, sine, logistic, bspline, linear_sine };

  static RegressionFunction zero();
  static RegressionFunction constant(double c);
  static RegressionFunction linear(double slope, double intercept);
  static RegressionFunction sine();
  static RegressionFunction logistic();
  /// Cubic B-spline bump B3(x / width): C2, compact support [-2 width, 2 width].
  static RegressionFunction bspline(double width);
  /// slope * x + sin(x).
  static RegressionFunction linear_sine(double slope);

  const std::string& id() const { return id_; }
  Shape shape() const { return shape_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double eval(double x) const;
  double d1(double x) const;
  double d2(double x) const;

private:
  RegressionFunction(Shape shape, std::string id, double a = 0.0, double b = 0.0)
    : shape_(shape), id_(std::move(id)), a_(a), b_(b)
  {
  }

  Shape shape_;
  std::string id_;
  double a_;
  double b_;
};

/// One instance of every shape with its default parameters.
std::vector<RegressionFunction> m0_catalog();

/// Builds a catalog entry from its id and (where relevant) parameters a, b.
RegressionFunction make_regression_function(const std::string& id, double a, double b);

} // namespace cointreg
