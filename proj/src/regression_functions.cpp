#include "cointreg/regression_functions.hpp"

#include "cointreg/errors.hpp"

#include <cmath>

namespace cointreg {

namespace {

double bspline3(double u)
{
  const double au = std::abs(u);
  if (au < 1.0)
    return 2.0 / 3.0 - au * au + 0.5 * au * au * au;
  if (au < 2.0) {
    const double r = 2.0 - au;
    return r * r * r / 6.0;
  }
  return 0.0;
}

double bspline3_d1(double u)
{
  const double au = std::abs(u);
  const double sign = u < 0.0 ? -1.0 : 1.0;
  if (au < 1.0)
    return sign * (-2.0 * au + 1.5 * au * au);
  if (au < 2.0) {
    const double r = 2.0 - au;
    return -sign * 0.5 * r * r;
  }
  return 0.0;
}

double bspline3_d2(double u)
{
  const double au = std::abs(u);
  if (au < 1.0)
    return -2.0 + 3.0 * au;
  if (au < 2.0)
    return 2.0 - au;
  return 0.0;
}

double sigmoid(double x)
{
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

} // namespace

RegressionFunction RegressionFunction::zero() { return {Shape::zero, "zero"}; }
RegressionFunction RegressionFunction::constant(double c) { return {Shape::constant, "constant", c}; }
RegressionFunction RegressionFunction::linear(double slope, double intercept)
{
  return {Shape::linear, "linear", slope, intercept};
}
RegressionFunction RegressionFunction::sine() { return {Shape::sine, "sin"}; }
RegressionFunction RegressionFunction::logistic() { return {Shape::logistic, "logistic"}; }
RegressionFunction RegressionFunction::bspline(double width)
{
  require(width > 0.0, "bspline width must be positive");
  return {Shape::bspline, "bspline", width};
}
RegressionFunction RegressionFunction::linear_sine(double slope)
{
  return {Shape::linear_sine, "linear_sin", slope};
}

double RegressionFunction::eval(double x) const
{
  switch (shape_) {
  case Shape::zero:
    return 0.0;
  case Shape::constant:
    return a_;
  case Shape::linear:
    return a_ * x + b_;
  case Shape::sine:
    return std::sin(x);
  case Shape::logistic:
    return sigmoid(x);
  case Shape::bspline:
    return bspline3(x / a_);
  case Shape::linear_sine:
    return a_ * x + std::sin(x);
  }
  return 0.0;
}

double RegressionFunction::d1(double x) const
{
  switch (shape_) {
  case Shape::zero:
  case Shape::constant:
    return 0.0;
  case Shape::linear:
    return a_;
  case Shape::sine:
    return std::cos(x);
  case Shape::logistic: {
    const double s = sigmoid(x);
    return s * (1.0 - s);
  }
  case Shape::bspline:
    return bspline3_d1(x / a_) / a_;
  case Shape::linear_sine:
    return a_ + std::cos(x);
  }
  return 0.0;
}

double RegressionFunction::d2(double x) const
{
  switch (shape_) {
  case Shape::zero:
  case Shape::constant:
  case Shape::linear:
    return 0.0;
  case Shape::sine:
    return -std::sin(x);
  case Shape::logistic: {
    const double s = sigmoid(x);
    return s * (1.0 - s) * (1.0 - 2.0 * s);
  }
  case Shape::bspline:
    return bspline3_d2(x / a_) / (a_ * a_);
  case Shape::linear_sine:
    return -std::sin(x);
  }
  return 0.0;
}

std::vector<RegressionFunction> m0_catalog()
{
  return {RegressionFunction::zero(),
          RegressionFunction::constant(1.0),
          RegressionFunction::linear(1.0, 0.0),
          RegressionFunction::sine(),
          RegressionFunction::logistic(),
          RegressionFunction::bspline(1.0),
          RegressionFunction::linear_sine(5.0)};
}

RegressionFunction make_regression_function(const std::string& id, double a, double b)
{
  if (id == "zero")
    return RegressionFunction::zero();
  if (id == "constant")
    return RegressionFunction::constant(a);
  if (id == "linear")
    return RegressionFunction::linear(a, b);
  if (id == "sin")
    return RegressionFunction::sine();
  if (id == "logistic")
    return RegressionFunction::logistic();
  if (id == "bspline")
    return RegressionFunction::bspline(a);
  if (id == "linear_sin")
    return RegressionFunction::linear_sine(a);
  throw InvalidParameter("unknown m0 id '" + id + "'");
}

} // namespace cointreg
