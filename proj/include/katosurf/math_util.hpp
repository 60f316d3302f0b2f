#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

namespace katosurf {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

/// Wraps an angle to [0, 2*pi).
inline double wrap_angle_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_depth = 40);

/// Solves a tridiagonal system in place. diag/lower/upper are the matrix
/// bands (lower[0] and upper[n-1] unused); rhs is overwritten with the
/// solution. Standard Thomas algorithm, no pivoting.
void solve_tridiagonal(const Eigen::ArrayXd& lower, Eigen::ArrayXd diag,
                       const Eigen::ArrayXd& upper, Eigen::ArrayXd& rhs);

/// Natural cubic spline on (possibly non-uniform) strictly increasing knots.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(Eigen::ArrayXd x, Eigen::ArrayXd y);

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  double x_min() const { return x_.size() ? x_(0) : 0.0; }
  double x_max() const { return x_.size() ? x_(x_.size() - 1) : 0.0; }
  bool empty() const { return x_.size() == 0; }

 private:
  int segment(double x) const;

  Eigen::ArrayXd x_, y_, m_;  // m_ holds second derivatives at the knots
};

/// Golden-section minimization of f on [a, b]; returns the abscissa.
double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, int iterations = 60);

/// Least-squares fit y ~ a*sqrt(t) + b*t with a, b >= 0.
struct SqrtLinearFit {
  double a = 0.0;
  double b = 0.0;
  double max_rel_residual = 0.0;
  double eval(double t) const { return a * std::sqrt(t) + b * t; }
};
SqrtLinearFit fit_sqrt_linear(const Eigen::ArrayXd& t, const Eigen::ArrayXd& y);

/// Largest relative deviation from the median: max_i |v_i - med| / med.
/// Used for the "stable within X%" acceptance checks.
double relative_spread(const std::vector<double>& values);

/// Root of f on a bracketing interval [a, b] (f(a), f(b) of opposite sign),
/// via Brent's method.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12, int max_iter = 200);

}  // namespace katosurf
