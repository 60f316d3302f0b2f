#pragma once

#include "katosurf/math_util.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace katosurf {

/// One smooth piece of a piecewise radial function, with closed-form
/// derivatives (analytic pieces) or spline-backed ones (grid pieces).
struct RadialPiece {
  double lo, hi;  // coordinate interval the piece covers
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::function<double(double)> deriv2;
};

/// Interior junction of two pieces. Values match exactly; the one-sided
/// derivatives are declared data so that singular curvature weights are
/// exact rather than estimated.
struct Breakpoint {
  double t;
  double deriv_minus;
  double deriv_plus;
  double jump() const { return deriv_plus - deriv_minus; }
};

enum class Side { Minus, Plus };

/// Piecewise-smooth radial function t -> u(t) on [t_min, t_max], continuous,
/// with declared one-sided derivatives at interior breakpoints.
class RadialFunction {
 public:
  RadialFunction() = default;
  RadialFunction(std::vector<RadialPiece> pieces,
                 std::vector<Breakpoint> breakpoints);

  double value(double t) const;
  /// Derivative; at a breakpoint the declared one-sided value for `side`.
  double deriv(double t, Side side = Side::Plus) const;
  /// Second derivative; throws std::domain_error at breakpoints.
  double deriv2(double t) const;

  bool is_breakpoint(double t, double tol = 1e-12) const;
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  const std::vector<RadialPiece>& pieces() const { return pieces_; }
  double t_min() const { return pieces_.front().lo; }
  double t_max() const { return pieces_.back().hi; }

 private:
  int piece_index(double t, Side side) const;

  std::vector<RadialPiece> pieces_;
  std::vector<Breakpoint> breakpoints_;
};

/// Warp function phi of a surface of revolution dt^2 + phi(t)^2 dtheta^2.
/// Positive on its domain.
class ProfileCurve {
 public:
  ProfileCurve() = default;
  ProfileCurve(RadialFunction fn, std::string name);

  double value(double t) const { return fn_.value(t); }
  double deriv(double t, Side side = Side::Plus) const {
    return fn_.deriv(t, side);
  }
  double deriv2(double t) const { return fn_.deriv2(t); }

  bool is_breakpoint(double t, double tol = 1e-12) const {
    return fn_.is_breakpoint(t, tol);
  }
  const std::vector<Breakpoint>& breakpoints() const {
    return fn_.breakpoints();
  }
  const RadialFunction& fn() const { return fn_; }
  const std::string& name() const { return name_; }

  /// Checks positivity, continuity at breakpoints, and agreement of the
  /// declared one-sided derivatives with finite differences of the pieces
  /// (1e-8 relative). Throws std::invalid_argument on violation.
  void validate(double t_lo, double t_hi, int samples = 512) const;

  double max_value(double t_lo, double t_hi, int samples = 1024) const;
  double min_value(double t_lo, double t_hi, int samples = 1024) const;

 private:
  RadialFunction fn_;
  std::string name_;
};

// Profile factories for the surfaces used throughout.

/// phi(t) = delta * (1 + |t|): two flat sheets glued along the unit circle.
ProfileCurve hat_profile(double delta = 1.0);

/// phi(r) = sqrt(1 + r^2), the smooth base metric the hat is conformal to.
ProfileCurve base_profile();

/// phi == c, a flat cylinder of circumference 2*pi*c.
ProfileCurve flat_profile(double c = 1.0);

/// phi(t) = sin(r0 + |t|): two spherical caps removed and glued (|t| <
/// pi - r0).
ProfileCurve glued_spheres_profile(double r0);

/// phi(t) = cosh(t): constant curvature -1.
ProfileCurve hyperbolic_profile();

/// Smooth single-piece profile backed by a cubic spline on a grid.
ProfileCurve spline_profile(const Eigen::ArrayXd& t, const Eigen::ArrayXd& phi,
                            std::string name);

/// The paper's conformal factor f as a piecewise radial function
/// (kink at r = 0 with slopes -1 / +1).
RadialFunction paper_factor_function(double r_max);

}  // namespace katosurf
