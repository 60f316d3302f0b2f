#pragma once

#include "katosurf/profile.hpp"

#include <optional>

namespace katosurf {

/// Point in surface coordinates (t along meridians, theta around).
struct Point {
  double t = 0.0;
  double theta = 0.0;
};

enum class SurfaceKind {
  Hat,     // phi = delta*(1+|t|); distances have closed taut-path form
  Flat,    // phi constant; distances have closed form
  Smooth,  // generic smooth profile; distances by shooting
};

/// Surface of revolution R x (R/2piZ) with metric dt^2 + phi(t)^2 dtheta^2,
/// truncated to |t| <= r_max for numerics. Immutable after construction.
struct WarpedMetric {
  ProfileCurve profile;
  double r_max = 12.0;
  SurfaceKind kind = SurfaceKind::Smooth;
  double hat_delta = 1.0;  // theta scale for Hat / constant phi for Flat

  double phi(double t) const { return profile.value(t); }
  double dphi(double t, Side side = Side::Plus) const {
    return profile.deriv(t, side);
  }
  bool contains(double t) const { return std::abs(t) <= r_max; }
};

WarpedMetric hat_surface(double r_max = 12.0, double delta = 1.0);
WarpedMetric base_surface(double r_max = 12.0);
WarpedMetric flat_cylinder(double r_max = 12.0, double c = 1.0);
WarpedMetric glued_spheres_surface(double r0, double r_max);
WarpedMetric hyperbolic_surface(double r_max = 5.0);
WarpedMetric smooth_surface(ProfileCurve profile, double r_max);

/// The paper's radial conformal factor, f(r) = log(1 + |r|/sqrt(1+r^2)).
double paper_conformal_factor(double r);

/// Conformal deformation g_f = e^{2f} g_0 of a warped base with a radial
/// factor f bounded by L in sup norm and lambda in Lipschitz norm.
struct ConformalSurface {
  WarpedMetric base;
  RadialFunction factor;
  double sup_bound = 0.0;  // L
  double lip_bound = 0.0;  // lambda

  double f(double r) const { return factor.value(r); }

  /// Checks |f| <= L and grid difference quotients <= lambda*(1+tol) on a
  /// sample grid. Throws on violation.
  void validate(int samples = 2048, double grid_tol = 1e-6) const;
};

/// The paper instance: base g0 with factor f, so that e^{2f} g0 is the hat.
ConformalSurface paper_instance(double r_max = 12.0);

/// A rotationally symmetric conformal metric e^{2f(r)}(dr^2 + phi^2 dtheta^2)
/// rewritten as a warped product ds^2 + psi(s)^2 dtheta^2 via s = int e^f dr.
/// Keeps the coordinate change for mapping points both ways.
struct WarpedForm {
  WarpedMetric metric;     // profile psi(s) on |s| <= s_max
  CubicSpline s_of_r;      // arclength coordinate as a function of r
  CubicSpline r_of_s;
  double s_max = 0.0;

  double to_s(double r) const { return s_of_r.value(r); }
  double to_r(double s) const { return r_of_s.value(s); }
};

/// Builds the warped form on a uniform r grid with `n` points. The factor
/// must be smooth (no breakpoints) for the spline profile to be faithful.
WarpedForm reparametrize(const WarpedMetric& base,
                         const Eigen::ArrayXd& r_grid,
                         const Eigen::ArrayXd& f_values);

/// Outcome of checking e^{f(r)} sqrt(1+r^2) == 1 + |t(r)| with
/// t(r) = int_0^r e^f. Not an exception path: a failed check is data.
struct ConformalChangeReport {
  double max_defect = 0.0;
  double tolerance = 1e-8;
  bool passed = false;
};

/// Verifies that the paper instance is isometric to the hat via the stated
/// coordinate change, on a uniform grid of `n` radii in [0, r_hi].
ConformalChangeReport verify_conformal_change(const ConformalSurface& surface,
                                              double r_hi = 10.0, int n = 1000,
                                              double tol = 1e-8);

}  // namespace katosurf
