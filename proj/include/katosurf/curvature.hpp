#pragma once

#include "katosurf/surface.hpp"

namespace katosurf {

/// Gaussian curvature density -phi''/phi at a smooth point of the profile.
/// Throws std::domain_error at breakpoints (the curvature there is a
/// singular measure, see curvature_measure).
double curvature_ac(const ProfileCurve& profile, double t);

/// Circle {t = t_j} carrying singular curvature of linear density `weight`
/// per unit theta-length, weight = -(phi'(t_j+) - phi'(t_j-)).
struct SingularCircle {
  double t;
  double weight;
};

/// Gaussian curvature of a warped metric as a measure: an absolutely
/// continuous radial density plus singular circles at profile breakpoints.
struct CurvatureMeasure {
  ProfileCurve profile;
  std::vector<SingularCircle> singular;

  double ac_density(double t) const { return curvature_ac(profile, t); }

  /// Total curvature of the collar |t| <= R: integral of the ac part
  /// against the area element plus the singular circle masses.
  double total_mass(double R) const;
};

CurvatureMeasure curvature_measure(const ProfileCurve& profile);

/// Geometer's (nonnegative-spectrum) Laplacian of a radial field on the
/// base: Delta f = -(1/phi)(phi f')'. Requires f twice differentiable at r.
double radial_laplacian(const WarpedMetric& base, const RadialFunction& f,
                        double r);

/// Gaussian curvature of g_f = e^{2f} g0 at radius r:
///   K_{g_f} = e^{-2f} (K_{g0} + Delta_{g0} f).
/// Throws std::domain_error when f or the base profile is not smooth at r.
double conformal_curvature(const ConformalSurface& surface, double r);

}  // namespace katosurf
