#include "katosurf/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace katosurf {

double curvature_ac(const ProfileCurve& profile, double t) {
  if (profile.is_breakpoint(t)) {
    throw std::domain_error(
        "curvature_ac: t is a breakpoint; the curvature there is the "
        "singular part of curvature_measure");
  }
  return -profile.deriv2(t) / profile.value(t);
}

double CurvatureMeasure::total_mass(double R) const {
  // ac part: int_{|t|<=R} K(t) dA = 2*pi * int K(t) phi(t) dt, split at
  // breakpoints so the quadrature never straddles a kink.
  std::vector<double> cuts = {-R};
  for (const auto& sc : singular) {
    if (std::abs(sc.t) < R) cuts.push_back(sc.t);
  }
  cuts.push_back(R);
  double mass = 0.0;
  auto integrand = [this](double t) {
    return -profile.deriv2(t);  // K*phi = -phi''
  };
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    mass += kTwoPi * integrate(integrand, cuts[i] + 1e-12, cuts[i + 1] - 1e-12,
                               1e-12);
  }
  for (const auto& sc : singular) {
    if (std::abs(sc.t) <= R) {
      mass += sc.weight * kTwoPi * profile.value(sc.t);
    }
  }
  return mass;
}

CurvatureMeasure curvature_measure(const ProfileCurve& profile) {
  CurvatureMeasure m{profile, {}};
  for (const auto& bp : profile.breakpoints()) {
    m.singular.push_back({bp.t, -bp.jump()});
  }
  return m;
}

double radial_laplacian(const WarpedMetric& base, const RadialFunction& f,
                        double r) {
  if (f.is_breakpoint(r) || base.profile.is_breakpoint(r)) {
    throw std::domain_error("radial_laplacian: not smooth at r");
  }
  const double phi = base.phi(r);
  const double dphi = base.profile.deriv(r);
  // -(1/phi)(phi f')' = -(f'' + (phi'/phi) f').
  return -(f.deriv2(r) + (dphi / phi) * f.deriv(r));
}

double conformal_curvature(const ConformalSurface& surface, double r) {
  const double k0 = curvature_ac(surface.base.profile, r);
  const double lap = radial_laplacian(surface.base, surface.factor, r);
  return std::exp(-2.0 * surface.f(r)) * (k0 + lap);
}

}  // namespace katosurf
