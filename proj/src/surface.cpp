#include "katosurf/surface.hpp"

#include <cmath>
#include <stdexcept>

namespace katosurf {

WarpedMetric hat_surface(double r_max, double delta) {
  WarpedMetric m{hat_profile(delta), r_max, SurfaceKind::Hat, delta};
  m.profile.validate(-r_max, r_max);
  return m;
}

WarpedMetric base_surface(double r_max) {
  WarpedMetric m{base_profile(), r_max, SurfaceKind::Smooth, 1.0};
  m.profile.validate(-r_max, r_max);
  return m;
}

WarpedMetric flat_cylinder(double r_max, double c) {
  WarpedMetric m{flat_profile(c), r_max, SurfaceKind::Flat, c};
  m.profile.validate(-r_max, r_max);
  return m;
}

WarpedMetric glued_spheres_surface(double r0, double r_max) {
  if (!(r_max < kPi - r0)) {
    throw std::invalid_argument(
        "glued_spheres_surface: r_max must stay below pi - r0");
  }
  WarpedMetric m{glued_spheres_profile(r0), r_max, SurfaceKind::Smooth, 1.0};
  m.profile.validate(-r_max, r_max);
  return m;
}

WarpedMetric hyperbolic_surface(double r_max) {
  WarpedMetric m{hyperbolic_profile(), r_max, SurfaceKind::Smooth, 1.0};
  m.profile.validate(-r_max, r_max);
  return m;
}

WarpedMetric smooth_surface(ProfileCurve profile, double r_max) {
  WarpedMetric m{std::move(profile), r_max, SurfaceKind::Smooth, 1.0};
  m.profile.validate(-r_max, r_max);
  return m;
}

double paper_conformal_factor(double r) {
  const double a = std::abs(r);
  return std::log(1.0 + a / std::sqrt(1.0 + a * a));
}

void ConformalSurface::validate(int samples, double grid_tol) const {
  const double lo = -base.r_max, hi = base.r_max;
  double prev = factor.value(lo);
  const double h = (hi - lo) / samples;
  for (int i = 1; i <= samples; ++i) {
    const double r = lo + i * h;
    const double v = factor.value(r);
    if (std::abs(v) > sup_bound + 1e-12) {
      throw std::invalid_argument("ConformalSurface: |f| exceeds L");
    }
    if (std::abs(v - prev) / h > lip_bound * (1.0 + grid_tol)) {
      throw std::invalid_argument(
          "ConformalSurface: difference quotient exceeds lambda");
    }
    prev = v;
  }
}

ConformalSurface paper_instance(double r_max) {
  ConformalSurface s{base_surface(r_max), paper_factor_function(r_max),
                     std::log(2.0), 1.0};
  s.validate();
  return s;
}

WarpedForm reparametrize(const WarpedMetric& base,
                         const Eigen::ArrayXd& r_grid,
                         const Eigen::ArrayXd& f_values) {
  const Eigen::Index n = r_grid.size();
  if (n < 4 || f_values.size() != n) {
    throw std::invalid_argument("reparametrize: bad grids");
  }
  // s(r) = int_0^r e^f by trapezoid on the (fine) grid, shifted so s(0)=0.
  Eigen::ArrayXd ef = f_values.exp();
  Eigen::ArrayXd s(n);
  s(0) = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    s(i) = s(i - 1) + 0.5 * (ef(i) + ef(i - 1)) * (r_grid(i) - r_grid(i - 1));
  }
  // Shift to s=0 at r=0.
  double s0 = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (r_grid(i) <= 0.0 && r_grid(i + 1) >= 0.0) {
      const double w = (0.0 - r_grid(i)) / (r_grid(i + 1) - r_grid(i));
      s0 = (1.0 - w) * s(i) + w * s(i + 1);
      break;
    }
  }
  s -= s0;

  Eigen::ArrayXd psi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    psi(i) = ef(i) * base.phi(r_grid(i));
  }

  WarpedForm out;
  out.s_of_r = CubicSpline(r_grid, s);
  out.r_of_s = CubicSpline(s, r_grid);
  out.s_max = std::min(std::abs(s(0)), std::abs(s(n - 1)));
  out.metric = WarpedMetric{spline_profile(s, psi, "warped-form"),
                            out.s_max, SurfaceKind::Smooth, 1.0};
  return out;
}

ConformalChangeReport verify_conformal_change(const ConformalSurface& surface,
                                              double r_hi, int n, double tol) {
  ConformalChangeReport report;
  report.tolerance = tol;
  double t_of_r = 0.0;  // int_0^r e^f, accumulated by fine adaptive steps
  double prev_r = 0.0;
  auto ef = [&surface](double rho) {
    return std::exp(surface.factor.value(rho));
  };
  for (int i = 0; i <= n; ++i) {
    const double r = r_hi * i / n;
    if (i > 0) {
      t_of_r += integrate(ef, prev_r, r, 1e-13);
    }
    prev_r = r;
    const double lhs = ef(r) * surface.base.phi(r);
    const double rhs = 1.0 + std::abs(t_of_r);
    report.max_defect = std::max(report.max_defect, std::abs(lhs - rhs));
  }
  report.passed = report.max_defect <= tol;
  return report;
}

}  // namespace katosurf
