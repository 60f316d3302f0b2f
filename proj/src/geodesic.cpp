#include "katosurf/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace katosurf {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = kB1 - 5179.0 / 57600, kE3 = kB3 - 7571.0 / 16695,
                 kE4 = kB4 - 393.0 / 640, kE5 = kB5 + 92097.0 / 339200,
                 kE6 = kB6 - 187.0 / 2100, kE7 = -1.0 / 40;

struct Deriv {
  double t, theta, v, w, jacobi, djacobi;
};

Deriv rhs(const WarpedMetric& m, const GeodesicState& y, Side side,
          bool with_jacobi) {
  const double phi = m.phi(y.t);
  const double dphi = m.profile.deriv(y.t, side);
  Deriv d;
  d.t = y.v;
  d.theta = y.w;
  d.v = phi * dphi * y.w * y.w;
  d.w = -2.0 * (dphi / phi) * y.v * y.w;
  if (with_jacobi) {
    // J'' = -K J with K = -phi''/phi on smooth pieces.
    const double d2phi = m.profile.is_breakpoint(y.t)
                             ? 0.0
                             : m.profile.deriv2(y.t);
    d.jacobi = y.djacobi;
    d.djacobi = (d2phi / phi) * y.jacobi;
  } else {
    d.jacobi = d.djacobi = 0.0;
  }
  return d;
}

GeodesicState axpy(const GeodesicState& y, double h,
                   std::initializer_list<std::pair<double, const Deriv*>> ks) {
  GeodesicState r = y;
  for (auto& [c, k] : ks) {
    r.t += h * c * k->t;
    r.theta += h * c * k->theta;
    r.v += h * c * k->v;
    r.w += h * c * k->w;
    r.jacobi += h * c * k->jacobi;
    r.djacobi += h * c * k->djacobi;
  }
  return r;
}

// One embedded DP45 step; fills the 5th-order result and the error estimate.
double dp45_step(const WarpedMetric& m, const GeodesicState& y, double h,
                 Side side, bool jac, GeodesicState& out) {
  const Deriv k1 = rhs(m, y, side, jac);
  const Deriv k2 = rhs(m, axpy(y, h, {{kA21, &k1}}), side, jac);
  const Deriv k3 = rhs(m, axpy(y, h, {{kA31, &k1}, {kA32, &k2}}), side, jac);
  const Deriv k4 =
      rhs(m, axpy(y, h, {{kA41, &k1}, {kA42, &k2}, {kA43, &k3}}), side, jac);
  const Deriv k5 = rhs(
      m, axpy(y, h, {{kA51, &k1}, {kA52, &k2}, {kA53, &k3}, {kA54, &k4}}),
      side, jac);
  const Deriv k6 =
      rhs(m,
          axpy(y, h,
               {{kA61, &k1}, {kA62, &k2}, {kA63, &k3}, {kA64, &k4},
                {kA65, &k5}}),
          side, jac);
  out = axpy(y, h, {{kB1, &k1}, {kB3, &k3}, {kB4, &k4}, {kB5, &k5},
                    {kB6, &k6}});
  const Deriv k7 = rhs(m, out, side, jac);
  const double err_t = kE1 * k1.t + kE3 * k3.t + kE4 * k4.t + kE5 * k5.t +
                       kE6 * k6.t + kE7 * k7.t;
  const double err_th = kE1 * k1.theta + kE3 * k3.theta + kE4 * k4.theta +
                        kE5 * k5.theta + kE6 * k6.theta + kE7 * k7.theta;
  const double err_v = kE1 * k1.v + kE3 * k3.v + kE4 * k4.v + kE5 * k5.v +
                       kE6 * k6.v + kE7 * k7.v;
  const double err_w = kE1 * k1.w + kE3 * k3.w + kE4 * k4.w + kE5 * k5.w +
                       kE6 * k6.w + kE7 * k7.w;
  return std::abs(h) * std::sqrt(err_t * err_t + err_th * err_th +
                                 err_v * err_v + err_w * err_w);
}

Side side_of_motion(const WarpedMetric& m, double t, double v) {
  if (!m.profile.is_breakpoint(t)) {
    return Side::Plus;  // side is only meaningful on a breakpoint
  }
  return v >= 0.0 ? Side::Plus : Side::Minus;
}

// Next breakpoint strictly between t0 (exclusive) and the direction of v.
std::optional<double> next_breakpoint(const WarpedMetric& m, double t0,
                                      double v) {
  std::optional<double> best;
  for (const auto& bp : m.profile.breakpoints()) {
    const double d = bp.t - t0;
    if (v > 0.0 && d > 1e-13) {
      if (!best || bp.t < *best) best = bp.t;
    } else if (v < 0.0 && d < -1e-13) {
      if (!best || bp.t > *best) best = bp.t;
    }
  }
  return best;
}

}  // namespace

GeodesicPath::GeodesicPath(std::vector<Arc> arcs, double hat_delta)
    : arcs_(std::move(arcs)), hat_delta_(hat_delta) {
  for (const auto& arc : arcs_) {
    std::visit(
        [this](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, IntegratedArc>) {
            total_length_ += a.samples.empty() ? 0.0 : a.samples.back().s;
          } else {
            total_length_ += a.length();
          }
        },
        arc);
  }
}

namespace {

Point integrated_at(const IntegratedArc& arc, double s) {
  const auto& v = arc.samples;
  if (v.empty()) return {};
  if (s <= v.front().s) return {v.front().y.t, v.front().y.theta};
  if (s >= v.back().s) return {v.back().y.t, v.back().y.theta};
  auto it = std::lower_bound(
      v.begin(), v.end(), s,
      [](const PathSample& a, double val) { return a.s < val; });
  const PathSample& hi = *it;
  const PathSample& lo = *(it - 1);
  const double h = hi.s - lo.s;
  const double u = (s - lo.s) / h;
  // Cubic Hermite in each coordinate using the stored velocities.
  auto hermite = [h, u](double p0, double m0, double p1, double m1) {
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * h * m0 +
           (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * h * m1;
  };
  return {hermite(lo.y.t, lo.y.v, hi.y.t, hi.y.v),
          hermite(lo.y.theta, lo.y.w, hi.y.theta, hi.y.w)};
}

Point chord_at(const ChordArc& arc, double s, double delta) {
  const double len = arc.length();
  const double u = len > 0 ? s / len : 0.0;
  const Eigen::Vector2d p = arc.p0 + u * (arc.p1 - arc.p0);
  const double rho = p.norm();
  const double t = arc.sheet * (rho - 1.0);
  // Recover theta on the branch nearest the linear interpolation of the
  // stored endpoint angles.
  const double th_lin = arc.th0 + u * (arc.th1 - arc.th0);
  double th = std::atan2(p.y(), p.x()) / delta;
  const double period = kTwoPi / delta;
  th += period * std::round((th_lin - th) / period);
  return {t, th};
}

}  // namespace

Point GeodesicPath::at(double s) const {
  s = std::clamp(s, 0.0, total_length_);
  for (const auto& arc : arcs_) {
    const double len = std::visit(
        [](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, IntegratedArc>) {
            return a.samples.empty() ? 0.0 : a.samples.back().s;
          } else {
            return a.length();
          }
        },
        arc);
    if (s <= len + 1e-15) {
      if (const auto* ia = std::get_if<IntegratedArc>(&arc)) {
        return integrated_at(*ia, s);
      }
      if (const auto* ba = std::get_if<BoundaryArc>(&arc)) {
        const double dir = ba->theta1 >= ba->theta0 ? 1.0 : -1.0;
        return {ba->level, ba->theta0 + dir * s / ba->phi};
      }
      return chord_at(std::get<ChordArc>(arc), s, hat_delta_);
    }
    s -= len;
  }
  return at(total_length_);  // unreachable
}

double GeodesicPath::endpoint_defect() const {
  auto arc_point = [this](const Arc& arc, bool end) -> Point {
    if (const auto* ia = std::get_if<IntegratedArc>(&arc)) {
      const auto& smp = end ? ia->samples.back() : ia->samples.front();
      return {smp.y.t, smp.y.theta};
    }
    if (const auto* ba = std::get_if<BoundaryArc>(&arc)) {
      return {ba->level, end ? ba->theta1 : ba->theta0};
    }
    const auto& ca = std::get<ChordArc>(arc);
    return chord_at(ca, end ? ca.length() : 0.0, hat_delta_);
  };
  double defect = 0.0;
  for (size_t i = 0; i + 1 < arcs_.size(); ++i) {
    const Point a = arc_point(arcs_[i], true);
    const Point b = arc_point(arcs_[i + 1], false);
    defect = std::max(defect,
                      std::hypot(a.t - b.t, wrap_angle(a.theta - b.theta)));
  }
  return defect;
}

double GeodesicPath::clairaut_defect() const {
  double d = 0.0;
  for (const auto& arc : arcs_) {
    if (const auto* ia = std::get_if<IntegratedArc>(&arc)) {
      d = std::max(d, ia->clairaut_drift);
    }
  }
  return d;
}

double GeodesicPath::unit_speed_defect(const WarpedMetric& metric) const {
  double d = 0.0;
  for (const auto& arc : arcs_) {
    if (const auto* ia = std::get_if<IntegratedArc>(&arc)) {
      for (const auto& smp : ia->samples) {
        const double phi = metric.phi(smp.y.t);
        d = std::max(d, std::abs(smp.y.v * smp.y.v +
                                 phi * phi * smp.y.w * smp.y.w - 1.0));
      }
    }
  }
  return d;
}

std::vector<std::array<double, 3>> GeodesicPath::sample_rows(int n) const {
  std::vector<std::array<double, 3>> rows;
  rows.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double s = total_length_ * i / n;
    const Point p = at(s);
    rows.push_back({s, p.t, p.theta});
  }
  return rows;
}

PathSample integrate_flow(
    const WarpedMetric& metric, GeodesicState y0, double s_end,
    const IntegrateOptions& options,
    const std::function<bool(double, const GeodesicState&)>& observer) {
  double s = 0.0;
  GeodesicState y = y0;
  double h = std::min(options.max_step, s_end > 0 ? s_end : options.max_step);
  Side side = side_of_motion(metric, y.t, y.v);

  while (s < s_end - 1e-14) {
    h = std::min(h, s_end - s);
    // Do not step across a breakpoint: cap h so the step lands on it.
    std::optional<double> landing_bp;
    if (auto bp = next_breakpoint(metric, y.t, y.v)) {
      const double gap = (*bp - y.t) / (y.v != 0.0 ? y.v : 1e-300);
      if (gap > 0.0 && gap < 1.5 * h) {
        // Newton-refine the landing arclength using trial steps.
        double h_land = std::min(gap, h);
        GeodesicState trial;
        for (int it = 0; it < 8; ++it) {
          dp45_step(metric, y, h_land, side, options.with_jacobi, trial);
          const double miss = trial.t - *bp;
          if (std::abs(miss) < 1e-13) break;
          h_land -= miss / (trial.v != 0.0 ? trial.v : 1e-300);
          h_land = std::max(h_land, 1e-15);
        }
        h = h_land;
        landing_bp = *bp;
      }
    }

    GeodesicState y_new;
    const double err =
        dp45_step(metric, y, h, side, options.with_jacobi, y_new);
    if (err > options.tol && !landing_bp && h > 1e-13) {
      h *= std::max(0.2, 0.9 * std::pow(options.tol / err, 0.2));
      continue;
    }
    s += h;
    y = y_new;
    if (landing_bp) {
      y.t = *landing_bp;
      side = y.v >= 0.0 ? Side::Plus : Side::Minus;
      if (std::abs(y.v) <= options.snap_angle) {
        // Tangential hit: the flow cannot continue through the kink.
        observer(s, y);
        return {s, y};
      }
    } else {
      side = side_of_motion(metric, y.t, y.v);
    }
    if (!observer(s, y)) return {s, y};
    if (std::abs(y.t) > metric.r_max) return {s, y};
    if (err > 0.0) {
      h = std::min(options.max_step,
                   h * std::min(5.0, 0.9 * std::pow(options.tol / err, 0.2)));
    } else {
      h = options.max_step;
    }
  }
  return {s, y};
}

GeodesicPath integrate_geodesic(const WarpedMetric& metric, Point start,
                                double alpha, double length,
                                const IntegrateOptions& options) {
  const double phi0 = metric.phi(start.t);
  GeodesicState y0{start.t, start.theta, std::cos(alpha),
                   std::sin(alpha) / phi0, 0.0, 1.0};

  std::vector<Arc> arcs;
  if (metric.profile.is_breakpoint(start.t)) {
    if (std::abs(y0.v) <= options.snap_angle) {
      // Tangent to the circle: the whole path is a boundary arc.
      const double dir = y0.w >= 0.0 ? 1.0 : -1.0;
      arcs.push_back(BoundaryArc{start.t, start.theta,
                                 start.theta + dir * length / phi0, phi0});
      return GeodesicPath(std::move(arcs), metric.hat_delta);
    }
    if (std::abs(y0.w) * phi0 > 1e-12) {
      throw std::invalid_argument(
          "integrate_geodesic: start on a breakpoint circle requires a "
          "tangent or normal direction");
    }
  }

  const double a0 = phi0 * phi0 * y0.w;  // Clairaut constant
  IntegratedArc arc;
  arc.samples.push_back({0.0, y0});
  bool truncated = false;
  bool snapped = false;

  PathSample last = integrate_flow(
      metric, y0, length, options,
      [&](double s, const GeodesicState& y) {
        arc.samples.push_back({s, y});
        const double phi = metric.phi(y.t);
        if (std::abs(a0) > 1e-14) {
          const double drift = std::abs(phi * phi * y.w - a0) / std::abs(a0);
          arc.clairaut_drift = std::max(arc.clairaut_drift, drift);
        }
        if (metric.profile.is_breakpoint(y.t) &&
            std::abs(y.v) <= options.snap_angle) {
          snapped = true;
          return false;
        }
        return std::abs(y.t) <= metric.r_max;
      });

  const double remaining = length - last.s;
  arcs.push_back(std::move(arc));
  if (snapped && remaining > 1e-14) {
    const double phi = metric.phi(last.y.t);
    const double dir = last.y.w >= 0.0 ? 1.0 : -1.0;
    arcs.push_back(BoundaryArc{last.y.t, last.y.theta,
                               last.y.theta + dir * remaining / phi, phi});
  } else if (!snapped && remaining > 1e-10) {
    truncated = true;
  }
  GeodesicPath path(std::move(arcs), metric.hat_delta);
  path.set_truncated(truncated);
  return path;
}

}  // namespace katosurf
