#pragma once

#include "katosurf/surface.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace katosurf {

/// State along a geodesic: position, coordinate velocities (v = dt/ds,
/// w = dtheta/ds), and optionally a Jacobi field (J, J') for spreading.
struct GeodesicState {
  double t = 0.0;
  double theta = 0.0;
  double v = 0.0;
  double w = 0.0;
  double jacobi = 0.0;
  double djacobi = 0.0;
};

struct PathSample {
  double s;  // arclength
  GeodesicState y;
};

/// Numerically integrated geodesic arc (adaptive RK samples).
struct IntegratedArc {
  std::vector<PathSample> samples;
  double clairaut_drift = 0.0;  // max relative drift of phi^2 * theta'
};

/// Arc running along a circle {t = level} (a seam geodesic). theta is
/// unwrapped; positive span means increasing theta.
struct BoundaryArc {
  double level = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;
  double phi = 1.0;  // profile value on the circle
  double length() const { return std::abs(theta1 - theta0) * phi; }
};

/// Straight segment in the planar chart of one sheet of the hat surface.
/// th0/th1 are the unwrapped surface angles of the endpoints, kept for
/// mapping interior points back to (t, theta) without branch ambiguity.
struct ChordArc {
  int sheet = +1;  // +1 for t >= 0, -1 for t <= 0
  Eigen::Vector2d p0, p1;
  double th0 = 0.0, th1 = 0.0;
  double length() const { return (p1 - p0).norm(); }
};

using Arc = std::variant<IntegratedArc, BoundaryArc, ChordArc>;

/// Unit-speed path on a warped surface as a sequence of arcs.
class GeodesicPath {
 public:
  GeodesicPath() = default;
  GeodesicPath(std::vector<Arc> arcs, double hat_delta = 1.0);

  const std::vector<Arc>& arcs() const { return arcs_; }
  double total_length() const { return total_length_; }
  bool truncated() const { return truncated_; }
  void set_truncated(bool f) { truncated_ = f; }

  /// Point at arclength s (clamped to [0, total_length]).
  Point at(double s) const;
  Point start() const { return at(0.0); }
  Point end() const { return at(total_length_); }

  /// Largest gap between consecutive arc endpoints (chart distance).
  double endpoint_defect() const;
  /// Largest Clairaut drift over the integrated arcs.
  double clairaut_defect() const;
  /// Largest |v^2 + phi^2 w^2 - 1| over integrated arc samples.
  double unit_speed_defect(const WarpedMetric& metric) const;

  /// Uniform resample of (s, t, theta) rows, for export.
  std::vector<std::array<double, 3>> sample_rows(int n = 400) const;

 private:
  std::vector<Arc> arcs_;
  double total_length_ = 0.0;
  double hat_delta_ = 1.0;
  bool truncated_ = false;
};

struct IntegrateOptions {
  double tol = 1e-10;       // local error target per step
  double max_step = 0.02;   // also bounds the sample spacing
  double snap_angle = 1e-7; // |v| below this at a seam hit: follow the seam
  bool with_jacobi = false;
};

/// Integrates the geodesic from `start` with initial direction given as the
/// angle alpha from the meridian (+t) axis toward +theta, for the given
/// arclength. Crossing a breakpoint circle transversally continues with the
/// same tangent; a tangential hit is snapped to a boundary arc. Leaving the
/// truncated domain stops integration with the truncated flag set.
GeodesicPath integrate_geodesic(const WarpedMetric& metric, Point start,
                                double alpha, double length,
                                const IntegrateOptions& options = {});

/// Low-level observer-driven integration used by the shooting solver and
/// the fan builder. The observer sees every accepted step (s, state) and
/// returns false to stop. Returns the final (s, state).
PathSample integrate_flow(const WarpedMetric& metric, GeodesicState y0,
                          double s_end, const IntegrateOptions& options,
                          const std::function<bool(double s,
                                                   const GeodesicState&)>& observer);

}  // namespace katosurf
