#pragma once

#include "katosurf/geodesic.hpp"

namespace katosurf {

/// Shortest-path data in the plane outside the open unit disk between
/// points at radii rp, rq >= 1 with angular separation dpsi in [0, pi]
/// (chart angle, i.e. already scaled by the cone factor for delta != 1).
struct TautResult {
  double length = 0.0;
  bool chord = false;       // straight segment clears the disk
  double tangent_p = 0.0;   // tangent segment lengths
  double tangent_q = 0.0;
  double arc_angle = 0.0;   // boundary arc swept, 0 for chords
};

/// Core taut-string computation: chord when the segment misses the open
/// unit disk, otherwise tangent + boundary arc + tangent.
TautResult taut_exterior_disk(double rp, double rq, double dpsi);

/// Planar-point interface. Throws std::domain_error when an input lies in
/// the open unit disk.
TautResult taut_distance_exterior_disk(const Eigen::Vector2d& p,
                                       const Eigen::Vector2d& q);

/// Chart embedding of a point of the hat surface into its sheet's plane:
/// radius 1 + |t|, angle delta * theta.
Eigen::Vector2d hat_chart_point(const WarpedMetric& hat, Point p);

/// Distance on the hat surface (either sheet, seam crossings handled by
/// minimizing over the crossing circle). Exact up to the 1D minimization
/// in the opposite-sheet case.
double hat_distance(const WarpedMetric& hat, Point p, Point q);

/// Minimizing path realizing hat_distance, as chord/boundary arcs.
GeodesicPath hat_minimizing_path(const WarpedMetric& hat, Point p, Point q);

}  // namespace katosurf
