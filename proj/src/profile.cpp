#include "katosurf/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace katosurf {

RadialFunction::RadialFunction(std::vector<RadialPiece> pieces,
                               std::vector<Breakpoint> breakpoints)
    : pieces_(std::move(pieces)), breakpoints_(std::move(breakpoints)) {
  if (pieces_.empty()) {
    throw std::invalid_argument("RadialFunction: no pieces");
  }
  for (size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].lo != pieces_[i - 1].hi) {
      throw std::invalid_argument("RadialFunction: pieces not contiguous");
    }
  }
}

int RadialFunction::piece_index(double t, Side side) const {
  const int n = static_cast<int>(pieces_.size());
  for (int i = 0; i < n; ++i) {
    if (t < pieces_[i].hi) {
      if (t == pieces_[i].lo && side == Side::Minus && i > 0) return i - 1;
      return i;
    }
  }
  return n - 1;
}

double RadialFunction::value(double t) const {
  return pieces_[piece_index(t, Side::Plus)].value(t);
}

double RadialFunction::deriv(double t, Side side) const {
  for (const auto& bp : breakpoints_) {
    if (std::abs(t - bp.t) <= 1e-12) {
      return side == Side::Minus ? bp.deriv_minus : bp.deriv_plus;
    }
  }
  return pieces_[piece_index(t, side)].deriv(t);
}

double RadialFunction::deriv2(double t) const {
  if (is_breakpoint(t)) {
    throw std::domain_error(
        "RadialFunction::deriv2: second derivative undefined at a "
        "breakpoint; use the singular part");
  }
  return pieces_[piece_index(t, Side::Plus)].deriv2(t);
}

bool RadialFunction::is_breakpoint(double t, double tol) const {
  for (const auto& bp : breakpoints_) {
    if (std::abs(t - bp.t) <= tol) return true;
  }
  return false;
}

ProfileCurve::ProfileCurve(RadialFunction fn, std::string name)
    : fn_(std::move(fn)), name_(std::move(name)) {}

void ProfileCurve::validate(double t_lo, double t_hi, int samples) const {
  for (int i = 0; i <= samples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / samples;
    if (!(fn_.value(t) > 0.0)) {
      throw std::invalid_argument("ProfileCurve '" + name_ +
                                  "': not positive at t=" + std::to_string(t));
    }
  }
  // Second-order one-sided stencils reach the 1e-8 relative agreement the
  // declared derivatives promise.
  const double h = 1e-5;
  for (const auto& bp : fn_.breakpoints()) {
    const double gap =
        std::abs(fn_.value(bp.t - 1e-13) - fn_.value(bp.t + 1e-13));
    if (gap > 1e-12) {
      throw std::invalid_argument("ProfileCurve '" + name_ +
                                  "': discontinuous at a breakpoint");
    }
    const double f0 = fn_.value(bp.t);
    const double fd_plus = (-3.0 * f0 + 4.0 * fn_.value(bp.t + h) -
                            fn_.value(bp.t + 2.0 * h)) /
                           (2.0 * h);
    const double fd_minus = (3.0 * f0 - 4.0 * fn_.value(bp.t - h) +
                             fn_.value(bp.t - 2.0 * h)) /
                            (2.0 * h);
    const double scale = std::max({1.0, std::abs(bp.deriv_minus),
                                   std::abs(bp.deriv_plus)});
    if (std::abs(fd_minus - bp.deriv_minus) / scale > 1e-8 ||
        std::abs(fd_plus - bp.deriv_plus) / scale > 1e-8) {
      throw std::invalid_argument(
          "ProfileCurve '" + name_ +
          "': declared one-sided derivatives disagree with the pieces");
    }
  }
}

double ProfileCurve::max_value(double t_lo, double t_hi, int samples) const {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    m = std::max(m, fn_.value(t_lo + (t_hi - t_lo) * i / samples));
  }
  return m;
}

double ProfileCurve::min_value(double t_lo, double t_hi, int samples) const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    m = std::min(m, fn_.value(t_lo + (t_hi - t_lo) * i / samples));
  }
  return m;
}

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ProfileCurve hat_profile(double delta) {
  std::vector<RadialPiece> pieces = {
      {-kInf, 0.0, [delta](double t) { return delta * (1.0 - t); },
       [delta](double) { return -delta; }, [](double) { return 0.0; }},
      {0.0, kInf, [delta](double t) { return delta * (1.0 + t); },
       [delta](double) { return delta; }, [](double) { return 0.0; }},
  };
  std::vector<Breakpoint> bps = {{0.0, -delta, delta}};
  return ProfileCurve(RadialFunction(std::move(pieces), std::move(bps)),
                      "hat");
}

ProfileCurve base_profile() {
  auto v = [](double r) { return std::sqrt(1.0 + r * r); };
  auto d = [](double r) { return r / std::sqrt(1.0 + r * r); };
  auto d2 = [](double r) { return std::pow(1.0 + r * r, -1.5); };
  std::vector<RadialPiece> pieces = {{-kInf, kInf, v, d, d2}};
  return ProfileCurve(RadialFunction(std::move(pieces), {}), "base");
}

ProfileCurve flat_profile(double c) {
  std::vector<RadialPiece> pieces = {{-kInf, kInf,
                                      [c](double) { return c; },
                                      [](double) { return 0.0; },
                                      [](double) { return 0.0; }}};
  return ProfileCurve(RadialFunction(std::move(pieces), {}), "flat");
}

ProfileCurve glued_spheres_profile(double r0) {
  if (!(r0 > 0.0 && r0 < kPi / 2)) {
    throw std::invalid_argument("glued_spheres_profile: need 0 < r0 < pi/2");
  }
  std::vector<RadialPiece> pieces = {
      {-kInf, 0.0, [r0](double t) { return std::sin(r0 - t); },
       [r0](double t) { return -std::cos(r0 - t); },
       [r0](double t) { return -std::sin(r0 - t); }},
      {0.0, kInf, [r0](double t) { return std::sin(r0 + t); },
       [r0](double t) { return std::cos(r0 + t); },
       [r0](double t) { return -std::sin(r0 + t); }},
  };
  std::vector<Breakpoint> bps = {{0.0, -std::cos(r0), std::cos(r0)}};
  return ProfileCurve(RadialFunction(std::move(pieces), std::move(bps)),
                      "glued-spheres");
}

ProfileCurve hyperbolic_profile() {
  std::vector<RadialPiece> pieces = {
      {-kInf, kInf, [](double t) { return std::cosh(t); },
       [](double t) { return std::sinh(t); },
       [](double t) { return std::cosh(t); }}};
  return ProfileCurve(RadialFunction(std::move(pieces), {}), "hyperbolic");
}

ProfileCurve spline_profile(const Eigen::ArrayXd& t, const Eigen::ArrayXd& phi,
                            std::string name) {
  auto spline = std::make_shared<CubicSpline>(t, phi);
  std::vector<RadialPiece> pieces = {
      {t(0), t(t.size() - 1),
       [spline](double x) { return spline->value(x); },
       [spline](double x) { return spline->deriv(x); },
       [spline](double x) { return spline->deriv2(x); }}};
  return ProfileCurve(RadialFunction(std::move(pieces), {}), std::move(name));
}

RadialFunction paper_factor_function(double r_max) {
  auto v = [](double r) {
    const double a = std::abs(r);
    return std::log(1.0 + a / std::sqrt(1.0 + a * a));
  };
  // f(r) = argsinh(|r|) - log sqrt(1+r^2); on r > 0,
  // f'(r) = 1/sqrt(1+r^2) - r/(1+r^2).
  auto d_pos = [](double r) {
    return 1.0 / std::sqrt(1.0 + r * r) - r / (1.0 + r * r);
  };
  auto d2_pos = [](double r) {
    const double q = 1.0 + r * r;
    return -r / (q * std::sqrt(q)) - (1.0 - r * r) / (q * q);
  };
  std::vector<RadialPiece> pieces = {
      {-r_max, 0.0, v, [d_pos](double r) { return -d_pos(-r); },
       [d2_pos](double r) { return d2_pos(-r); }},
      {0.0, r_max, v, d_pos, d2_pos},
  };
  std::vector<Breakpoint> bps = {{0.0, -1.0, 1.0}};
  return RadialFunction(std::move(pieces), std::move(bps));
}

}  // namespace katosurf
