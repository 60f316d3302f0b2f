#include "katosurf/math_util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace katosurf {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double b, double fb, double m, double fm,
                        double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                          depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                          depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b);
  const double m = 0.5 * (a + b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

void solve_tridiagonal(const Eigen::ArrayXd& lower, Eigen::ArrayXd diag,
                       const Eigen::ArrayXd& upper, Eigen::ArrayXd& rhs) {
  const Eigen::Index n = diag.size();
  for (Eigen::Index i = 1; i < n; ++i) {
    const double w = lower(i) / diag(i - 1);
    diag(i) -= w * upper(i - 1);
    rhs(i) -= w * rhs(i - 1);
  }
  rhs(n - 1) /= diag(n - 1);
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    rhs(i) = (rhs(i) - upper(i) * rhs(i + 1)) / diag(i);
  }
}

CubicSpline::CubicSpline(Eigen::ArrayXd x, Eigen::ArrayXd y)
    : x_(std::move(x)), y_(std::move(y)) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("CubicSpline: need >= 2 matching knots");
  }
  m_ = Eigen::ArrayXd::Zero(n);
  if (n == 2) return;

  // Natural spline: solve for interior second derivatives.
  Eigen::ArrayXd lower = Eigen::ArrayXd::Zero(n - 2);
  Eigen::ArrayXd diag(n - 2), upper = Eigen::ArrayXd::Zero(n - 2);
  Eigen::ArrayXd rhs(n - 2);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double h0 = x_(i) - x_(i - 1);
    const double h1 = x_(i + 1) - x_(i);
    if (i > 1) lower(i - 1) = h0;
    diag(i - 1) = 2.0 * (h0 + h1);
    if (i + 2 < n) upper(i - 1) = h1;
    rhs(i - 1) =
        6.0 * ((y_(i + 1) - y_(i)) / h1 - (y_(i) - y_(i - 1)) / h0);
  }
  solve_tridiagonal(lower, diag, upper, rhs);
  for (Eigen::Index i = 1; i + 1 < n; ++i) m_(i) = rhs(i - 1);
}

int CubicSpline::segment(double x) const {
  const Eigen::Index n = x_.size();
  if (x <= x_(0)) return 0;
  if (x >= x_(n - 1)) return static_cast<int>(n) - 2;
  const double* begin = x_.data();
  const double* it = std::upper_bound(begin, begin + n, x);
  return static_cast<int>(it - begin) - 1;
}

double CubicSpline::value(double x) const {
  const int i = segment(x);
  const double h = x_(i + 1) - x_(i);
  const double a = (x_(i + 1) - x) / h, b = (x - x_(i)) / h;
  return a * y_(i) + b * y_(i + 1) +
         ((a * a * a - a) * m_(i) + (b * b * b - b) * m_(i + 1)) * h * h /
             6.0;
}

double CubicSpline::deriv(double x) const {
  const int i = segment(x);
  const double h = x_(i + 1) - x_(i);
  const double a = (x_(i + 1) - x) / h, b = (x - x_(i)) / h;
  return (y_(i + 1) - y_(i)) / h +
         ((3.0 * b * b - 1.0) * m_(i + 1) - (3.0 * a * a - 1.0) * m_(i)) * h /
             6.0;
}

double CubicSpline::deriv2(double x) const {
  const int i = segment(x);
  const double h = x_(i + 1) - x_(i);
  const double a = (x_(i + 1) - x) / h, b = (x - x_(i)) / h;
  return a * m_(i) + b * m_(i + 1);
}

double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, int iterations) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

SqrtLinearFit fit_sqrt_linear(const Eigen::ArrayXd& t,
                              const Eigen::ArrayXd& y) {
  const Eigen::Index n = t.size();
  Eigen::MatrixXd M(n, 2);
  M.col(0) = t.sqrt().matrix();
  M.col(1) = t.matrix();

  auto solve_clamped = [&](bool use_a, bool use_b) -> Eigen::Vector2d {
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    if (use_a && use_b) {
      c = M.colPivHouseholderQr().solve(y.matrix());
    } else if (use_a) {
      c(0) = M.col(0).dot(y.matrix()) / M.col(0).squaredNorm();
    } else if (use_b) {
      c(1) = M.col(1).dot(y.matrix()) / M.col(1).squaredNorm();
    }
    return c;
  };

  Eigen::Vector2d best = Eigen::Vector2d::Zero();
  double best_res = std::numeric_limits<double>::infinity();
  const bool choices[4][2] = {
      {true, true}, {true, false}, {false, true}, {false, false}};
  for (auto& ch : choices) {
    Eigen::Vector2d c = solve_clamped(ch[0], ch[1]);
    if (c(0) < 0.0 || c(1) < 0.0) continue;
    const double res = (M * c - y.matrix()).norm();
    if (res < best_res) {
      best_res = res;
      best = c;
    }
  }

  SqrtLinearFit fit;
  fit.a = best(0);
  fit.b = best(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pred = fit.eval(t(i));
    const double scale = std::max(std::abs(y(i)), 1e-300);
    fit.max_rel_residual =
        std::max(fit.max_rel_residual, std::abs(pred - y(i)) / scale);
  }
  return fit;
}

double relative_spread(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  const double med = (n % 2) ? sorted[n / 2]
                             : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  if (med == 0.0) return 0.0;
  double spread = 0.0;
  for (double v : values) {
    spread = std::max(spread, std::abs(v - med) / std::abs(med));
  }
  return spread;
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double tol, int max_iter) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) {
    throw std::invalid_argument("brent_root: interval does not bracket");
  }
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

}  // namespace katosurf
