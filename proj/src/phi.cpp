#include "rcpolar/phi.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rcpolar {
namespace {

constexpr double kPi = 3.14159265358979323846;

double integrand(double s, double rx) { return std::exp(-s * s) / std::cosh(rx * s); }

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(double a, double b, double fa, double fm, double fb, double whole, double rx,
                double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = integrand(lm, rx), frm = integrand(rm, rx);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive(a, m, fa, flm, fm, left, rx, 0.5 * tol, depth - 1) +
         adaptive(m, b, fm, frm, fb, right, rx, 0.5 * tol, depth - 1);
}

// A(x) = (2/sqrt(pi)) Int_0^8 exp(-s^2)/cosh(sqrt(x) s) ds  (tail < 1e-28)
double quad_a(double x) {
  double rx = std::sqrt(x);
  // geometric breakpoints resolve the 1/sqrt(x) boundary layer of sech
  double inner = std::min(1.0, 1.0 / std::max(rx, 1.0)) * 0.25;
  std::vector<double> pts{0.0};
  for (double c = inner; c < 8.0; c *= 2.0) pts.push_back(c);
  pts.push_back(8.0);
  double total = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); i++) {
    double a = pts[i], b = pts[i + 1];
    double fa = integrand(a, rx), fb = integrand(b, rx);
    double fm = integrand(0.5 * (a + b), rx);
    double whole = simpson(a, b, fa, fm, fb);
    total += adaptive(a, b, fa, fm, fb, whole, rx, 1e-15 + 1e-14 * std::abs(whole), 48);
  }
  return total * 2.0 / std::sqrt(kPi);
}

// log A below/above the grid; tail from A(x) ~ sqrt(pi/x)(1 - (pi^2/4)/x + ...)
double log_a_small(double x) { return std::log1p(-x / 4.0); }  // A ~ 1 - x/4
double log_a_large(double x) {
  return 0.5 * std::log(kPi / x) + std::log1p(-kPi * kPi / (4.0 * x));
}

struct PhiTable {
  static constexpr double kXMin = 1e-6;
  static constexpr double kXMax = 1e5;
  static constexpr int kPoints = 4096;

  std::vector<double> lx, la, slope;  // PCHIP data on (ln x, log A)
  std::vector<double> lphi_node;      // log phi at grid nodes, for inverse bracketing

  PhiTable() {
    lx.resize(kPoints);
    la.resize(kPoints);
    double t0 = std::log(kXMin), t1 = std::log(kXMax);
    for (int i = 0; i < kPoints; i++) {
      lx[i] = t0 + (t1 - t0) * i / (kPoints - 1);
      la[i] = phi_quadrature_log_a(std::exp(lx[i]));
    }
    build_pchip();
    lphi_node.resize(kPoints);
    for (int i = 0; i < kPoints; i++) lphi_node[i] = -std::exp(lx[i]) / 4.0 + la[i];
  }

  // Fritsch-Carlson monotone cubic slopes
  void build_pchip() {
    int n = kPoints;
    std::vector<double> h(n - 1), d(n - 1);
    for (int i = 0; i < n - 1; i++) {
      h[i] = lx[i + 1] - lx[i];
      d[i] = (la[i + 1] - la[i]) / h[i];
    }
    slope.assign(n, 0.0);
    slope[0] = d[0];
    slope[n - 1] = d[n - 2];
    for (int i = 1; i < n - 1; i++) {
      if (d[i - 1] * d[i] <= 0.0) {
        slope[i] = 0.0;
      } else {
        double w1 = 2.0 * h[i] + h[i - 1];
        double w2 = h[i] + 2.0 * h[i - 1];
        slope[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
      }
    }
  }

  double eval_log_a(double x) const {
    double t = std::log(x);
    int i = int(std::upper_bound(lx.begin(), lx.end(), t) - lx.begin()) - 1;
    i = std::clamp(i, 0, kPoints - 2);
    double h = lx[i + 1] - lx[i], s = (t - lx[i]) / h;
    double y0 = la[i], y1 = la[i + 1], m0 = slope[i] * h, m1 = slope[i + 1] * h;
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * m1;
  }

  double log_phi(double x) const {
    if (x <= 0.0) return 0.0;
    if (x < kXMin) return -x / 4.0 + log_a_small(x);
    if (x > kXMax) return -x / 4.0 + log_a_large(x);
    return -x / 4.0 + eval_log_a(x);
  }

  // strictly decreasing, so plain bisection on the bracket
  double inv_log(double ly) const {
    if (ly >= 0.0) return 0.0;
    double lo, hi;
    if (ly > lphi_node.front()) {
      lo = 0.0;
      hi = kXMin;
    } else if (ly < lphi_node.back()) {
      lo = kXMax;
      hi = kXMax * 2.0;
      while (log_phi(hi) > ly) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) break;
      }
    } else {
      int i = int(std::lower_bound(lphi_node.begin(), lphi_node.end(), ly,
                                   [](double node, double v) { return node > v; }) -
                  lphi_node.begin());
      i = std::clamp(i, 1, kPoints - 1);
      lo = std::exp(lx[i - 1]);
      hi = std::exp(lx[i]);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-9; it++) {
      double mid = 0.5 * (lo + hi);
      if (log_phi(mid) > ly)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }
};

const PhiTable& table() {
  static const PhiTable t;
  return t;
}

}  // namespace

double phi_quadrature_log_a(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 1e-8) return log_a_small(x);
  return std::log(quad_a(x));
}

double phi(double x) {
  if (x < 0.0) throw std::invalid_argument("phi: negative input");
  return std::exp(table().log_phi(x));
}

double log_phi(double x) {
  if (x < 0.0) throw std::invalid_argument("phi: negative input");
  return table().log_phi(x);
}

double phi_inv(double y) {
  if (!(y > 0.0) || y > 1.0) throw std::invalid_argument("phi_inv: y outside (0,1]");
  return table().inv_log(std::log(y));
}

double phi_inv_log(double ly) {
  if (ly > 0.0) throw std::invalid_argument("phi_inv_log: positive log target");
  return table().inv_log(ly);
}

}  // namespace rcpolar
