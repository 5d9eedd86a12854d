#pragma once
#include <stdexcept>

namespace rcpolar {

// Gaussian-approximation mean transform
//   phi(x) = 1 - (4*pi*x)^(-1/2) * Int tanh(u/2) exp(-(u-x)^2/(4x)) du
// evaluated through the equivalent form phi(x) = exp(-x/4) * A(x) with
//   A(x) = (2/sqrt(pi)) * Int_0^inf exp(-s^2) / cosh(sqrt(x)*s) ds,
// which keeps log(phi) computable for all x (phi itself underflows
// around x ~ 2830). A(x) is evaluated by adaptive quadrature once per
// node of a log-spaced grid and interpolated monotonically after that.

double phi(double x);          // x >= 0; strictly decreasing, phi(0) = 1
double log_phi(double x);      // finite for all finite x >= 0
double phi_inv(double y);      // y in (0,1]; bracketing search, 1e-9 abs
double phi_inv_log(double ly); // same inverse, target given as log(y) <= 0

// direct quadrature of log A(x), no table; used to build the grid and by tests
double phi_quadrature_log_a(double x);

}  // namespace rcpolar
