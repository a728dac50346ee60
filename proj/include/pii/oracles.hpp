#ifndef PII_ORACLES_HPP
#define PII_ORACLES_HPP

// Independent ground truth: Nystrom discretization of the Airy-kernel
// operator on L^2(x, infinity) for determinants, spectra and counting
// probabilities, and direct ODE integration of Painleve II from Airy data.

#include <optional>
#include <vector>

#include "pii/specfun.hpp"

namespace pii {

// Thrown when a doubling study fails to stabilize.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct QuadratureGrid {
  double x_left = 0.0;
  double x_right = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  int n = 0;
};

struct DetResult {
  double log_det = 0.0;
  int n_used = 0;
  bool converged = false;
  double delta_last_doubling = 0.0;
};

struct SpectrumResult {
  std::vector<double> eigs;  // descending
  int n_reliable = 0;        // stable to 1e-9 under node doubling
};

struct OdeSample {
  double x, u, up;
  double i1;  // int_x^{x_start} u^2 dy
  double i2;  // int_x^{x_start} y u^2 dy
};

struct OdeTrajectory {
  std::vector<OdeSample> samples;  // x decreasing; last sample at x_target
  double gamma = 0.0;
  double tol = 0.0;
  std::optional<double> blowup;  // location, if |u| exceeded 1e6

  const OdeSample& final() const { return samples.back(); }
};

// (Ai(l) Ai'(m) - Ai'(l) Ai(m))/(l - m); diagonal limit within 1e-7.
double airy_kernel(double lam, double mu);

// Gauss-Legendre nodes/weights mapped onto (x, max(x+40, 12)).
QuadratureGrid build_grid(double x, int n);

// log det(I - gamma W^{1/2} K W^{1/2}) from the symmetric eigenvalues,
// convergence assessed by one doubling of n (so n must be <= 200).
DetResult fredholm_det(double x, double gamma, int n);

SpectrumResult kernel_spectrum(double x, int n);

// Integrate u'' = x u + 2 u^3 backward from x = 8 with u = sqrt(gamma) Ai.
// Blow-up (singular branch) is reported, not thrown.
OdeTrajectory ode_solve_pii(double gamma, double x_target, double tol);

struct UFromDet {
  double u = 0.0;               // sign convention -eps = +1 (AS family)
  double error_estimate = 0.0;  // from the Richardson pair
};

// u recovered from -d^2/dx^2 ln det via a 5-point stencil with one
// Richardson halving; h is the base step, n the Nystrom size per stencil
// point.
UFromDet u_from_det(double x, double gamma, double h = 5e-3, int n = 160);

// ln det from the ODE trajectory: -int_x^inf (y-x) u^2 dy with an analytic
// Airy tail beyond the starting point.
double det_from_ode(double x, double gamma, double tol = 1e-12);

// E_k(x) from the spectrum via elementary symmetric functions.
double gap_count_prob(double x, int kcount, int n);

}  // namespace pii

#endif
