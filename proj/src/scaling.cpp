#include "pii/scaling.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>

namespace pii {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

// -----------------------------------------------------------------------
// ScalePoint

ScalePoint ScalePoint::from_x_gamma(double x, double gamma, int eps) {
  if (!(x < 0.0)) throw std::domain_error("ScalePoint: x must be negative");
  if (!(gamma > 0.0) || gamma == 1.0 || gamma >= 2.0)
    throw std::domain_error(
        "ScalePoint: gamma must lie in (0,1) or (1,2); v diverges at 1");
  if (eps != 1 && eps != -1) throw std::domain_error("ScalePoint: eps must be +-1");
  ScalePoint p;
  p.x = x;
  p.t = std::pow(-x, 1.5);
  p.v = -std::log(std::fabs(1.0 - gamma));
  p.kappa = p.v / p.t;
  p.sigma = kSeparatrixKappa - p.kappa;
  p.eps = eps;
  p.branch = gamma < 1.0 ? Branch::Regular : Branch::Singular;
  return p;
}

ScalePoint ScalePoint::from_t_v(double t, double v, Branch branch, int eps) {
  if (!(t > 0.0) || !(v > 0.0))
    throw std::domain_error("ScalePoint: t and v must be positive");
  if (eps != 1 && eps != -1) throw std::domain_error("ScalePoint: eps must be +-1");
  ScalePoint p;
  p.t = t;
  p.x = -std::pow(t, 2.0 / 3.0);
  p.v = v;
  p.kappa = v / t;
  p.sigma = kSeparatrixKappa - p.kappa;
  p.eps = eps;
  p.branch = branch;
  return p;
}

double ScalePoint::gamma() const {
  double e = std::exp(-v);
  return branch == Branch::Regular ? 1.0 - e : 1.0 + e;
}

// -----------------------------------------------------------------------
// Stokes triple

double check_cyclic(const StokesTriple& s) {
  return std::abs(s.s1 - s.s2 + s.s3 + s.s1 * s.s2 * s.s3);
}

std::complex<double> solve_s2(std::complex<double> s1, std::complex<double> s3) {
  return (s1 + s3) / (1.0 - s1 * s3);
}

// -----------------------------------------------------------------------
// Modulus equation

double kappa_of_k(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("kappa_of_k: modulus outside (0,1)");
  EllipticQuad q = EllipticQuad::at(k);
  double k2 = k * k;
  return (2.0 / 3.0) * std::sqrt(2.0 / (1.0 + k2)) *
         (q.bigEprime - 2.0 * k2 / (1.0 + k2) * q.bigKprime);
}

double kappa_of_k_deriv(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("kappa_of_k_deriv: modulus outside (0,1)");
  EllipticQuad q = EllipticQuad::at(k);
  double k2 = k * k;
  double kp2 = 1.0 - k2;
  double Ep = q.bigEprime, Kp = q.bigKprime;
  double B = Ep - 2.0 * k2 / (1.0 + k2) * Kp;
  double dEp = -k * (Ep - Kp) / kp2;
  double dKp = -(Ep - k2 * Kp) / (k * kp2);
  double dB = dEp - 4.0 * k / ((1.0 + k2) * (1.0 + k2)) * Kp -
              2.0 * k2 / (1.0 + k2) * dKp;
  double c = 2.0 / 3.0 * std::sqrt(2.0);
  return c * (-k * std::pow(1.0 + k2, -1.5) * B +
              std::pow(1.0 + k2, -0.5) * dB);
}

double solve_modulus(double kappa) {
  if (!(kappa > 0.0) || !(kappa < kSeparatrixKappa - 1e-14))
    throw std::range_error("solve_modulus: kappa outside (0, 2 sqrt(2)/3)");
  double sigma = kSeparatrixKappa - kappa;
  // Printed endpoint expansions where the integral becomes ill-conditioned.
  if (kappa < 1e-10) {
    double r = std::sqrt(kappa / kPi);
    return 1.0 - 2.0 * r + 2.0 * kappa / kPi - 29.0 / 8.0 * r * r * r;
  }
  if (sigma < 1e-12) {
    double ls = std::log(sigma);
    double lls = std::log(-ls);
    return std::sqrt(std::sqrt(2.0) * sigma / -ls) *
           (1.0 + lls / (2.0 * ls) + (2.0 + 7.0 * std::log(2.0)) / (4.0 * ls));
  }

  double lo = 1e-12, hi = 1.0 - 1e-12;
  // kappa_of_k is strictly decreasing: kappa_of_k(lo) ~ 2 sqrt(2)/3.
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    if (kappa_of_k(mid) > kappa)
      lo = mid;
    else
      hi = mid;
  }
  double k = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double f = kappa_of_k(k) - kappa;
    double df = kappa_of_k_deriv(k);
    double step = f / df;
    double kn = k - step;
    if (!(kn > lo) || !(kn < hi)) kn = 0.5 * (lo + hi);
    if (kappa_of_k(kn) > kappa)
      lo = kn;
    else
      hi = kn;
    if (std::fabs(kn - k) < 1e-15 * (1.0 + kn)) {
      k = kn;
      break;
    }
    k = kn;
  }
  return k;
}

double compute_ell(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("compute_ell: modulus outside (0,1)");
  double s2 = std::sqrt(2.0 * (1.0 + k * k));
  double m = k / s2, M = 1.0 / s2;
  double r2 = (m / M) * (m / M);
  // Tail substitution mu = M/s maps (M, inf) to (0, 1]; the integrand
  // rearranges without cancellation using m^2 + M^2 = 1/2:
  //   G(s) = M [ (m^2 s^2/(4M^2) - 1/(8M^2)) / (1+sqrt(A)) + m^2 ] / (1+sqrt(A)),
  //   A = (1-s^2)(1-(m/M)^2 s^2).
  auto G = [&](double s) {
    double A = (1.0 - s * s) * (1.0 - r2 * s * s);
    double sq = std::sqrt(A);
    double inner = (m * m * s * s / (4.0 * M * M) - 1.0 / (8.0 * M * M)) / (1.0 + sq) +
                   m * m;
    return M * inner / (1.0 + sq);
  };
  boost::math::quadrature::tanh_sinh<double> integ;
  double err = 0.0;
  double I = integ.integrate(G, 0.0, 1.0, 1e-13, &err);
  if (err > 1e-9 * (1.0 + std::fabs(I)))
    throw std::runtime_error("compute_ell: quadrature did not converge");
  double theta_term = 4.0 * M * M * M / 3.0 - M;  // Im theta(M)
  return -theta_term + 4.0 * I;
}

ModulusData modulus_data(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("modulus_data: modulus outside (0,1)");
  ModulusData d;
  d.k = k;
  d.quad = EllipticQuad::at(k);
  double s2 = std::sqrt(2.0 * (1.0 + k * k));
  d.m = k / s2;
  d.M = 1.0 / s2;
  double k2 = k * k;
  d.V = -(2.0 / (3.0 * kPi)) * std::sqrt(2.0 / (1.0 + k2)) *
        (d.quad.bigE - (1.0 - k2) / (1.0 + k2) * d.quad.bigK);
  d.tau_im = 2.0 * d.quad.bigK / d.quad.bigKprime;
  d.tau_prime_im = d.quad.bigKprime / (2.0 * d.quad.bigK);
  d.nome = ThetaNome::from_tau_im(d.tau_im);
  d.landen = (1.0 - k) / (1.0 + k);
  d.ell_im = compute_ell(k);
  return d;
}

// -----------------------------------------------------------------------
// Regime classifier

RegimeLabel classify_regime(double t, double v, const RegimeParams& p) {
  if (!(t > 0.0) || !(v > 0.0))
    throw std::domain_error("classify_regime: t and v must be positive");
  double kappa = v / t;
  double line = kSeparatrixKappa * t;
  double lnt = std::log(std::max(t, 1.0 + 1e-12));

  RegimeLabel lab;
  lab.dist_separating = v - line;

  // Nearest Stokes line v = line - (6j+1)/6 ln t, j >= 0.
  double drop = (line - v) / lnt;             // ln t multiples below the line
  double jstar = std::nearbyint((6.0 * drop - 1.0) / 6.0);
  if (jstar < 0.0) jstar = 0.0;
  lab.dist_stokes = v - (line - (6.0 * jstar + 1.0) / 6.0 * lnt);

  if (kappa > kSeparatrixKappa) {
    lab.tag = RegimeLabel::Tag::AboveLine;
  } else if (v >= line - p.f2) {
    lab.tag = RegimeLabel::Tag::HastingsMcLeod;
  } else if (kappa <= kSeparatrixKappa - p.delta) {
    lab.tag = RegimeLabel::Tag::Boutroux;
  } else {
    lab.tag = RegimeLabel::Tag::StokesRegion;
    // Deepest crossed line: largest j with v <= line - (6j+1)/6 ln t.
    double jf = std::floor((6.0 * drop - 1.0) / 6.0);
    lab.stokes_coeff = jf >= 0.0 ? (6.0 * jf + 1.0) / 6.0 : 0.0;
  }
  return lab;
}

// -----------------------------------------------------------------------
// Printed expansions

Expansions expansions(double kappa) {
  Expansions e;
  double r = std::sqrt(kappa / kPi);
  e.k_small_kappa = 1.0 - 2.0 * r + 2.0 * kappa / kPi - 29.0 / 8.0 * r * r * r;
  e.V_small_kappa = -2.0 / (3.0 * kPi) - kappa / (2.0 * kPi * kPi) * std::log(kappa) +
                    kappa / (2.0 * kPi * kPi) * (1.0 + std::log(16.0 * kPi));
  double sigma = kSeparatrixKappa - kappa;
  if (sigma > 0.0 && sigma < 1.0) {
    double ls = std::log(sigma);       // negative
    double lls = std::log(-ls);
    double l2 = std::log(2.0);
    e.k_near_line = std::sqrt(std::sqrt(2.0) * sigma / -ls) *
                    (1.0 + lls / (2.0 * ls) + (2.0 + 7.0 * l2) / (4.0 * ls));
    e.V_near_line = -(sigma / -ls) * (1.0 + lls / ls + (2.0 + 7.0 * l2) / (2.0 * ls));
    e.tau_prime_im_near_line = (-ls / (2.0 * kPi)) *
        (1.0 - lls / ls - 7.0 * l2 / (2.0 * ls) + lls / (ls * ls));
  } else {
    e.k_near_line = std::numeric_limits<double>::quiet_NaN();
    e.V_near_line = std::numeric_limits<double>::quiet_NaN();
    e.tau_prime_im_near_line = std::numeric_limits<double>::quiet_NaN();
  }
  return e;
}

}  // namespace pii
