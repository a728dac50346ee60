#ifndef PII_SCALING_HPP
#define PII_SCALING_HPP

// Double-scaling coordinates, the transcendental modulus equation with its
// endpoint expansions, the modulus-derived record (m, M, V, tau, nome, l),
// Stokes-triple bookkeeping and the transition-diagram classifier.

#include <complex>

#include "pii/specfun.hpp"

namespace pii {

// kappa at the separating line, 2*sqrt(2)/3.
inline constexpr double kSeparatrixKappa = 0.9428090415820633658677924828;

struct ScalePoint {
  enum class Branch { Regular, Singular };

  double x = 0.0;      // < 0
  double t = 0.0;      // (-x)^{3/2}
  double v = 0.0;      // -ln|1 - |s1|^2| > 0
  double kappa = 0.0;  // v/t
  double sigma = 0.0;  // 2*sqrt(2)/3 - kappa
  int eps = -1;        // sgn Im s1
  Branch branch = Branch::Regular;

  // From (x, gamma): v = -ln|1-gamma|, regular branch iff gamma < 1.
  // gamma plays the role of |s1|^2; the singular branch needs gamma < 2.
  static ScalePoint from_x_gamma(double x, double gamma, int eps = -1);
  static ScalePoint from_t_v(double t, double v, Branch branch, int eps = -1);

  // |s1|^2 implied by (v, branch).
  double gamma() const;
};

struct StokesTriple {
  std::complex<double> s1, s2, s3;
};

// |s1 - s2 + s3 + s1 s2 s3|.
double check_cyclic(const StokesTriple& s);

// s2 solved from the cyclic relation given s1 and s3.
std::complex<double> solve_s2(std::complex<double> s1, std::complex<double> s3);

struct ModulusData {
  double k = 0.0;
  EllipticQuad quad;
  double m = 0.0, M = 0.0;     // band edges, m^2 + M^2 = 1/2
  double V = 0.0;              // frequency, in (-2/(3 pi), 0)
  double tau_im = 0.0;         // -i tau = 2K/K'
  double tau_prime_im = 0.0;   // -i tau' = K'/(2K)
  ThetaNome nome;              // q = exp(-2 pi K/K')
  double landen = 0.0;         // (1-k)/(1+k)
  double ell_im = 0.0;         // Im l = -(pi/2) V
};

// kappa(k) = (2/3) sqrt(2/(1+k^2)) [E' - 2k^2/(1+k^2) K'], decreasing in k.
double kappa_of_k(double k);
double kappa_of_k_deriv(double k);

// Inverse of kappa_of_k on (0, 2*sqrt(2)/3); bisection bracket, Newton
// finish. Falls back to the endpoint expansions within 1e-10 of
// kappa = 0 and 1e-12 of the separating value.
double solve_modulus(double kappa);

ModulusData modulus_data(double k);

// Im l from the regularized integral; satisfies Im l = -(pi/2) V.
double compute_ell(double k);

struct RegimeParams {
  double delta = 0.3;  // in (0, sqrt(2)/3)
  double f1 = 1.0;
  double f2 = 1.0;
  double f3 = 1.0;     // < 7/6 for Stokes evaluation
};

struct RegimeLabel {
  enum class Tag { Boutroux, StokesRegion, HastingsMcLeod, AboveLine };
  Tag tag = Tag::Boutroux;
  // ln t coefficient (6j+1)/6 of the deepest crossed Stokes line; 0 when the
  // point sits in the Stokes band above S1.
  double stokes_coeff = 0.0;
  double dist_separating = 0.0;  // v - (2 sqrt 2/3) t, vertical, signed
  double dist_stokes = 0.0;      // v minus the nearest Stokes line, signed
};

RegimeLabel classify_regime(double t, double v, const RegimeParams& p);

// Endpoint asymptotic approximants, evaluated literally.
struct Expansions {
  double k_small_kappa = 0.0;          // three-and-a-half-term series at kappa -> 0
  double k_near_line = 0.0;            // sigma -> 0 form
  double V_small_kappa = 0.0;
  double V_near_line = 0.0;
  double tau_prime_im_near_line = 0.0; // -i tau'
};

Expansions expansions(double kappa);

}  // namespace pii

#endif
