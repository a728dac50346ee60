#ifndef PII_SPECFUN_HPP
#define PII_SPECFUN_HPP

// Real-argument special-function kernel: complete elliptic integrals,
// Jacobi theta functions with real nome, the elliptic functions cd/dc,
// the Airy function Ai and its derivative, arg Gamma on the lines i*R
// and 1/2 + i*R, and the constant zeta'(-1).
//
// Everything here is a pure function of its inputs; the only state is a
// lazily initialized constant cache, safe under concurrent first use.

#include <stdexcept>
#include <string>

namespace pii {

// Thrown when an evaluation lands too close to a pole of the requested
// function. `distance` is measured in the caller's argument units.
class PoleError : public std::runtime_error {
public:
  PoleError(const std::string& what, double distance)
      : std::runtime_error(what), distance_(distance) {}
  double distance() const { return distance_; }

private:
  double distance_;
};

// Real nome q = exp(-pi*tau_im) for purely imaginary tau = i*tau_im.
// q == 0 encodes the degenerate limit tau_im -> +inf.
struct ThetaNome {
  double q = 0.0;
  double tau_im = 0.0;

  static ThetaNome from_q(double q);
  static ThetaNome from_tau_im(double tau_im);
};

// Complete elliptic integrals at a modulus k and its complement k'.
struct EllipticQuad {
  double k = 0.0;
  double kprime = 1.0;
  double bigK = 0.0;
  double bigKprime = 0.0;
  double bigE = 0.0;
  double bigEprime = 0.0;

  static EllipticQuad at(double k);
};

// K(k), k in [0, 1). AGM; throws std::domain_error outside the domain and
// std::overflow_error for k >= 1 - 1e-15.
double ellip_K(double k);

// E(k), k in [0, 1].
double ellip_E(double k);

// Log-series versions convergent near k = 1 (complementary-modulus
// expansions). Exercised by the test suite against the AGM route.
double ellip_K_near_one(double k);
double ellip_E_near_one(double k);

// theta_j(z | i*tau_im) for j in {2,3,4} and real z. For nomes above
// exp(-pi) the modular transformation tau -> -1/tau is applied first, so
// the accuracy is uniform as q -> 1.
double theta(int j, double z, const ThetaNome& nome);

// theta_j(i*y | i*tau_im) for real y (purely imaginary argument); real
// valued. Used by the modular-transformation checks.
double theta_imag(int j, double y, const ThetaNome& nome);

ThetaNome nome_from_modulus(double k);

// cd(z, lam) through the theta-function ratio with the nome of lam.
double jacobi_cd(double z, double lam);

// cd(2*zeta*K(lam), lam) when only the reduced argument zeta and the nome
// are at hand (the Boutroux evaluators call this with zeta = t*V).
double jacobi_cd_reduced(double zeta, const ThetaNome& nome);

struct JacobiDc {
  double value;
  double pole_distance;  // to the nearest pole, in z units
};

// dc = 1/cd with pole reporting; throws PoleError when |cd| < 1e-8.
JacobiDc jacobi_dc(double z, double lam);
double jacobi_dc_reduced(double zeta, const ThetaNome& nome,
                         double* pole_distance_zeta = nullptr);

// Airy function on [-40, 40]: double-double Maclaurin series for |x| < 8,
// optimally truncated asymptotic expansions outside.
double airy_ai(double x);
double airy_ai_prime(double x);

enum class GammaLine { ImaginaryAxis, HalfLine };

// Continuous principal-branch arg Gamma(i*y) or arg Gamma(1/2 + i*y),
// via recurrence shifts followed by the Stirling series.
double arg_gamma(GammaLine line, double y);

// zeta'(-1), cached constant.
double zeta_prime_minus_one();

// c0 = exp(ln(2)/24 + zeta'(-1)), the Tracy-Widom tail constant.
double tw_tail_constant();

}  // namespace pii

#endif
