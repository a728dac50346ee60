#ifndef PII_ASYMPTOTICS_HPP
#define PII_ASYMPTOTICS_HPP

// Closed-form asymptotic evaluators: the transition regimes of u(x|s)
// (Boutroux elliptic, Hastings-McLeod band, Stokes band), the classical
// fixed-parameter limits, the determinant tail and transition factors, and
// the eigenvalue-gap formula.

#include <optional>
#include <string>

#include "pii/scaling.hpp"

namespace pii {

struct PIIAsymptote {
  double value = 0.0;
  RegimeLabel regime;
  // Error-envelope exponent of the formula used. Transition regimes quote
  // powers of t = (-x)^{3/2} (-1/15, -1, -min(7/6-f3, 2/3)); the fixed
  // -parameter formulas quote powers of (-x).
  double envelope_exponent = 0.0;
  std::optional<double> pole_distance;  // singular family only
  std::string note;                     // regime warnings, if any
};

// Connection phases. beta/phi belong to the regular family |s1| < 1,
// beta_hat/phi_hat to the singular family |s1| > 1; unused entries are NaN.
struct PhaseData {
  double beta, beta_hat, phi, phi_hat;

  static PhaseData regular_from_gamma(double gamma);     // gamma = |s1|^2
  static PhaseData singular_from_s1abs(double s1abs);
};

// eps*p/sqrt(2) of the Stokes-band Moebius factor, in two algebraically
// equal forms.
struct StokesCorrection {
  double p_over = 0.0;       // -e^{sigma t} / (2^{9/4} sqrt(pi) t^{1/2})
  double p_over_alt = 0.0;  // -(1/2pi) sqrt(pi/2) e^{sigma t} / (2 sqrt2 t)^{1/2}
  double sigma_t = 0.0;

  static StokesCorrection at(double t, double sigma);
};

// Hastings-McLeod-band correction amplitude. Two conventions are in
// circulation, a factor sqrt(pi) apart; both are implemented. The default is
// the one consistent with the Stokes-band Moebius factor and with the
// determinant transition factor, which the determinant oracle corroborates.
enum class AmplitudeConstant { BandLiteral, StokesConsistent };

PIIAsymptote u_boutroux_regular(const ScalePoint& pt);
PIIAsymptote u_boutroux_singular(const ScalePoint& pt);
PIIAsymptote u_hm_region(const ScalePoint& pt,
                         AmplitudeConstant c = AmplitudeConstant::StokesConsistent);
PIIAsymptote u_stokes(const ScalePoint& pt, double f3, bool refined = false);
PIIAsymptote u_hm_fixed(double x, int eps);
PIIAsymptote u_as_fixed(double x, double gamma);
PIIAsymptote u_kapaev_fixed(double x, double s1abs);

// ln det(I-K_Ai) tail: x^3/12 - (1/8) ln|x| + ln c0.
double det_tw_tail(double x);

// Transition form with the Stokes factor ln(1 + e^{sigma t}/(2^{9/4} sqrt(pi)
// t^{1/2})); b(gamma) is approximated by c0, its known gamma -> 1 limit.
double det_transition(const ScalePoint& pt, double f3 = 1.0);

// 1 - lambda_j(x) ~ (sqrt(pi)/j!) 2^{(7/2)j + 9/4} t^{j+1/2} e^{-(2 sqrt2/3) t}.
double eigen_gap(int j, double t);
// The rigorous one-sided bound for j = 0 (same expression, stated separately).
double eigen_gap_lower_bound(double t);

PIIAsymptote u_dispatch(const ScalePoint& pt, const RegimeParams& params);

}  // namespace pii

#endif
