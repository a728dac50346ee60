#include "pii/asymptotics.hpp"

#include <cmath>
#include <limits>

namespace pii {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

RegimeLabel label_for(const ScalePoint& pt, RegimeLabel::Tag tag) {
  RegimeLabel lab;
  lab.tag = tag;
  double line = kSeparatrixKappa * pt.t;
  double lnt = std::log(std::max(pt.t, 1.0 + 1e-12));
  lab.dist_separating = pt.v - line;
  double drop = (line - pt.v) / lnt;
  double jstar = std::nearbyint((6.0 * drop - 1.0) / 6.0);
  if (jstar < 0.0) jstar = 0.0;
  lab.dist_stokes = pt.v - (line - (6.0 * jstar + 1.0) / 6.0 * lnt);
  if (tag == RegimeLabel::Tag::StokesRegion) {
    double jf = std::floor((6.0 * drop - 1.0) / 6.0);
    lab.stokes_coeff = jf >= 0.0 ? (6.0 * jf + 1.0) / 6.0 : 0.0;
  }
  return lab;
}

double exp_sigma_t(const ScalePoint& pt) {
  double st = pt.sigma * pt.t;
  if (st > 700.0)
    throw std::range_error("exp(sigma t) overflows; point is far outside the band");
  return std::exp(st);
}

}  // namespace

PhaseData PhaseData::regular_from_gamma(double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::domain_error("PhaseData: gamma must lie in (0,1)");
  PhaseData p{kNaN, kNaN, kNaN, kNaN};
  p.beta = std::log1p(-gamma) / (2.0 * kPi);
  // phi = -pi/4 - arg Gamma(i beta) - arg s1, with arg s1 = -pi/2 for the
  // family s1 = -i sqrt(gamma).
  p.phi = -kPi / 4.0 - arg_gamma(GammaLine::ImaginaryAxis, p.beta) + kPi / 2.0;
  return p;
}

PhaseData PhaseData::singular_from_s1abs(double s1abs) {
  if (!(s1abs > 1.0) || !(s1abs < std::sqrt(2.0)))
    throw std::domain_error("PhaseData: |s1| must lie in (1, sqrt 2)");
  PhaseData p{kNaN, kNaN, kNaN, kNaN};
  p.beta_hat = std::log(s1abs * s1abs - 1.0) / (2.0 * kPi);
  p.phi_hat = -arg_gamma(GammaLine::HalfLine, p.beta_hat) + kPi / 2.0;
  return p;
}

StokesCorrection StokesCorrection::at(double t, double sigma) {
  if (!(t > 0.0)) throw std::domain_error("StokesCorrection: t must be positive");
  StokesCorrection c;
  c.sigma_t = sigma * t;
  if (c.sigma_t > 700.0)
    throw std::range_error("StokesCorrection: exp(sigma t) overflows");
  double est = std::exp(c.sigma_t);
  c.p_over = -est / (std::pow(2.0, 2.25) * std::sqrt(kPi) * std::sqrt(t));
  c.p_over_alt = -(1.0 / (2.0 * kPi)) * std::sqrt(kPi / 2.0) * est /
                     std::sqrt(2.0 * std::sqrt(2.0) * t);
  return c;
}

// -----------------------------------------------------------------------
// Boutroux elliptic regime

PIIAsymptote u_boutroux_regular(const ScalePoint& pt) {
  if (pt.branch != ScalePoint::Branch::Regular)
    throw std::domain_error("u_boutroux_regular: regular branch required");
  if (!(pt.kappa > 0.0) || !(pt.kappa < kSeparatrixKappa))
    throw std::range_error("u_boutroux_regular: kappa outside (0, 2 sqrt2/3)");
  double k = solve_modulus(pt.kappa);
  ModulusData md = modulus_data(k);
  double cd = jacobi_cd_reduced(pt.t * md.V, md.nome);
  PIIAsymptote r;
  r.value = -pt.eps * std::sqrt(-pt.x / 2.0) * (1.0 - k) /
            std::sqrt(1.0 + k * k) * cd;
  r.regime = label_for(pt, RegimeLabel::Tag::Boutroux);
  r.envelope_exponent = -1.0 / 15.0;
  return r;
}

PIIAsymptote u_boutroux_singular(const ScalePoint& pt) {
  if (pt.branch != ScalePoint::Branch::Singular)
    throw std::domain_error("u_boutroux_singular: singular branch required");
  if (!(pt.kappa > 0.0) || !(pt.kappa < kSeparatrixKappa))
    throw std::range_error("u_boutroux_singular: kappa outside (0, 2 sqrt2/3)");
  double k = solve_modulus(pt.kappa);
  ModulusData md = modulus_data(k);

  // Proximity to the exceptional set 2 t V = n, n nonzero integer.
  double w = 2.0 * pt.t * md.V;
  double nearest = std::nearbyint(w);
  double pole_distance = nearest == 0.0
                             ? std::min(std::fabs(w - 1.0), std::fabs(w + 1.0))
                             : std::fabs(w - nearest);
  if (pole_distance < 1e-3)
    throw PoleError("u_boutroux_singular: too close to the exceptional set 2tV = n",
                    pole_distance);

  double dc = jacobi_dc_reduced(pt.t * md.V, md.nome, nullptr);
  PIIAsymptote r;
  r.value = -pt.eps * std::sqrt(-pt.x / 2.0) * (1.0 + k) /
            std::sqrt(1.0 + k * k) * dc;
  r.regime = label_for(pt, RegimeLabel::Tag::Boutroux);
  r.envelope_exponent = -1.0 / 15.0;
  r.pole_distance = pole_distance;
  if (pole_distance < 0.05)
    r.note = "within 0.05 of the exceptional set 2tV = n";
  return r;
}

// -----------------------------------------------------------------------
// Hastings-McLeod band and Stokes band

PIIAsymptote u_hm_region(const ScalePoint& pt, AmplitudeConstant c) {
  double est = exp_sigma_t(pt);
  double corr;
  if (c == AmplitudeConstant::BandLiteral) {
    corr = est / (2.0 * kPi * std::sqrt(pt.t * std::sqrt(2.0)));
  } else {
    // Twice the Moebius amplitude eps p / sqrt(2).
    corr = est / (std::pow(2.0, 1.25) * std::sqrt(kPi) * std::sqrt(pt.t));
  }
  double sign = pt.branch == ScalePoint::Branch::Regular ? -1.0 : 1.0;
  PIIAsymptote r;
  r.value = -pt.eps * std::sqrt(-pt.x / 2.0) * (1.0 + sign * corr);
  r.regime = label_for(pt, RegimeLabel::Tag::HastingsMcLeod);
  r.envelope_exponent = -1.0;
  if (est > std::sqrt(pt.t))
    r.note = "correction exp(sigma t)/sqrt(t) is not subleading here";
  return r;
}

PIIAsymptote u_stokes(const ScalePoint& pt, double f3, bool refined) {
  if (!(f3 < 7.0 / 6.0))
    throw std::domain_error("u_stokes: f3 must be below 7/6");
  if (pt.branch != ScalePoint::Branch::Regular)
    throw std::domain_error("u_stokes: the Stokes-band expansion covers the regular branch");
  double lnt = std::log(pt.t);
  if (pt.v < kSeparatrixKappa * pt.t - f3 * lnt - 1e-12)
    throw std::range_error("u_stokes: point below v = (2 sqrt2/3) t - f3 ln t");
  StokesCorrection sc = StokesCorrection::at(pt.t, pt.sigma);
  double a = sc.p_over;
  if (a >= 1.0)
    throw std::range_error("u_stokes: Moebius factor pole, outside regime");
  double bracket = (1.0 + a) / (1.0 - a);
  if (refined) bracket += 1.0 / (8.0 * pt.x * pt.x * pt.x);
  PIIAsymptote r;
  r.value = -pt.eps * std::sqrt(-pt.x / 2.0) * bracket;
  r.regime = label_for(pt, RegimeLabel::Tag::StokesRegion);
  r.envelope_exponent = -std::min(7.0 / 6.0 - f3, 2.0 / 3.0);
  return r;
}

// -----------------------------------------------------------------------
// Fixed-parameter limits

PIIAsymptote u_hm_fixed(double x, int eps) {
  if (!(x < 0.0)) throw std::domain_error("u_hm_fixed: x must be negative");
  if (eps != 1 && eps != -1) throw std::domain_error("u_hm_fixed: eps must be +-1");
  PIIAsymptote r;
  r.value = -eps * std::sqrt(-x / 2.0) * (1.0 + 1.0 / (8.0 * x * x * x));
  r.regime.tag = RegimeLabel::Tag::AboveLine;
  r.regime.dist_separating = std::numeric_limits<double>::infinity();
  r.regime.dist_stokes = std::numeric_limits<double>::infinity();
  r.envelope_exponent = -6.0;  // power of (-x)
  return r;
}

PIIAsymptote u_as_fixed(double x, double gamma) {
  if (!(x < 0.0)) throw std::domain_error("u_as_fixed: x must be negative");
  PhaseData ph = PhaseData::regular_from_gamma(gamma);
  double t = std::pow(-x, 1.5);
  double phase = 2.0 / 3.0 * t + ph.beta * std::log(8.0 * t) + ph.phi;
  PIIAsymptote r;
  r.value = std::pow(-x, -0.25) * std::sqrt(-2.0 * ph.beta) * std::cos(phase);
  r.regime = label_for(ScalePoint::from_x_gamma(x, gamma),
                       RegimeLabel::Tag::Boutroux);
  r.envelope_exponent = -7.0 / 10.0;  // power of (-x)
  return r;
}

PIIAsymptote u_kapaev_fixed(double x, double s1abs) {
  if (!(x < 0.0)) throw std::domain_error("u_kapaev_fixed: x must be negative");
  PhaseData ph = PhaseData::singular_from_s1abs(s1abs);
  double t = std::pow(-x, 1.5);
  double phase = 2.0 / 3.0 * t + ph.beta_hat * std::log(8.0 * t) + ph.phi_hat;
  double s = std::sin(phase);
  // Zero locus of the denominator: phase = n pi (the exceptional condition).
  double dist = std::fabs(phase - kPi * std::nearbyint(phase / kPi));
  if (std::fabs(s) < 1e-8)
    throw PoleError("u_kapaev_fixed: sine zero in the denominator", dist);
  PIIAsymptote r;
  r.value = std::sqrt(-x) / s;
  r.regime = label_for(ScalePoint::from_x_gamma(x, s1abs * s1abs),
                       RegimeLabel::Tag::Boutroux);
  r.envelope_exponent = -1.0;  // power of (-x)
  r.pole_distance = dist;
  if (dist < 0.05) r.note = "close to a zero of the sine denominator";
  return r;
}

// -----------------------------------------------------------------------
// Determinant and spectrum formulas

double det_tw_tail(double x) {
  if (!(x < 0.0)) throw std::domain_error("det_tw_tail: x must be negative");
  return x * x * x / 12.0 - std::log(-x) / 8.0 + std::log(tw_tail_constant());
}

double det_transition(const ScalePoint& pt, double f3) {
  if (pt.branch != ScalePoint::Branch::Regular)
    throw std::domain_error("det_transition: regular branch required");
  if (!(f3 < 7.0 / 6.0))
    throw std::domain_error("det_transition: f3 must be below 7/6");
  if (pt.kappa <= kSeparatrixKappa &&
      pt.v < kSeparatrixKappa * pt.t - f3 * std::log(pt.t) - 1e-12)
    throw std::range_error("det_transition: point below v = (2 sqrt2/3) t - f3 ln t");
  double est = exp_sigma_t(pt);
  double factor = est / (std::pow(2.0, 2.25) * std::sqrt(kPi) * std::sqrt(pt.t));
  return det_tw_tail(pt.x) + std::log1p(factor);
}

double eigen_gap(int j, double t) {
  if (j < 0 || j > 4) throw std::domain_error("eigen_gap: j must lie in [0,4]");
  if (!(t >= 4.0)) throw std::domain_error("eigen_gap: t must be >= 4");
  double fact = 1.0;
  for (int i = 2; i <= j; ++i) fact *= i;
  return std::sqrt(kPi) / fact * std::pow(2.0, 3.5 * j + 2.25) *
         std::pow(t, j + 0.5) * std::exp(-kSeparatrixKappa * t);
}

double eigen_gap_lower_bound(double t) { return eigen_gap(0, t); }

// -----------------------------------------------------------------------
// Dispatch

PIIAsymptote u_dispatch(const ScalePoint& pt, const RegimeParams& params) {
  RegimeLabel lab = classify_regime(pt.t, pt.v, params);
  PIIAsymptote r;
  switch (lab.tag) {
    case RegimeLabel::Tag::AboveLine:
      r = u_hm_fixed(pt.x, pt.eps);
      break;
    case RegimeLabel::Tag::HastingsMcLeod:
      r = u_hm_region(pt);
      break;
    case RegimeLabel::Tag::StokesRegion:
      // The Stokes-band expansion is proven for the regular transition only;
      // the singular branch falls back to the Hastings-McLeod form there.
      r = pt.branch == ScalePoint::Branch::Regular ? u_stokes(pt, params.f3)
                                                   : u_hm_region(pt);
      break;
    case RegimeLabel::Tag::Boutroux:
      r = pt.branch == ScalePoint::Branch::Regular ? u_boutroux_regular(pt)
                                                   : u_boutroux_singular(pt);
      break;
  }
  r.regime = lab;
  return r;
}

}  // namespace pii
