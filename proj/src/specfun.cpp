#include "pii/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace pii {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
// Direct theta series below this nome, modular transformation above.
constexpr double kNomeSwitch = 0.043213918263772250;  // exp(-pi)

// ---------------------------------------------------------------------
// Double-double helpers. Only the handful of operations the Airy series
// needs; relies on FMA for the products.

struct DD {
  double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  DD r = two_sum(s.hi, lo);
  return r;
}

inline DD dd_mul_d(DD a, double b) {
  double p = a.hi * b;
  double e = std::fma(a.hi, b, -p);
  double lo = e + a.lo * b;
  return two_sum(p, lo);
}

inline DD dd_mul(DD a, DD b) {
  double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  double lo = e + a.hi * b.lo + a.lo * b.hi;
  return two_sum(p, lo);
}

inline DD dd_div_d(DD a, double b) {
  double q1 = a.hi / b;
  double r = std::fma(-q1, b, a.hi) + a.lo;
  double q2 = r / b;
  return two_sum(q1, q2);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

// Ai(0) and -Ai'(0) as double-double constants.
constexpr double kAi0Hi = 0.3550280538878172;
constexpr double kAi0Lo = 2.05233632436212e-17;
constexpr double kAip0Hi = 0.2588194037928068;
constexpr double kAip0Lo = -2.522243111610832e-17;

}  // namespace

// -----------------------------------------------------------------------
// Complete elliptic integrals via the arithmetic-geometric mean.

static void agm_KE(double k, double* K, double* E) {
  // a_0 = 1, b_0 = k', c_0 = k; K = pi/(2 a_inf),
  // E = K (1 - sum 2^{n-1} c_n^2).
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  double csum = 0.5 * k * k;
  double pow2 = 1.0;
  for (int it = 0; it < 40; ++it) {
    double c = 0.5 * (a - b);
    if (c == 0.0) break;
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    csum += pow2 * c * c;  // 2^{n-1} c_n^2 with n >= 1
    pow2 *= 2.0;
    if (c < 1e-17 * a) break;
  }
  *K = kPi / (2.0 * a);
  *E = *K * (1.0 - csum);
}

double ellip_K(double k) {
  if (!(k >= 0.0) || k >= 1.0)
    throw std::domain_error("ellip_K: modulus outside [0,1)");
  if (k >= 1.0 - 1e-15)
    throw std::overflow_error("ellip_K: modulus too close to 1");
  double K, E;
  agm_KE(k, &K, &E);
  return K;
}

double ellip_E(double k) {
  if (!(k >= 0.0) || k > 1.0)
    throw std::domain_error("ellip_E: modulus outside [0,1]");
  if (k == 1.0) return 1.0;
  double K, E;
  agm_KE(k, &K, &E);
  return E;
}

EllipticQuad EllipticQuad::at(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("EllipticQuad: modulus outside (0,1)");
  EllipticQuad q;
  q.k = k;
  q.kprime = std::sqrt((1.0 - k) * (1.0 + k));
  agm_KE(k, &q.bigK, &q.bigE);
  agm_KE(q.kprime, &q.bigKprime, &q.bigEprime);
  return q;
}

// Complementary-modulus log series (convergent for k' < 1, fast near k = 1):
//   K = sum_m [(1/2)_m]^2/(m!)^2 k'^{2m} (ln(1/k') + d(m)),
//   E = 1 + (1/2) sum_m (1/2)_m (3/2)_m / ((2)_m m!) k'^{2m+2}
//         (ln(1/k') + d(m) - 1/((2m+1)(2m+2))),
// with d(m) = psi(1+m) - psi(1/2+m), d(0) = 2 ln 2.
double ellip_K_near_one(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("ellip_K_near_one: modulus outside (0,1)");
  double kp2 = (1.0 - k) * (1.0 + k);
  double L = -0.5 * std::log(kp2);
  double d = 2.0 * std::log(2.0);
  double coef = 1.0;  // [(1/2)_m / m!]^2
  double pw = 1.0;
  double s = 0.0;
  for (int m = 0; m < 200; ++m) {
    double term = coef * pw * (L + d);
    s += term;
    if (std::fabs(term) < 1e-18 * std::fabs(s) && m > 1) break;
    double r = (m + 0.5) / (m + 1.0);
    coef *= r * r;
    pw *= kp2;
    d += 1.0 / (m + 1.0) - 1.0 / (m + 0.5);
  }
  return s;
}

double ellip_E_near_one(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("ellip_E_near_one: modulus outside (0,1)");
  double kp2 = (1.0 - k) * (1.0 + k);
  double L = -0.5 * std::log(kp2);
  double d = 2.0 * std::log(2.0);
  double coef = 1.0;  // (1/2)_m (3/2)_m / ((2)_m m!)
  double pw = kp2;
  double s = 0.0;
  for (int m = 0; m < 200; ++m) {
    double term = coef * pw * (L + d - 1.0 / ((2.0 * m + 1.0) * (2.0 * m + 2.0)));
    s += term;
    if (std::fabs(term) < 1e-18 * std::fabs(s) && m > 1) break;
    coef *= (m + 0.5) * (m + 1.5) / ((m + 2.0) * (m + 1.0));
    pw *= kp2;
    d += 1.0 / (m + 1.0) - 1.0 / (m + 0.5);
  }
  return 1.0 + 0.5 * s;
}

// -----------------------------------------------------------------------
// Theta functions.

ThetaNome ThetaNome::from_q(double q) {
  if (!(q >= 0.0) || q >= 1.0)
    throw std::domain_error("ThetaNome: nome outside [0,1)");
  ThetaNome n;
  n.q = q;
  n.tau_im = q > 0.0 ? -std::log(q) / kPi : 0.0;
  return n;
}

ThetaNome ThetaNome::from_tau_im(double tau_im) {
  if (!(tau_im > 0.0)) throw std::domain_error("ThetaNome: tau_im must be > 0");
  ThetaNome n;
  n.tau_im = tau_im;
  n.q = std::exp(-kPi * tau_im);
  return n;
}

namespace {

// Direct cosine series at |z| <= 1/2, q <= exp(-pi).
double theta_series(int j, double z, double q) {
  if (j == 2) {
    double q14 = std::pow(q, 0.25);
    double qpow = 1.0;  // q^{n^2+n}
    double s = 0.0;
    for (int n = 0; n < 64; ++n) {
      double term = 2.0 * q14 * qpow * std::cos((2 * n + 1) * kPi * z);
      s += term;
      qpow *= std::pow(q, 2 * (n + 1));  // q^{(n+1)^2+(n+1)} / q^{n^2+n} = q^{2n+2}
      if (q14 * qpow < 1e-18 * (std::fabs(s) + 1.0)) break;
    }
    return s;
  }
  double s = 1.0;
  double qpow = 1.0;  // q^{n^2}
  double sgn = (j == 4) ? -1.0 : 1.0;
  double flip = 1.0;
  for (int n = 1; n <= 64; ++n) {
    qpow *= std::pow(q, 2 * n - 1);
    flip *= sgn;
    s += 2.0 * flip * qpow * std::cos(2.0 * kPi * n * z);
    if (qpow < 1e-18) break;
  }
  return s;
}

// Gaussian-comb evaluation after the modular transformation, |z| <= 1/2,
// tau_im < 1:
//   theta3(z|ia) = a^{-1/2} sum_n exp(-pi (n-z)^2/a)
//   theta2(z|ia) = a^{-1/2} sum_n (-1)^n exp(-pi (n-z)^2/a)
//   theta4(z|ia) = a^{-1/2} sum_n exp(-pi (n+1/2-z)^2/a)
double theta_comb(int j, double z, double a) {
  double pref = 1.0 / std::sqrt(a);
  double s = 0.0;
  if (j == 4) {
    for (int n = 0; n < 16; ++n) {
      double e1 = kPi * (n + 0.5 - z) * (n + 0.5 - z) / a;
      double e2 = kPi * (n + 0.5 + z) * (n + 0.5 + z) / a;
      double term = std::exp(-e1) + std::exp(-e2);
      s += term;
      if (term < 1e-18 * (s + 1.0) && n > 0) break;
    }
  } else {
    s = std::exp(-kPi * z * z / a);
    for (int n = 1; n < 16; ++n) {
      double term = std::exp(-kPi * (n - z) * (n - z) / a) +
                    std::exp(-kPi * (n + z) * (n + z) / a);
      if (j == 2 && (n & 1)) term = -term;
      s += term;
      if (std::fabs(term) < 1e-18 * (std::fabs(s) + 1.0)) break;
    }
  }
  return pref * s;
}

}  // namespace

double theta(int j, double z, const ThetaNome& nome) {
  if (j < 2 || j > 4) throw std::domain_error("theta: index must be 2, 3 or 4");
  double q = nome.q;
  if (q == 0.0) return j == 2 ? 0.0 : 1.0;
  // Reduce by the real period; theta2 has antiperiod 1, theta3/theta4 period 1.
  double n = std::nearbyint(z);
  double zr = z - n;
  double sign = 1.0;
  if (j == 2 && std::fmod(std::fabs(n), 2.0) == 1.0) sign = -1.0;
  zr = std::fabs(zr);  // all three are even
  double val = (q <= kNomeSwitch) ? theta_series(j, zr, q)
                                  : theta_comb(j, zr, nome.tau_im);
  return sign * val;
}

double theta_imag(int j, double y, const ThetaNome& nome) {
  if (j < 2 || j > 4) throw std::domain_error("theta_imag: index must be 2, 3 or 4");
  double b = nome.tau_im;
  if (nome.q == 0.0) return j == 2 ? 0.0 : 1.0;
  y = std::fabs(y);
  if (j == 2) {
    double s = 0.0;
    for (int n = 0; n < 64; ++n) {
      double c = kPi * (n + 0.5) * (n + 0.5) * b;
      double w = (2 * n + 1) * kPi * y;
      double term = std::exp(w - c) + std::exp(-w - c);
      s += term;
      if (term < 1e-18 * (s + 1.0) && kPi * (n + 0.5) * b > w) break;
    }
    return s;
  }
  double s = 1.0;
  double sgn = (j == 4) ? -1.0 : 1.0;
  double flip = 1.0;
  for (int n = 1; n < 64; ++n) {
    flip *= sgn;
    double c = kPi * n * n * b;
    double w = 2.0 * kPi * n * y;
    double term = std::exp(w - c) + std::exp(-w - c);
    s += flip * term;
    if (term < 1e-18 * (std::fabs(s) + 1.0) && kPi * n * b > 2.0 * kPi * y) break;
  }
  return s;
}

ThetaNome nome_from_modulus(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("nome_from_modulus: modulus outside (0,1)");
  EllipticQuad q = EllipticQuad::at(k);
  return ThetaNome::from_tau_im(q.bigKprime / q.bigK);
}

double jacobi_cd_reduced(double zeta, const ThetaNome& nome) {
  double t30 = theta(3, 0.0, nome);
  double t20 = theta(2, 0.0, nome);
  double t2 = theta(2, zeta, nome);
  double t3 = theta(3, zeta, nome);
  return (t30 / t20) * (t2 / t3);
}

double jacobi_cd(double z, double lam) {
  if (!(lam > 0.0) || lam >= 1.0)
    throw std::domain_error("jacobi_cd: modulus outside (0,1)");
  double K = ellip_K(lam);
  return jacobi_cd_reduced(z / (2.0 * K), nome_from_modulus(lam));
}

double jacobi_dc_reduced(double zeta, const ThetaNome& nome,
                         double* pole_distance_zeta) {
  // Poles where cd vanishes: zeta = 1/2 mod 1.
  double frac = zeta - std::nearbyint(zeta);
  double dist = 0.5 - std::fabs(frac);
  if (pole_distance_zeta) *pole_distance_zeta = dist;
  double cd = jacobi_cd_reduced(zeta, nome);
  if (std::fabs(cd) < 1e-8)
    throw PoleError("jacobi_dc: pole of dc", dist);
  return 1.0 / cd;
}

JacobiDc jacobi_dc(double z, double lam) {
  if (!(lam > 0.0) || lam >= 1.0)
    throw std::domain_error("jacobi_dc: modulus outside (0,1)");
  double K = ellip_K(lam);
  double dz;
  double val;
  try {
    val = jacobi_dc_reduced(z / (2.0 * K), nome_from_modulus(lam), &dz);
  } catch (const PoleError& e) {
    throw PoleError("jacobi_dc: pole of dc", e.distance() * 2.0 * K);
  }
  return {val, dz * 2.0 * K};
}

// -----------------------------------------------------------------------
// Airy Ai, Ai'.

namespace {

// Maclaurin series in double-double, |x| < 8. Ai = Ai(0) f - (-Ai'(0)) g,
//   f = sum 3^k (1/3)_k x^{3k}/(3k)!,  g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!.
void airy_maclaurin(double x, double* ai, double* aip) {
  DD xd = {x, 0.0};
  DD x3 = dd_mul_d(dd_mul(xd, xd), x);

  DD f = {1.0, 0.0}, tf = {1.0, 0.0};
  DD g = xd, tg = xd;
  DD fp = {0.0, 0.0}, tfp = dd_div_d(dd_mul(xd, xd), 2.0);
  DD gp = {1.0, 0.0}, tgp = {1.0, 0.0};
  fp = tfp;

  for (int k = 0; k < 80; ++k) {
    tf = dd_div_d(dd_mul(tf, x3), (3.0 * k + 2.0) * (3.0 * k + 3.0));
    tg = dd_div_d(dd_mul(tg, x3), (3.0 * k + 3.0) * (3.0 * k + 4.0));
    // f' terms indexed from k=1: a_{k+1} = a_k x^3/((3k)(3k+2)), a_1 = x^2/2
    if (k >= 1) tfp = dd_div_d(dd_mul(tfp, x3), (3.0 * k) * (3.0 * k + 2.0));
    tgp = dd_div_d(dd_mul(tgp, x3), (3.0 * k + 1.0) * (3.0 * k + 3.0));
    f = dd_add(f, tf);
    g = dd_add(g, tg);
    if (k >= 1) fp = dd_add(fp, tfp);
    gp = dd_add(gp, tgp);
    double mag = std::max(std::fabs(tf.hi), std::fabs(tg.hi));
    if (mag < 1e-40 * (std::fabs(f.hi) + 1.0)) break;
  }

  DD alpha = {kAi0Hi, kAi0Lo};
  DD beta = {kAip0Hi, kAip0Lo};
  DD a = dd_add(dd_mul(alpha, f), dd_neg(dd_mul(beta, g)));
  DD ap = dd_add(dd_mul(alpha, fp), dd_neg(dd_mul(beta, gp)));
  *ai = a.hi + a.lo;
  *aip = ap.hi + ap.lo;
}

// u_k, v_k coefficient recurrences of the asymptotic series.
inline double u_next(double u, int k) {
  return u * (6.0 * k + 1.0) * (6.0 * k + 5.0) / (72.0 * (k + 1.0));
}

// Exponentially decaying branch, x >= 8; optimally truncated.
void airy_asymp_pos(double x, double* ai, double* aip) {
  double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double su = 1.0, sv = 1.0;
  double u = 1.0, sgn = 1.0;
  double prev = 1.0;
  for (int k = 0; k < 60; ++k) {
    double un = u_next(u, k);
    double term = un / std::pow(zeta, k + 1);
    if (term > prev) break;  // divergence onset
    sgn = -sgn;
    su += sgn * term;
    double vn = un * (6.0 * (k + 1) + 1.0) / (1.0 - 6.0 * (k + 1));
    sv += sgn * vn / std::pow(zeta, k + 1);
    u = un;
    prev = term;
    if (term < 1e-18) break;
  }
  double pref = std::exp(-zeta) / (2.0 * std::sqrt(kPi));
  *ai = pref * su / std::pow(x, 0.25);
  *aip = -pref * sv * std::pow(x, 0.25);
}

// Oscillatory branch, x <= -8.
void airy_asymp_neg(double x, double* ai, double* aip) {
  double y = -x;
  double xi = 2.0 / 3.0 * y * std::sqrt(y);
  double c = std::cos(xi - kPi / 4.0);
  double s = std::sin(xi - kPi / 4.0);
  // even/odd splits of sum (-1)^k u_k xi^{-k} and v_k counterpart
  double ue = 1.0, uo = 0.0, ve = 1.0, vo = 0.0;
  double u = 1.0;
  double prev = 1.0;
  for (int k = 0; k < 60; ++k) {
    double un = u_next(u, k);
    double term = un / std::pow(xi, k + 1);
    if (term > prev) break;
    double vn = un * (6.0 * (k + 1) + 1.0) / (1.0 - 6.0 * (k + 1));
    double sgn = ((k + 1) / 2 % 2 == 0) ? 1.0 : -1.0;  // (-1)^m for index 2m or 2m+1
    if ((k + 1) % 2 == 1) {
      uo += sgn * term;
      vo += sgn * vn / std::pow(xi, k + 1);
    } else {
      ue += sgn * term;
      ve += sgn * vn / std::pow(xi, k + 1);
    }
    u = un;
    prev = term;
    if (term < 1e-18) break;
  }
  double pref = 1.0 / std::sqrt(kPi);
  *ai = pref / std::pow(y, 0.25) * (c * ue + s * uo);
  *aip = pref * std::pow(y, 0.25) * (s * ve - c * vo);
}

void airy_both(double x, double* ai, double* aip) {
  if (!(std::fabs(x) <= 40.0))
    throw std::range_error("airy: |x| > 40 outside validated range");
  if (std::fabs(x) < 8.0)
    airy_maclaurin(x, ai, aip);
  else if (x > 0.0)
    airy_asymp_pos(x, ai, aip);
  else
    airy_asymp_neg(x, ai, aip);
}

}  // namespace

double airy_ai(double x) {
  double a, ap;
  airy_both(x, &a, &ap);
  return a;
}

double airy_ai_prime(double x) {
  double a, ap;
  airy_both(x, &a, &ap);
  return ap;
}

// -----------------------------------------------------------------------
// arg Gamma on the two vertical lines.

double arg_gamma(GammaLine line, double y) {
  double re0 = line == GammaLine::HalfLine ? 0.5 : 0.0;
  if (line == GammaLine::ImaginaryAxis && y == 0.0)
    throw PoleError("arg_gamma: Gamma pole at the origin", 0.0);
  int shifts = std::max(0, (int)std::ceil(12.0 - std::fabs(y)));
  double argsum = 0.0;
  for (int j = 0; j < shifts; ++j) argsum += std::atan2(y, re0 + j);
  std::complex<double> w(re0 + shifts, y);
  std::complex<double> lg = (w - 0.5) * std::log(w) - w;
  // Stirling tail through B10.
  static const double kB[5] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0,
                               -1.0 / 30.0, 5.0 / 66.0};
  std::complex<double> winv = 1.0 / w;
  std::complex<double> wp = winv;
  for (int m = 1; m <= 5; ++m) {
    lg += kB[m - 1] / (2.0 * m * (2.0 * m - 1.0)) * wp;
    wp *= winv * winv;
  }
  return lg.imag() - argsum;
}

// -----------------------------------------------------------------------
// zeta'(-1) by the Euler-Maclaurin expansion differentiated at s = -1:
//   zeta'(-1) = -sum_{n<N} n ln n + N^2 ln N / 2 - N^2/4 - N ln N / 2
//               + (1 + ln N)/12 - sum_{j>=2} B_{2j} (2j-3)! / (2j)! N^{2-2j}.

double zeta_prime_minus_one() {
  static const double value = [] {
    const int N = 24;
    double s = 0.0, comp = 0.0;
    for (int n = 2; n < N; ++n) {
      double term = -n * std::log((double)n);
      double t = s + term;
      if (std::fabs(s) >= std::fabs(term))
        comp += (s - t) + term;
      else
        comp += (term - t) + s;
      s = t;
    }
    s += comp;
    double lnN = std::log((double)N);
    s += 0.5 * N * (double)N * lnN - 0.25 * N * (double)N - 0.5 * N * lnN;
    s += (1.0 + lnN) / 12.0;
    static const double kB2j[7] = {-1.0 / 30.0, 1.0 / 42.0,  -1.0 / 30.0,
                                   5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,
                                   -3617.0 / 510.0};  // B4..B16
    for (int j = 2; j <= 8; ++j) {
      // (2j-3)!/(2j)! = 1/((2j-2)(2j-1)(2j))
      double c = 1.0 / ((2.0 * j - 2.0) * (2.0 * j - 1.0) * (2.0 * j));
      s -= kB2j[j - 2] * c * std::pow((double)N, 2.0 - 2.0 * j);
    }
    return s;
  }();
  return value;
}

double tw_tail_constant() {
  static const double value =
      std::exp(std::log(2.0) / 24.0 + zeta_prime_minus_one());
  return value;
}

}  // namespace pii
