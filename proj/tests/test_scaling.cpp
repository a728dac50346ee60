#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pii/scaling.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

using namespace pii;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("scale point construction") {
  ScalePoint p = ScalePoint::from_x_gamma(-4.0, 1.0 - std::exp(-8.0));
  CHECK(p.t == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(p.v == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(p.kappa == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.branch == ScalePoint::Branch::Regular);

  ScalePoint q = ScalePoint::from_x_gamma(-4.0, 1.5);
  CHECK(q.branch == ScalePoint::Branch::Singular);
  CHECK(q.v == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(q.gamma() == doctest::Approx(1.5).epsilon(1e-14));

  // sigma = 0 on the separating line
  ScalePoint r = ScalePoint::from_t_v(10.0, kSeparatrixKappa * 10.0,
                                      ScalePoint::Branch::Regular);
  CHECK(std::fabs(r.sigma) < 1e-14);

  CHECK_THROWS_AS(ScalePoint::from_x_gamma(-4.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ScalePoint::from_x_gamma(-4.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(ScalePoint::from_x_gamma(4.0, 0.5), std::domain_error);
}

TEST_CASE("cyclic Stokes relation") {
  using C = std::complex<double>;
  for (double g : {0.25, 0.5, 0.9}) {
    StokesTriple s{C(0.0, -std::sqrt(g)), C(0.0, 0.0), C(0.0, std::sqrt(g))};
    CHECK(check_cyclic(s) < 1e-15);
  }
  StokesTriple hm{C(0.0, -1.0), C(0.0, 0.0), C(0.0, 1.0)};
  CHECK(check_cyclic(hm) < 1e-15);

  C s1(0.1, 0.0);
  C s3 = std::conj(s1);
  StokesTriple t{s1, solve_s2(s1, s3), s3};
  CHECK(check_cyclic(t) < 1e-14);
}

TEST_CASE("kappa_of_k: endpoints, frozen value, integral form") {
  // k -> 0 recovers the separating value
  CHECK(kappa_of_k(1e-6) == doctest::Approx(kSeparatrixKappa).epsilon(1e-9));

  // k -> 1 leading behavior (pi/4)(1-k)^2 [1 + (1-k) + (11/32)(1-k)^2]
  for (double del : {1e-3, 1e-4}) {
    double k = 1.0 - del;
    double lead = kPi / 4.0 * del * del * (1.0 + del + 11.0 / 32.0 * del * del);
    CHECK(kappa_of_k(k) == doctest::Approx(lead).epsilon(20.0 * del * del));
  }

  CHECK(kappa_of_k(0.5) == doctest::Approx(0.293838645022755400).epsilon(1e-13));

  // agreement with (2/(1+k^2))^{3/2} \int_k^1 sqrt((1-mu^2)(mu^2-k^2)) dmu
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double k : {0.2, 0.5, 0.8}) {
    auto f = [k](double mu) {
      return std::sqrt((1.0 - mu * mu) * (mu * mu - k * k));
    };
    double I = std::pow(2.0 / (1.0 + k * k), 1.5) * ts.integrate(f, k, 1.0, 1e-13);
    CHECK(std::fabs(kappa_of_k(k) - I) < 1e-12);
  }
}

TEST_CASE("kappa_of_k derivative matches finite differences") {
  for (double k : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    double h = 1e-6;
    double fd = (kappa_of_k(k + h) - kappa_of_k(k - h)) / (2.0 * h);
    CHECK(kappa_of_k_deriv(k) == doctest::Approx(fd).epsilon(1e-7));
    CHECK(kappa_of_k_deriv(k) < 0.0);  // strictly decreasing
  }
}

TEST_CASE("kappa_of_k strictly decreasing on a 200-point grid") {
  double prev = kappa_of_k(0.004);
  for (int i = 1; i < 200; ++i) {
    double k = 0.004 + i * (0.992 / 200.0);
    double cur = kappa_of_k(k);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("solve_modulus round trips") {
  for (double kap = 0.05; kap < 0.905; kap += 0.05) {
    double k = solve_modulus(kap);
    CHECK(std::fabs(kappa_of_k(k) - kap) <= 1e-12);
  }
  double kap05 = kappa_of_k(0.5);
  CHECK(solve_modulus(kap05) == doctest::Approx(0.5).epsilon(1e-11));
  CHECK(solve_modulus(0.9) == doctest::Approx(0.08371520039055891).epsilon(1e-10));

  CHECK_THROWS_AS(solve_modulus(0.0), std::range_error);
  CHECK_THROWS_AS(solve_modulus(kSeparatrixKappa), std::range_error);
}

TEST_CASE("small-kappa expansion coefficient by Richardson fit") {
  // (k_numeric - [1 - 2 sqrt(kap/pi) + 2 kap/pi]) / kap^{3/2} -> -(29/8) pi^{-3/2}
  auto coeff = [](double kap) {
    double k = solve_modulus(kap);
    double three = 1.0 - 2.0 * std::sqrt(kap / kPi) + 2.0 * kap / kPi;
    return (k - three) / std::pow(kap, 1.5);
  };
  double v2 = coeff(1e-4), v3 = coeff(1e-5);
  double s2 = std::sqrt(1e-4), s3 = std::sqrt(1e-5);
  double c = v3 - s3 * (v2 - v3) / (s2 - s3);
  double target = -29.0 / 8.0 * std::pow(kPi, -1.5);
  CHECK(std::fabs(c - target) < 0.05 * std::fabs(target));
}

TEST_CASE("modulus data record") {
  ModulusData d = modulus_data(0.6);
  CHECK(d.m == doctest::Approx(0.36380343755449946).epsilon(1e-14));
  CHECK(d.M == doctest::Approx(0.60633906259083243).epsilon(1e-14));
  CHECK(std::fabs(d.m * d.m + d.M * d.M - 0.5) < 1e-14);
  CHECK(d.V == doctest::Approx(-0.15291021980103609).epsilon(1e-13));
  CHECK(d.tau_im == doctest::Approx(1.754875322696445).epsilon(1e-13));
  CHECK(d.nome.q == doctest::Approx(0.004033570069917498).epsilon(1e-12));
  CHECK(d.landen == doctest::Approx(0.25).epsilon(1e-15));

  for (double k : {0.05, 0.3, 0.6, 0.9}) {
    ModulusData md = modulus_data(k);
    CHECK(std::fabs(md.m * md.m + md.M * md.M - 0.5) < 1e-14);
    double amp = (1.0 - k) / (std::sqrt(2.0) * std::sqrt(1.0 + k * k));
    CHECK(std::fabs(md.M - md.m - amp) < 1e-13);
    CHECK(md.V < 0.0);
    CHECK(md.V > -2.0 / (3.0 * kPi));
    CHECK(md.tau_im * md.tau_prime_im == doctest::Approx(1.0).epsilon(1e-14));
  }

  // V -> -2/(3 pi) as k -> 1 (kappa -> 0)
  CHECK(modulus_data(1.0 - 1e-6).V ==
        doctest::Approx(-2.0 / (3.0 * kPi)).epsilon(1e-5));
}

TEST_CASE("V against the band-integral form") {
  // V = -(8/pi) int_0^m sqrt((M^2-mu^2)(m^2-mu^2)) dmu
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double k : {0.3, 0.6, 0.9}) {
    ModulusData d = modulus_data(k);
    auto f = [&](double mu) {
      return std::sqrt((d.M * d.M - mu * mu) * (d.m * d.m - mu * mu));
    };
    double I = -(8.0 / kPi) * ts.integrate(f, 0.0, d.m, 1e-13);
    CHECK(std::fabs(d.V - I) < 1e-13);
  }
}

TEST_CASE("Landen consistency of the nome") {
  for (double k = 0.05; k < 0.99; k += 0.093) {
    ModulusData d = modulus_data(k);
    double lam = d.landen;
    double lamp = std::sqrt(1.0 - lam * lam);
    double q_landen = std::exp(-kPi * ellip_K(lamp) / ellip_K(lam));
    CHECK(std::fabs(d.nome.q - q_landen) < 1e-12);
  }
}

TEST_CASE("ell: frozen value, identity, and the k->1 limit") {
  CHECK(compute_ell(0.3) == doctest::Approx(0.08684341947574788).epsilon(1e-11));

  for (double k = 0.05; k < 0.96; k += 0.05) {
    ModulusData d = modulus_data(k);
    CHECK(std::fabs(d.ell_im + kPi / 2.0 * d.V) < 1e-10);
  }

  // M -> 1/2 limit: ell -> i/3
  CHECK(compute_ell(1.0 - 1e-7) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("regime classification") {
  RegimeParams p;  // delta = 0.3, f1 = f2 = f3 = 1
  CHECK(classify_regime(100.0, 40.0, p).tag == RegimeLabel::Tag::Boutroux);
  CHECK(classify_regime(100.0, kSeparatrixKappa * 100.0 + 1.0, p).tag ==
        RegimeLabel::Tag::AboveLine);
  CHECK(classify_regime(100.0, kSeparatrixKappa * 100.0 - 0.5, p).tag ==
        RegimeLabel::Tag::HastingsMcLeod);

  RegimeLabel st = classify_regime(100.0, kSeparatrixKappa * 100.0 - std::log(100.0), p);
  CHECK(st.tag == RegimeLabel::Tag::StokesRegion);
  CHECK(st.stokes_coeff == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  // deeper: v = line - (8/6) ln t crosses S_1 (7/6) as the deepest line
  RegimeLabel st2 =
      classify_regime(100.0, kSeparatrixKappa * 100.0 - 8.0 / 6.0 * std::log(100.0), p);
  CHECK(st2.tag == RegimeLabel::Tag::StokesRegion);
  CHECK(st2.stokes_coeff == doctest::Approx(7.0 / 6.0).epsilon(1e-14));

  // distance fields reconstruct the inputs
  double t = 50.0, v = 30.0;
  RegimeLabel lab = classify_regime(t, v, p);
  CHECK(std::fabs((v - lab.dist_separating) - kSeparatrixKappa * t) < 1e-12);
}

TEST_CASE("endpoint expansions against the solver") {
  // V at small kappa
  {
    double kap = 1e-4;
    Expansions e = expansions(kap);
    double V = modulus_data(solve_modulus(kap)).V;
    CHECK(std::fabs(e.V_small_kappa - V) < 100.0 * kap * kap);
  }
  // k at small kappa
  {
    double kap = 1e-5;
    Expansions e = expansions(kap);
    double k = solve_modulus(kap);
    CHECK(std::fabs(e.k_small_kappa - k) < 10.0 * kap * kap / std::sqrt(kap));
  }
  // near the separating line: remainders of the stated orders (with a
  // moderate constant), shrinking as sigma decreases
  {
    auto rel_errs = [](double sigma) {
      double kap = kSeparatrixKappa - sigma;
      Expansions e = expansions(kap);
      double k = solve_modulus(kap);
      ModulusData d = modulus_data(k);
      return std::array<double, 3>{
          std::fabs(e.k_near_line - k) / k,
          std::fabs(e.V_near_line - d.V) / std::fabs(d.V),
          std::fabs(e.tau_prime_im_near_line - d.tau_prime_im) / d.tau_prime_im};
    };
    auto e6 = rel_errs(1e-6);
    auto e11 = rel_errs(1e-11);
    double ls6 = std::log(1e-6), lls6 = std::log(-ls6);
    CHECK(e6[0] < 6.0 * lls6 / (ls6 * ls6));              // O(ln|ln s|/ln^2 s)
    CHECK(e6[1] < 6.0 * lls6 * lls6 / (ls6 * ls6));       // O(ln^2|ln s|/ln^2 s)
    CHECK(e6[2] < 6.0 * lls6 / (ls6 * ls6));
    for (int i = 0; i < 3; ++i) CHECK(e11[i] < 0.7 * e6[i]);
  }
}
