#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgsim/analytics.hpp"

using namespace sgsim;
using namespace sgsim::analytics;
using specfun::kPi;

namespace {
constexpr double kBeta2Anchor = 0.063 * 8.0 * kPi; // E_J/E_C0 = 1.55 working point
}

TEST_CASE("xi_sg and its inverse") {
  CHECK(xi_sg(kBeta2Anchor) == doctest::Approx(0.067235859124866596).epsilon(1e-14));
  CHECK(xi_sg(4.0 * kPi) == doctest::Approx(1.0).epsilon(1e-14)); // free fermion
  for (double b2 : {0.1, 1.0, 4.0, 12.0, 24.0})
    CHECK(beta2_from_xi(xi_sg(b2)) == doctest::Approx(b2).epsilon(1e-13));
  CHECK_THROWS_AS((void)xi_sg(0.0), DomainError);
  CHECK_THROWS_AS((void)xi_sg(8.0 * kPi), DomainError);
}

TEST_CASE("soliton mass at the working point") {
  // independent 25-digit evaluation of the exact mass formula
  const double m = soliton_mass(kBeta2Anchor, 0.016);
  CHECK(m == doctest::Approx(0.65966994023063236).epsilon(1e-12));
  // quoted rounded value at this working point
  CHECK(std::abs(m - 0.662) / 0.662 < 5e-3);
}

TEST_CASE("soliton mass: free-fermion point gives M = pi M0") {
  for (double m0 : {0.001, 0.016, 0.3})
    CHECK(soliton_mass(4.0 * kPi, m0) == doctest::Approx(kPi * m0).epsilon(1e-12));
}

TEST_CASE("soliton mass edge cases and inverse") {
  CHECK(soliton_mass(kBeta2Anchor, 0.0) == 0.0);
  CHECK_THROWS_AS((void)soliton_mass(kBeta2Anchor, -1.0), DomainError);
  for (double b2 : {0.5, kBeta2Anchor, 4.0, 10.0})
    for (double m0 : {1e-6, 1e-3, 0.016, 0.5}) {
      const double m = soliton_mass(b2, m0);
      CHECK(mass_parameter_from_soliton(b2, m) == doctest::Approx(m0).epsilon(1e-11));
    }
}

TEST_CASE("breather masses at the working point") {
  // spec of the tower: m_n = 2 M sin(n pi xi / 2), n up to floor(1/xi) = 14
  CHECK(breather_mass(1, 0.662, kBeta2Anchor) ==
        doctest::Approx(0.13957291418205794).epsilon(1e-13));
  CHECK(breather_mass(2, 0.662, kBeta2Anchor) ==
        doctest::Approx(0.27759043911407111).epsilon(1e-13));
  CHECK_NOTHROW((void)breather_mass(14, 0.662, kBeta2Anchor));
  CHECK_THROWS_AS((void)breather_mass(15, 0.662, kBeta2Anchor), DomainError);
  CHECK_THROWS_AS((void)breather_mass(0, 0.662, kBeta2Anchor), DomainError);
  // attractive regime boundary: no breathers for xi >= 1
  CHECK_THROWS_AS((void)breather_mass(1, 1.0, beta2_from_xi(1.5)), DomainError);
}

TEST_CASE("vacuum energy density") {
  CHECK(vacuum_energy_density(0.662, kBeta2Anchor) ==
        doctest::Approx(-0.011614373467133965).epsilon(1e-13));
  CHECK(vacuum_energy_density(0.0, kBeta2Anchor) == 0.0);
  CHECK_THROWS_AS((void)vacuum_energy_density(1.0, 4.0 * kPi), DomainError);
}

TEST_CASE("vertex operator VEV") {
  CHECK(vertex_vev(kBeta2Anchor, 0.13957291418205794) ==
        doctest::Approx(0.76960267211808788).epsilon(1e-12));
  CHECK(vertex_vev(kPi, 0.5) == doctest::Approx(0.82290615492807572).epsilon(1e-12));
  // beta -> 0: normalization forces <e^{i beta phi}> -> 1
  CHECK(vertex_vev(1e-6, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS((void)vertex_vev(kBeta2Anchor, 0.0), DomainError);
}

TEST_CASE("CTM parameters for the XYZ working point") {
  models::XyzParams p{1.0, 0.999937, 0.981};
  const CtmParams c = principal_regime(p);
  CHECK(c.gamma_p == doctest::Approx(-0.98106180689383431).epsilon(1e-13));
  CHECK(c.delta_p == doctest::Approx(-1.0000630039692501).epsilon(1e-13));
  CHECK(c.l == doctest::Approx(0.057857464036115062).epsilon(1e-12));
  CHECK(c.k == doctest::Approx(0.89061387568157326).epsilon(1e-12));
  CHECK(c.lambda == doctest::Approx(1.5597985286430743).epsilon(1e-11));
  CHECK(ctm_level_spacing(c) == doctest::Approx(2.1856485236494461).epsilon(1e-11));
}

TEST_CASE("CTM asymptotic spacing tracks the exact one at small l") {
  models::XyzParams p{1.0, 0.999937, 0.981};
  const CtmParams c = principal_regime(p);
  const double asym = ctm_spacing_asymptotic(c.l, kBeta2Anchor);
  CHECK(asym == doctest::Approx(2.183114419788646).epsilon(1e-13));
  CHECK(std::abs(asym - ctm_level_spacing(c)) / ctm_level_spacing(c) < 2e-3);
}

TEST_CASE("CTM mapping rejects couplings outside the expected ordering") {
  CHECK_THROWS_AS((void)principal_regime(models::XyzParams{1.0, 0.5, 0.9}),
                  DomainError);
  CHECK_THROWS_AS((void)principal_regime(models::XyzParams{0.5, 1.0, 0.2}),
                  DomainError);
}

TEST_CASE("CTM modulus stays accurate for nearly critical couplings") {
  // l = 1e-8 regime: the double-precision couplings cannot even represent
  // Jy, so the anisotropy has to be passed directly
  const double l = 1e-8;
  const CtmParams c = ctm_from_anisotropy(l, -0.981);
  CHECK(c.l == l);
  CHECK((1.0 - c.k) / (1.0 + c.k) == doctest::Approx(l).epsilon(1e-9));
  CHECK(std::isfinite(ctm_level_spacing(c)));
  // both routes agree where the couplings are representable
  models::XyzParams p{1.0, 0.999937, 0.981};
  const CtmParams a = principal_regime(p);
  const CtmParams b = ctm_from_anisotropy(a.l, a.gamma_p);
  CHECK(b.delta_p == doctest::Approx(a.delta_p).epsilon(1e-12));
  CHECK(b.lambda == doctest::Approx(a.lambda).epsilon(1e-12));
  CHECK(ctm_level_spacing(b) ==
        doctest::Approx(ctm_level_spacing(a)).epsilon(1e-12));
}

TEST_CASE("form-factor coupling lambda") {
  CHECK(ff_coupling_lambda(0.067235859124866596) ==
        doctest::Approx(0.88295496219221122).epsilon(1e-10));
  CHECK(ff_coupling_lambda(0.3) == doctest::Approx(1.4500269356403992).epsilon(1e-10));
  CHECK_THROWS_AS((void)ff_coupling_lambda(0.0), DomainError);
  CHECK_THROWS_AS((void)ff_coupling_lambda(1.0), DomainError);
}

TEST_CASE("R function at the shifted point") {
  CHECK(ff_R_shifted(0.3) == doctest::Approx(1.6985449895917878).epsilon(1e-9));
  CHECK(ff_R_shifted(0.067235859124866596) ==
        doctest::Approx(1.0763348661969708).epsilon(1e-9));
  CHECK_THROWS_AS((void)ff_R_shifted(0.5), DomainError);
}

TEST_CASE("R function on the shifted real line") {
  CHECK(ff_R_theta(0.0, 0.3) == doctest::Approx(1.5390952449398067).epsilon(1e-9));
  CHECK(ff_R_theta(1.7, 0.3) == doctest::Approx(1.2820980696374018).epsilon(1e-9));
  CHECK(ff_R_theta(2.5, 0.067235859124866596) ==
        doctest::Approx(1.0297257455226583).epsilon(1e-9));
  CHECK(ff_R_theta(-1.7, 0.3) == doctest::Approx(ff_R_theta(1.7, 0.3)).epsilon(1e-12));
}

TEST_CASE("two-point function from the form-factor expansion") {
  models::SgParams sg;
  sg.beta2 = kBeta2Anchor;
  sg.m = 0.662;
  sg.u = 1.46;
  // frozen 20-digit mpmath evaluation of the full expansion
  CHECK(two_point_ff(5.0, sg) == doctest::Approx(0.751609398126922).epsilon(1e-6));
  CHECK(two_point_ff(10.0, sg) == doctest::Approx(0.662279833859495).epsilon(1e-6));
  CHECK(two_point_ff(20.0, sg) == doctest::Approx(0.611296050195073).epsilon(1e-6));

  FormFactorTerms vac;
  vac.include_b1 = vac.include_b2 = vac.include_b1b1 = false;
  const double g2 = two_point_ff(10.0, sg, vac);
  CHECK(g2 == doctest::Approx(0.592288272931301).epsilon(1e-9));
  // clustering: the connected part decays towards G^2
  CHECK(two_point_ff(60.0, sg) == doctest::Approx(g2).epsilon(1e-3));
  // monotone decay in r
  double prev = two_point_ff(2.0, sg);
  for (double r : {4.0, 8.0, 16.0, 32.0}) {
    const double cur = two_point_ff(r, sg);
    CHECK(cur < prev);
    CHECK(cur > g2);
    prev = cur;
  }
  CHECK_THROWS_AS((void)two_point_ff(0.0, sg), DomainError);
}
