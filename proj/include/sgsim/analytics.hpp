#pragma once

#include "sgsim/models.hpp"
#include "sgsim/specfun.hpp"

// Exact sine-Gordon field-theory predictions: particle masses, vacuum
// energy, vertex-operator VEV, the corner-transfer-matrix entanglement level
// spacing of the XYZ chain, and the form-factor two-point function.

namespace sgsim::analytics {

using specfun::DomainError;

double xi_sg(double beta2);
double beta2_from_xi(double xi);

// Soliton mass M(beta^2, M0); evaluated in log space.
double soliton_mass(double beta2, double m0);
// Inverse of soliton_mass in its second argument.
double mass_parameter_from_soliton(double beta2, double m);
// m_n = 2 M sin(n pi xi / 2), 1 <= n <= floor(1/xi).
double breather_mass(int n, double m, double beta2);
// E0 = -(M^2/4) tan(pi xi / 2); requires xi < 1.
double vacuum_energy_density(double m, double beta2);
// <e^{i beta phi}> in the standard CFT normalization, as a function of the
// first breather mass m1.
double vertex_vev(double beta2, double m1);

struct CtmParams {
  double gamma_p = 0.0; // |Gamma_p| <= 1
  double delta_p = 0.0; // Delta_p <= -1
  double k = 0.0;       // elliptic modulus
  double lambda = 0.0;  // 0 <= lambda <= I(k')
  double l = 0.0;       // anisotropy parameter
};

// Maps XYZ couplings (Jx >= Jy >= |Jz| expected) into the eight-vertex
// principal regime and derives the CTM parameters.
CtmParams principal_regime(const models::XyzParams& p);
// Direct construction when l is known analytically (near-critical scans);
// avoids the cancellation in Jx^2 - Jy^2 that destroys l below ~1e-7.
CtmParams ctm_from_anisotropy(double l, double gamma_p);
// Level spacing of the CTM entanglement spectrum, pi lambda / I(k).
double ctm_level_spacing(const CtmParams& c);
// Leading asymptotics -pi^2 (1 - beta^2/8pi) / ln(l/4) for small l.
double ctm_spacing_asymptotic(double l, double beta2);

// Form-factor ingredients (Appendix-level couplings; this lambda is the
// form-factor coupling, unrelated to the CTM lambda above).
double ff_coupling_lambda(double xi,
                          const specfun::QuadratureSpec& quad = {});
// |R(i pi (1+xi))|; requires xi < 1/2 for convergence of the t-integral.
double ff_R_shifted(double xi, const specfun::QuadratureSpec& quad = {});
// R(theta + i pi); even in theta, requires xi < 1.
double ff_R_theta(double theta, double xi,
                  const specfun::QuadratureSpec& quad = {});

struct FormFactorTerms {
  bool include_vacuum = true;
  bool include_b1 = true;
  bool include_b2 = true;
  bool include_b1b1 = true;
  double theta_cutoff = 0.0; // 0: choose automatically from the K0 decay
  specfun::QuadratureSpec quad{1e-10, 1e-10, 2000};
};

// Static two-point function <e^{i beta phi(0)} e^{-i beta phi(r)}> from the
// form-factor expansion up to the second breather and the 2x(1-breather)
// continuum. r in the same units as u/m.
double two_point_ff(double r, const models::SgParams& sg,
                    const FormFactorTerms& terms = {});

} // namespace sgsim::analytics
