#include "sgsim/analytics.hpp"

#include <cmath>
#include <limits>

namespace sgsim::analytics {

using specfun::kPi;

double xi_sg(double beta2) {
  if (!(beta2 > 0.0 && beta2 < 8.0 * kPi))
    throw DomainError("xi_sg: beta^2 must lie in (0, 8 pi)");
  return beta2 / (8.0 * kPi - beta2);
}

double beta2_from_xi(double xi) {
  if (!(xi > 0.0)) throw DomainError("beta2_from_xi: xi must be > 0");
  return 8.0 * kPi * xi / (1.0 + xi);
}

double soliton_mass(double beta2, double m0) {
  if (!(beta2 > 0.0 && beta2 < 8.0 * kPi))
    throw DomainError("soliton_mass: beta^2 must lie in (0, 8 pi)");
  if (m0 < 0.0) throw DomainError("soliton_mass: M0 must be >= 0");
  if (m0 == 0.0) return 0.0;
  const double b8 = beta2 / (8.0 * kPi);
  const double xi = xi_sg(beta2);
  using specfun::log_gamma;
  const double log_prefactor = std::log(2.0) + log_gamma(xi / 2.0) -
                               0.5 * std::log(kPi) - log_gamma((1.0 + xi) / 2.0);
  const double log_base = std::log(m0) + std::log(kPi) + log_gamma(1.0 - b8) -
                          std::log(2.0) - log_gamma(b8);
  return std::exp(log_prefactor + log_base / (2.0 - beta2 / (4.0 * kPi)));
}

double mass_parameter_from_soliton(double beta2, double m) {
  if (m < 0.0) throw DomainError("mass_parameter_from_soliton: M must be >= 0");
  if (m == 0.0) return 0.0;
  const double b8 = beta2 / (8.0 * kPi);
  const double xi = xi_sg(beta2);
  using specfun::log_gamma;
  const double log_prefactor = std::log(2.0) + log_gamma(xi / 2.0) -
                               0.5 * std::log(kPi) - log_gamma((1.0 + xi) / 2.0);
  const double log_q = std::log(kPi) + log_gamma(1.0 - b8) - std::log(2.0) -
                       log_gamma(b8);
  return std::exp((std::log(m) - log_prefactor) * (2.0 - beta2 / (4.0 * kPi)) - log_q);
}

double breather_mass(int n, double m, double beta2) {
  const double xi = xi_sg(beta2);
  if (n < 1 || n > static_cast<int>(std::floor(1.0 / xi)))
    throw DomainError("breather_mass: breather n does not exist at this coupling");
  return 2.0 * m * std::sin(n * kPi * xi / 2.0);
}

double vacuum_energy_density(double m, double beta2) {
  const double xi = xi_sg(beta2);
  if (!(xi < 1.0))
    throw DomainError(
        "vacuum_energy_density: diverges for xi >= 1 (free-fermion point and beyond)");
  return -(m * m / 4.0) * std::tan(kPi * xi / 2.0);
}

double vertex_vev(double beta2, double m1) {
  if (!(beta2 > 0.0 && beta2 < 8.0 * kPi))
    throw DomainError("vertex_vev: beta^2 must lie in (0, 8 pi)");
  if (!(m1 > 0.0)) throw DomainError("vertex_vev: m1 must be > 0");
  const double xi = xi_sg(beta2);
  const double b8 = beta2 / (8.0 * kPi);
  const double s = std::sin(kPi * xi);
  if (std::abs(s) < 1e-300) throw DomainError("vertex_vev: sin(pi xi) vanishes");
  using specfun::log_gamma;
  const double log_pref = std::log1p(xi) + std::log(kPi) - std::log(16.0) -
                          std::log(s) + log_gamma(1.0 - b8) - log_gamma(b8);
  const double log_bracket = log_gamma((1.0 + xi) / 2.0) + log_gamma(1.0 - xi / 2.0) -
                             std::log(4.0) - 0.5 * std::log(kPi);
  const double p = beta2 / (4.0 * kPi);
  return std::exp(log_pref + (p - 2.0) * log_bracket + p * std::log(m1));
}

CtmParams ctm_from_anisotropy(double l, double gamma_p) {
  if (!(l >= 0.0 && l <= 1.0))
    throw DomainError("ctm_from_anisotropy: l must lie in [0, 1]");
  if (!(std::abs(gamma_p) <= 1.0))
    throw DomainError("ctm_from_anisotropy: |Gamma_p| must be <= 1");
  CtmParams c;
  c.gamma_p = gamma_p;
  // invert l^2 = (Delta^2 - 1)/(Delta^2 - Gamma^2) for Delta < 0
  c.delta_p = -std::sqrt((1.0 - l * l * gamma_p * gamma_p) / (1.0 - l * l));
  c.l = l;
  c.k = (1.0 - l) / (1.0 + l);
  const double kprime = 2.0 * std::sqrt(l) / (1.0 + l);
  const double target = std::sqrt((1.0 - gamma_p) / (1.0 + gamma_p) / c.k);
  c.lambda = specfun::elliptic_F(std::atan(target), kprime);
  return c;
}

CtmParams principal_regime(const models::XyzParams& p) {
  // Eq-level mapping: J^p = (Jy, -Jz, -Jx) requires Jx >= Jy >= |Jz|
  if (!(p.jx >= p.jy && p.jy >= std::abs(p.jz)))
    throw DomainError(
        "principal_regime: couplings must satisfy Jx >= Jy >= |Jz| "
        "(permute Jy and Jz before calling when outside)");
  CtmParams c;
  c.gamma_p = -p.jz / p.jy;
  c.delta_p = -p.jx / p.jy;
  // 1 - r^2 = (Delta^2 - 1)/(Delta^2 - Gamma^2) = l^2 exactly, giving
  // (1-k)/(1+k) = l without cancellation near k = 1
  const double l2 = (p.jx * p.jx - p.jy * p.jy) / (p.jx * p.jx - p.jz * p.jz);
  c.l = std::sqrt(std::max(0.0, l2));
  c.k = (1.0 - c.l) / (1.0 + c.l);
  const double kprime = 2.0 * std::sqrt(c.l) / (1.0 + c.l);
  const double target = std::sqrt((1.0 - c.gamma_p) / (1.0 + c.gamma_p) / c.k);
  c.lambda = specfun::elliptic_F(std::atan(target), kprime);
  return c;
}

double ctm_level_spacing(const CtmParams& c) {
  if (!(c.l > 0.0)) throw DomainError("ctm_level_spacing: critical point (l = 0)");
  const double kprime = 2.0 * std::sqrt(c.l) / (1.0 + c.l);
  return kPi * c.lambda / specfun::elliptic_I_from_kprime(kprime);
}

double ctm_spacing_asymptotic(double l, double beta2) {
  if (!(l > 0.0 && l < 4.0))
    throw DomainError("ctm_spacing_asymptotic: requires 0 < l < 4");
  return -kPi * kPi * (1.0 - beta2 / (8.0 * kPi)) / std::log(l / 4.0);
}

namespace {

double log_sinh(double x) {
  // x > 0
  return x < 20.0 ? std::log(std::sinh(x)) : x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
}

// log of the shared kernel sinh(t) sinh(t xi) sinh(t(1+xi)) / sinh^2(2t)
double log_r_kernel(double t, double xi) {
  return log_sinh(t) + log_sinh(t * xi) + log_sinh(t * (1.0 + xi)) -
         2.0 * log_sinh(2.0 * t);
}

double r_kernel(double t, double xi) {
  if (t < 1e-6) return t * xi * (1.0 + xi) / 4.0; // leading order
  return std::exp(log_r_kernel(t, xi));
}

} // namespace

double ff_coupling_lambda(double xi, const specfun::QuadratureSpec& quad) {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("ff_coupling_lambda: xi in (0,1)");
  const double integral = specfun::integrate(
      [](double t) { return t == 0.0 ? 1.0 : t / std::sin(t); }, 0.0, kPi * xi, quad);
  return 2.0 * std::cos(kPi * xi / 2.0) * std::sqrt(2.0 * std::sin(kPi * xi / 2.0)) *
         std::exp(-integral / (2.0 * kPi));
}

double ff_R_shifted(double xi, const specfun::QuadratureSpec& quad) {
  if (!(xi > 0.0 && xi < 0.5))
    throw DomainError(
        "ff_R_shifted: integrand decays as exp(-t(2-4 xi)), needs xi < 1/2");
  const double integral = specfun::integrate(
      [xi](double t) {
        if (t < 1e-9) return xi * (1.0 + xi); // t -> 0 limit
        // sinh^2(t xi) * kernel overflows separately at large t; combine in
        // log space (total decays as exp(-t(2 - 4 xi)))
        const double lk = log_r_kernel(t, xi);
        return 8.0 / t *
               (std::exp(lk + 2.0 * log_sinh(t * xi)) + 0.5 * std::exp(lk));
      },
      0.0, std::numeric_limits<double>::infinity(), quad);
  return std::exp(integral);
}

double ff_R_theta(double theta, double xi, const specfun::QuadratureSpec& quad) {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("ff_R_theta: xi in (0,1)");
  const double integral = specfun::integrate(
      [xi, theta](double t) {
        if (t < 1e-9) return xi * (1.0 + xi) / 2.0; // 8 * kernel/t * (1/2)
        const double s = std::sin(t * theta / kPi);
        return 8.0 / t * r_kernel(t, xi) * (0.5 - s * s);
      },
      0.0, std::numeric_limits<double>::infinity(), quad);
  return std::exp(integral);
}

double two_point_ff(double r, const models::SgParams& sg, const FormFactorTerms& terms) {
  if (!(r > 0.0)) throw DomainError("two_point_ff: r must be > 0");
  if (!(sg.u > 0.0 && sg.m > 0.0))
    throw DomainError("two_point_ff: requires positive u and M");
  const double xi = xi_sg(sg.beta2);
  const double m1 = breather_mass(1, sg.m, sg.beta2);
  const double lam = ff_coupling_lambda(xi, terms.quad);
  const double lam2 = lam * lam;
  const double gb = vertex_vev(sg.beta2, m1);

  double bracket = terms.include_vacuum ? 1.0 : 0.0;
  if (terms.include_b1) bracket += lam2 / kPi * specfun::bessel_k0(m1 * r / sg.u);

  if (terms.include_b2) {
    if (!(xi < 0.5))
      throw DomainError("two_point_ff: the second breather does not exist (xi >= 1/2)");
    const double s2 = std::sin(2.0 * kPi * xi);
    if (std::abs(s2) < 1e-12)
      throw DomainError("two_point_ff: sin(2 pi xi) too close to zero");
    const double m2 = breather_mass(2, sg.m, sg.beta2);
    const double rs = ff_R_shifted(xi, terms.quad);
    const double s1 = std::sin(kPi * xi);
    bracket += lam2 * lam2 / (kPi * rs * rs) * (s1 * s1 / s2) *
               specfun::bessel_k0(m2 * r / sg.u);
  }

  if (terms.include_b1b1) {
    const double arg = 2.0 * m1 * r / sg.u;
    double cutoff = terms.theta_cutoff;
    if (cutoff <= 0.0) cutoff = 2.0 * std::acosh(1.0 + 40.0 / arg);
    const double spx = std::sin(kPi * xi);
    auto integrand = [&](double th) {
      const double sh = std::sinh(th);
      const double frac = sh * sh / (sh * sh + spx * spx);
      const double rt = ff_R_theta(th, xi, terms.quad);
      return frac / (rt * rt) * specfun::bessel_k0(arg * std::cosh(th / 2.0));
    };
    // even integrand: integrate the half-line and double
    specfun::QuadratureSpec outer = terms.quad;
    outer.abs_tol = std::max(outer.abs_tol, 1e-9);
    outer.rel_tol = std::max(outer.rel_tol, 1e-8);
    const double integral = 2.0 * specfun::integrate(integrand, 0.0, cutoff, outer);
    bracket += lam2 * lam2 / (2.0 * kPi) * integral / (2.0 * kPi);
  }

  return gb * gb * bracket;
}

} // namespace sgsim::analytics
