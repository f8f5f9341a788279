#pragma once

#include <functional>
#include <stdexcept>

// Special functions and adaptive quadrature backing the field-theory
// analytics: Gamma, complete/incomplete elliptic integrals in the modulus
// (Baxter) convention, Jacobi-elliptic parameter inversion and K0.

namespace sgsim::specfun {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ConvergenceError : std::runtime_error {
  double best_estimate;
  double error_bound;
  ConvergenceError(const std::string& what, double best, double bound)
      : std::runtime_error(what), best_estimate(best), error_bound(bound) {}
};

double gamma_fn(double x);   // x > 0
double log_gamma(double x);  // x > 0

// Complete elliptic integral of the first kind, argument is the modulus k.
double elliptic_I(double k);
// Same integral evaluated from the complementary modulus k' = sqrt(1-k^2);
// accurate for k close to 1 where 1-k underflows in the direct route.
double elliptic_I_from_kprime(double kprime);
// Incomplete integral F(phi, k), phi in [0, pi/2], 0 <= k < 1.
double elliptic_F(double phi, double k);
// Solves -i*sn(i*lambda, k) = target for lambda >= 0.
double lambda_from_sn(double target, double k);
// Forward evaluation sn(lambda, k')/cn(lambda, k') used as the round-trip check.
double sn_ratio_imag(double lambda, double k);
// Modified Bessel function of the second kind, order zero, x > 0.
double bessel_k0(double x);

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;
};

// Adaptive Gauss-Kronrod integration; pass b = +infinity for a semi-infinite
// range (mapped onto a finite interval internally).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

} // namespace sgsim::specfun
