#include "sgsim/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace sgsim::specfun {

namespace {

// Carlson symmetric form R_F by the duplication theorem.
double carlson_rf(double x, double y, double z) {
  constexpr double errtol = 1e-10;
  double dx, dy, dz, avg;
  do {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    avg = (x + y + z) / 3.0;
    dx = (avg - x) / avg;
    dy = (avg - y) / avg;
    dz = (avg - z) / avg;
  } while (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > errtol);
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 * (e2 / 24.0 - e3 * 3.0 / 44.0 - 0.1) + e3 / 14.0)) / std::sqrt(avg);
}

double agm(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    if (std::abs(a - b) <= 1e-16 * an) break;
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

// Jacobi sn, cn, dn by descending Landen (AGM) recursion; k is the modulus.
void jacobi_sn_cn_dn(double u, double k, double& sn, double& cn, double& dn) {
  if (k < 1e-12) {
    sn = std::sin(u);
    cn = std::cos(u);
    dn = 1.0;
    return;
  }
  const double kp2 = (1.0 - k) * (1.0 + k);
  if (kp2 < 1e-24) {
    sn = std::tanh(u);
    cn = 1.0 / std::cosh(u);
    dn = cn;
    return;
  }
  std::vector<double> as, bs, cs;
  double a = 1.0, b = std::sqrt(kp2), c = k;
  as.push_back(a);
  bs.push_back(b);
  cs.push_back(c);
  while (std::abs(cs.back()) > 1e-16 * as.back() && as.size() < 64) {
    const double an = 0.5 * (a + b);
    const double cn_ = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    c = cn_;
    as.push_back(a);
    bs.push_back(b);
    cs.push_back(c);
  }
  const int n = static_cast<int>(as.size()) - 1;
  double phi = std::ldexp(as[static_cast<std::size_t>(n)] * u, n);
  double phi_prev = phi;
  for (int i = n; i > 0; --i) {
    phi_prev = phi;
    phi = 0.5 * (phi + std::asin(std::clamp(
                           cs[static_cast<std::size_t>(i)] / as[static_cast<std::size_t>(i)] *
                               std::sin(phi),
                           -1.0, 1.0)));
  }
  sn = std::sin(phi);
  cn = std::cos(phi);
  const double denom = std::cos(phi_prev - phi);
  dn = denom != 0.0 ? cn / denom : std::sqrt(1.0 - k * k * sn * sn);
}

} // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn requires x > 0");
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  return std::lgamma(x);
}

double elliptic_I(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic_I requires 0 <= k < 1");
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  return kPi / (2.0 * agm(1.0, kp));
}

double elliptic_I_from_kprime(double kprime) {
  if (!(kprime > 0.0 && kprime <= 1.0))
    throw DomainError("elliptic_I_from_kprime requires 0 < k' <= 1");
  return kPi / (2.0 * agm(1.0, kprime));
}

double elliptic_F(double phi, double k) {
  if (!(phi >= 0.0 && phi <= kPi / 2.0 + 1e-15))
    throw DomainError("elliptic_F requires phi in [0, pi/2]");
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("elliptic_F requires 0 <= k <= 1");
  if (k == 1.0 && phi >= kPi / 2.0 - 1e-15)
    throw DomainError("elliptic_F diverges at phi = pi/2, k = 1");
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  if (s == 0.0) return 0.0;
  return s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0);
}

double lambda_from_sn(double target, double k) {
  if (!(target >= 0.0)) throw DomainError("lambda_from_sn requires target >= 0");
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("lambda_from_sn requires 0 <= k < 1");
  // -i sn(i*lambda, k) = sn(lambda, k')/cn(lambda, k'), inverted through F
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  return elliptic_F(std::atan(target), kp);
}

double sn_ratio_imag(double lambda, double k) {
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  double sn, cn, dn;
  jacobi_sn_cn_dn(lambda, kp, sn, cn, dn);
  return sn / cn;
}

double bessel_k0(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0 requires x > 0");
  return std::cyl_bessel_k(0.0, x);
}

namespace {

// 15-point Gauss-Kronrod nodes and weights on [-1,1] (7-point Gauss embedded).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int j = 0; j < 7; ++j) {
    const double fv1 = f(c - h * kXgk[j]);
    const double fv2 = f(c + h * kXgk[j]);
    resk += kWgk[j] * (fv1 + fv2);
    if (j % 2 == 1) resg += kWg[j / 2] * (fv1 + fv2);
  }
  const double fc = f(c);
  resk += kWgk[7] * fc;
  resg += kWg[3] * fc;
  Segment s;
  s.a = a;
  s.b = b;
  s.value = resk * h;
  s.error = std::abs((resk - resg) * h);
  return s;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
    throw DomainError("quadrature tolerances must be positive");
  std::function<double(double)> g = f;
  double lo = a, hi = b;
  if (std::isinf(b)) {
    // x = a + t/(1-t) maps [0,1) onto [a, inf)
    g = [f, a](double t) {
      const double om = 1.0 - t;
      const double x = a + t / om;
      return f(x) / (om * om);
    };
    lo = 0.0;
    hi = 1.0 - 1e-15;
  }
  std::priority_queue<Segment> segs;
  Segment first = gk15(g, lo, hi);
  double total = first.value;
  double toterr = first.error;
  segs.push(first);
  int n = 1;
  while (toterr > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (n >= spec.max_subdivisions)
      throw ConvergenceError("quadrature subdivision budget exhausted", total, toterr);
    Segment worst = segs.top();
    segs.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment l = gk15(g, worst.a, mid);
    Segment r = gk15(g, mid, worst.b);
    total += l.value + r.value - worst.value;
    toterr += l.error + r.error - worst.error;
    segs.push(l);
    segs.push(r);
    ++n;
  }
  return total;
}

} // namespace sgsim::specfun
