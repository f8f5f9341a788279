#include "sgsim/fits.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace sgsim::fits {

FitResult fit_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     std::size_t begin, std::size_t end) {
  if (xs.size() != ys.size()) throw FitError("fit_linear: size mismatch");
  if (end == kFullRange) end = xs.size();
  if (end > xs.size() || begin >= end) throw FitError("fit_linear: bad window");
  const std::size_t n = end - begin;
  if (n < 3) throw FitError("fit_linear: need at least 3 points");

  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    a(static_cast<Eigen::Index>(i), 0) = xs[begin + i];
    a(static_cast<Eigen::Index>(i), 1) = 1.0;
    y(static_cast<Eigen::Index>(i)) = ys[begin + i];
  }
  Eigen::Matrix2d gram = a.transpose() * a;
  Eigen::FullPivLU<Eigen::Matrix2d> lu(gram);
  if (!lu.isInvertible()) throw FitError("fit_linear: degenerate abscissae");
  Eigen::Vector2d beta = lu.solve(a.transpose() * y);

  Eigen::VectorXd resid = y - a * beta;
  const double rss = resid.squaredNorm();
  const double sigma2 = n > 2 ? rss / static_cast<double>(n - 2) : 0.0;
  Eigen::Matrix2d cov = sigma2 * lu.inverse();

  FitResult out;
  out.slope = beta(0);
  out.intercept = beta(1);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.covariance[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = cov(r, c);
  out.residual_rms = std::sqrt(rss / static_cast<double>(n));
  out.window_begin = begin;
  out.window_end = end;
  return out;
}

std::pair<std::size_t, std::size_t> interior_window(std::size_t n) {
  if (n >= 7) return {2, n - 2};
  if (n >= 5) return {1, n - 1};
  return {0, n};
}

CardyFit fit_cardy(const std::vector<std::pair<std::size_t, double>>& energies,
                   double c) {
  if (energies.size() < 4) throw FitError("fit_cardy: need at least 4 sizes");
  const auto n = static_cast<Eigen::Index>(energies.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  constexpr double pi = 3.14159265358979323846;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double len = static_cast<double>(energies[static_cast<std::size_t>(i)].first);
    if (len <= 0.0) throw FitError("fit_cardy: nonpositive length");
    a(i, 0) = len;                     // e0
    a(i, 1) = 1.0;                     // b
    a(i, 2) = -pi * c / (24.0 * len);  // u
    y(i) = energies[static_cast<std::size_t>(i)].second;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 3) throw FitError("fit_cardy: degenerate sizes");
  Eigen::Vector3d beta = qr.solve(y);
  CardyFit out;
  out.e0 = beta(0);
  out.b = beta(1);
  out.u = beta(2);
  out.residual_rms = std::sqrt((y - a * beta).squaredNorm() / static_cast<double>(n));
  return out;
}

double fit_central_charge(const std::vector<std::pair<double, double>>& xi_entropy) {
  if (xi_entropy.size() < 4) throw FitError("fit_central_charge: need at least 4 points");
  std::vector<double> xs, ys;
  xs.reserve(xi_entropy.size());
  ys.reserve(xi_entropy.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < xi_entropy.size(); ++i) {
    const double xi = xi_entropy[i].first;
    if (xi <= 0.0) throw FitError("fit_central_charge: nonpositive correlation length");
    if (i > 0 && xi <= prev)
      throw FitError("fit_central_charge: correlation lengths not increasing");
    prev = xi;
    xs.push_back(std::log(xi));
    ys.push_back(xi_entropy[i].second);
  }
  return 6.0 * fit_linear(xs, ys).slope;
}

double extract_es_spacing(const EntanglementSpectrum& spec) {
  if (spec.cluster_means.size() < 3)
    throw FitError("extract_es_spacing: fewer than 3 spectrum clusters");
  std::vector<double> xs = {0.0, 1.0, 2.0};
  std::vector<double> ys(spec.cluster_means.begin(), spec.cluster_means.begin() + 3);
  return fit_linear(xs, ys).slope;
}

} // namespace sgsim::fits
