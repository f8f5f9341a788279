#include "sgsim/measure.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace sgsim {

namespace {

// transfer step: env (bra, ket) -> env' after one site, optional operator
DenseTensor transfer(const DenseTensor& env, const DenseTensor& site,
                     const DenseTensor* op) {
  DenseTensor t = contract(env, site.conj(), {{0, 0}}); // (ket, p, bra')
  if (op) t = contract(t, *op, {{1, 0}});               // (ket, bra', q)
  else t = t.transpose({0, 2, 1});                      // (ket, bra', p)
  return contract(t, site, {{0, 0}, {2, 1}});           // (bra', ket')
}

cxd env_trace(const DenseTensor& env) {
  cxd out = 0.0;
  for (std::size_t i = 0; i < env.extent(0); ++i) out += env({i, i});
  return out;
}

cxd env_close_weighted(const DenseTensor& env, const std::vector<double>& lam) {
  cxd out = 0.0;
  for (std::size_t i = 0; i < env.extent(0); ++i) out += env({i, i}) * lam[i] * lam[i];
  return out;
}

void require_local_op(const MpsState& psi, const DenseTensor& op, const char* where) {
  if (op.rank() != 2 || op.extent(0) != psi.local_dim || op.extent(1) != psi.local_dim)
    throw DimensionError(std::string(where) + ": operator must be d x d");
}

// left-canonical unit cell {A, lam_c B lam_o^{-1}} plus the spectrum that
// closes each bond on the right: after site 0 -> lam_c, after site 1 -> lam_o
struct InfiniteCell {
  DenseTensor al[2];
  const std::vector<double>* close[2];
};

InfiniteCell left_cell(const MpsState& psi) {
  InfiniteCell cell;
  cell.al[0] = psi.sites[0];
  const auto& lam_c = psi.bond_spectra[0];
  const auto& lam_o = psi.bond_spectra[1];
  DenseTensor bl = psi.sites[1];
  const double cutoff = 1e-12 * lam_o.front();
  for (std::size_t a = 0; a < bl.extent(0); ++a)
    for (std::size_t p = 0; p < bl.extent(1); ++p)
      for (std::size_t c = 0; c < bl.extent(2); ++c) {
        const double inv = lam_o[c] > cutoff ? 1.0 / lam_o[c] : 0.0;
        bl({a, p, c}) *= lam_c[a] * inv;
      }
  cell.al[1] = bl;
  cell.close[0] = &lam_c;
  cell.close[1] = &lam_o;
  return cell;
}

} // namespace

cxd measure_local(const MpsState& psi, const DenseTensor& op, std::size_t site) {
  require_local_op(psi, op, "measure_local");
  if (psi.infinite()) {
    if (site > 1) throw DimensionError("measure_local: unit-cell site out of range");
    const InfiniteCell cell = left_cell(psi);
    DenseTensor env = DenseTensor::identity(cell.al[0].extent(0));
    if (site == 1) env = transfer(env, cell.al[0], nullptr);
    env = transfer(env, cell.al[site], &op);
    return env_close_weighted(env, *cell.close[site]);
  }
  if (site >= psi.length()) throw DimensionError("measure_local: site out of range");
  DenseTensor env({1, 1});
  env({0, 0}) = 1.0;
  for (std::size_t i = 0; i < psi.length(); ++i)
    env = transfer(env, psi.sites[i], i == site ? &op : nullptr);
  // running without canonical assumptions: divide by the norm
  DenseTensor nrm({1, 1});
  nrm({0, 0}) = 1.0;
  for (std::size_t i = 0; i < psi.length(); ++i)
    nrm = transfer(nrm, psi.sites[i], nullptr);
  return env_trace(env) / env_trace(nrm);
}

std::vector<std::pair<std::size_t, cxd>> measure_two_point(const MpsState& psi,
                                                           const DenseTensor& op_a,
                                                           const DenseTensor& op_b,
                                                           std::size_t r_max) {
  require_local_op(psi, op_a, "measure_two_point");
  require_local_op(psi, op_b, "measure_two_point");
  if (r_max < 1) throw DimensionError("measure_two_point: r_max must be >= 1");
  std::vector<std::pair<std::size_t, cxd>> out;
  out.reserve(r_max);

  if (psi.infinite()) {
    const InfiniteCell cell = left_cell(psi);
    DenseTensor env = DenseTensor::identity(cell.al[0].extent(0));
    env = transfer(env, cell.al[0], &op_a); // op_a anchored at cell site 0
    for (std::size_t r = 1; r <= r_max; ++r) {
      const std::size_t which = r % 2;
      DenseTensor closed = transfer(env, cell.al[which], &op_b);
      out.emplace_back(r, env_close_weighted(closed, *cell.close[which]));
      env = transfer(env, cell.al[which], nullptr);
    }
    return out;
  }

  const std::size_t i0 = psi.length() / 2;
  if (i0 + r_max >= psi.length())
    throw DimensionError("measure_two_point: r_max reaches past the chain end");
  // right norm environments renv[j] covering sites > j
  std::vector<DenseTensor> renv(psi.length());
  DenseTensor e({1, 1});
  e({0, 0}) = 1.0;
  renv[psi.length() - 1] = e;
  for (std::size_t j = psi.length() - 1; j > 0; --j) {
    DenseTensor t = contract(psi.sites[j].conj(), renv[j], {{2, 0}}); // (l, p, ket)
    renv[j - 1] = contract(t, psi.sites[j], {{1, 1}, {2, 2}});        // (bra, ket)
  }
  DenseTensor nrm({1, 1});
  nrm({0, 0}) = 1.0;
  for (std::size_t i = 0; i <= i0; ++i)
    nrm = transfer(nrm, psi.sites[i], i == i0 ? &op_a : nullptr);
  DenseTensor norm_env({1, 1});
  norm_env({0, 0}) = 1.0;
  for (std::size_t i = 0; i < psi.length(); ++i)
    norm_env = transfer(norm_env, psi.sites[i], nullptr);
  const cxd total_norm = env_trace(norm_env);

  DenseTensor env = nrm;
  for (std::size_t r = 1; r <= r_max; ++r) {
    DenseTensor closed = transfer(env, psi.sites[i0 + r], &op_b);
    cxd val = 0.0;
    const DenseTensor& re = renv[i0 + r];
    for (std::size_t x = 0; x < closed.extent(0); ++x)
      for (std::size_t y = 0; y < closed.extent(1); ++y)
        val += closed({x, y}) * re({x, y});
    out.emplace_back(r, val / total_norm);
    env = transfer(env, psi.sites[i0 + r], nullptr);
  }
  return out;
}

double correlation_length(const MpsState& psi) {
  if (!psi.infinite())
    throw DimensionError("correlation_length: infinite states only");
  const InfiniteCell cell = left_cell(psi);
  const std::size_t chi = cell.al[0].extent(0);
  const std::size_t dim = chi * chi;
  if (dim == 1) return 0.0; // product state: no subleading eigenvalue

  auto apply_t = [&](const Eigen::VectorXcd& x) {
    DenseTensor env({chi, chi});
    for (std::size_t i = 0; i < dim; ++i) env.data()[i] = x(Eigen::Index(i));
    env = transfer(env, cell.al[0], nullptr);
    env = transfer(env, cell.al[1], nullptr);
    Eigen::VectorXcd y(dim);
    for (std::size_t i = 0; i < dim; ++i) y(Eigen::Index(i)) = env.data()[i];
    return y;
  };

  // Arnoldi with a deterministic start biased towards the identity (the
  // leading eigenvector of a left-canonical transfer matrix). The Krylov
  // space must be large enough to resolve the subleading eigenvalue out of
  // the near-degenerate cluster that forms when the correlation length is
  // large, so it scales with the bond dimension.
  const std::size_t m = std::min<std::size_t>(dim, std::max<std::size_t>(6 * chi, 48));
  std::vector<Eigen::VectorXcd> basis;
  Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(m + 1, m);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (std::size_t i = 0; i < chi; ++i) v(Eigen::Index(i * chi + i)) = 1.0;
  for (std::size_t i = 0; i < dim; ++i) v(Eigen::Index(i)) += 1e-3 * std::cos(double(i + 1));
  v.normalize();
  basis.push_back(v);
  std::size_t steps = 0;
  for (std::size_t j = 0; j < m; ++j) {
    Eigen::VectorXcd wv = apply_t(basis[j]);
    for (std::size_t i = 0; i <= j; ++i) {
      hess(Eigen::Index(i), Eigen::Index(j)) = basis[i].dot(wv);
      wv -= hess(Eigen::Index(i), Eigen::Index(j)) * basis[i];
    }
    // re-orthogonalize once for stability
    for (std::size_t i = 0; i <= j; ++i) {
      const cxd c = basis[i].dot(wv);
      hess(Eigen::Index(i), Eigen::Index(j)) += c;
      wv -= c * basis[i];
    }
    const double nw = wv.norm();
    hess(Eigen::Index(j + 1), Eigen::Index(j)) = nw;
    steps = j + 1;
    if (nw < 1e-13) break; // invariant subspace found
    basis.push_back(wv / nw);
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(hess.topLeftCorner(
      Eigen::Index(steps), Eigen::Index(steps)));
  std::vector<double> mags(steps);
  for (std::size_t i = 0; i < steps; ++i) mags[i] = std::abs(es.eigenvalues()(Eigen::Index(i)));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  if (steps < 2 || mags[1] < 1e-300) return 0.0;
  const double ratio = mags[1] / mags[0];
  if (ratio >= 1.0 - 1e-12)
    throw NumericalError(
        "correlation_length: degenerate leading transfer eigenvalue "
        "(non-injective or critical state)");
  return -2.0 / std::log(ratio);
}

double entanglement_entropy(const MpsState& psi, std::size_t bond) {
  if (bond >= psi.bond_spectra.size())
    throw DimensionError("entanglement_entropy: bond out of range");
  double out = 0.0;
  for (double s : psi.bond_spectra[bond]) {
    const double p = s * s;
    if (p > 1e-300) out -= p * std::log(p);
  }
  return out;
}

EntanglementSpectrum entanglement_spectrum(const MpsState& psi, std::size_t bond,
                                           double cluster_tol_frac) {
  if (bond >= psi.bond_spectra.size())
    throw DimensionError("entanglement_spectrum: bond out of range");
  const auto& s = psi.bond_spectra[bond];
  EntanglementSpectrum out;
  out.levels.reserve(s.size());
  const double p0 = s.front() * s.front();
  for (double x : s) {
    const double p = x * x;
    if (p < 1e-300) continue;
    out.levels.push_back(std::log(p0) - std::log(p));
  }
  std::sort(out.levels.begin(), out.levels.end());
  out.levels.front() = 0.0; // exact by construction

  // spacing estimate from the first gap above numerical degeneracy
  double est = 0.0;
  for (std::size_t i = 1; i < out.levels.size(); ++i)
    if (out.levels[i] > 1e-6) {
      est = out.levels[i];
      break;
    }
  if (est == 0.0) est = 1.0; // all degenerate; tolerance then only groups exact ties

  std::vector<double> sums;
  for (double level : out.levels) {
    if (!sums.empty() &&
        level - sums.back() / double(out.multiplicities.back()) <=
            cluster_tol_frac * est) {
      sums.back() += level;
      ++out.multiplicities.back();
    } else {
      sums.push_back(level);
      out.multiplicities.push_back(1);
    }
  }
  out.cluster_means.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i)
    out.cluster_means[i] = sums[i] / double(out.multiplicities[i]);

  // crude mean gap over the first few clusters; harness fits do better
  if (out.cluster_means.size() >= 2) {
    const std::size_t n = std::min<std::size_t>(out.cluster_means.size(), 4);
    out.spacing = (out.cluster_means[n - 1] - out.cluster_means[0]) / double(n - 1);
  }
  return out;
}

} // namespace sgsim
