#include "sgsim/mps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace sgsim {

namespace {

// Gram matrix sum_p A_p^dag A_p (left) or sum_p A_p A_p^dag (right)
DenseTensor left_gram(const DenseTensor& a) {
  return contract(a.conj(), a, {{0, 0}, {1, 1}});
}
DenseTensor right_gram(const DenseTensor& a) {
  return contract(a, a.conj(), {{1, 1}, {2, 2}});
}

double identity_deviation(const DenseTensor& g) {
  const std::size_t n = g.extent(0);
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cxd want = (i == j) ? cxd(1.0) : cxd(0.0);
      dev = std::max(dev, std::abs(g({i, j}) - want));
    }
  return dev;
}

void require_isometry(const DenseTensor& g, double tol, const char* what) {
  const double dev = identity_deviation(g);
  if (dev > tol)
    throw NumericalError(std::string(what) + ": isometry violated by " +
                         std::to_string(dev));
}

} // namespace

void MpsState::check_canonical(double tol) const {
  if (sites.empty()) throw NumericalError("check_canonical: empty state");
  const std::size_t n = sites.size();
  auto check_left = [&](std::size_t i) {
    require_isometry(left_gram(sites[i]), tol, "left-canonical site");
  };
  auto check_right = [&](std::size_t i) {
    require_isometry(right_gram(sites[i]), tol, "right-canonical site");
  };
  switch (form) {
    case MpsForm::LeftCanonical:
      for (std::size_t i = 0; i < n; ++i) check_left(i);
      break;
    case MpsForm::RightCanonical:
      for (std::size_t i = 0; i < n; ++i) check_right(i);
      break;
    case MpsForm::Mixed:
      for (std::size_t i = 0; i < center; ++i) check_left(i);
      for (std::size_t i = center + 1; i < n; ++i) check_right(i);
      break;
    case MpsForm::InfiniteUnitCell:
      if (n != 2) throw NumericalError("check_canonical: unit cell must have 2 sites");
      check_left(0);
      check_right(1);
      break;
  }
  for (const auto& s : bond_spectra) {
    if (s.empty()) throw NumericalError("check_canonical: empty bond spectrum");
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i + 1 < s.size() && s[i + 1] > s[i] + 1e-14)
        throw NumericalError("check_canonical: bond spectrum not sorted");
      sum += s[i] * s[i];
    }
    if (std::abs(sum - 1.0) > tol)
      throw NumericalError("check_canonical: bond spectrum not normalized");
  }
}

MpsState random_finite_mps(std::size_t length, std::size_t local_dim,
                           std::size_t chi, std::uint64_t seed) {
  if (length < 2) throw DimensionError("random_finite_mps: length must be >= 2");
  if (local_dim < 2 || chi < 1)
    throw DimensionError("random_finite_mps: bad local_dim or chi");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);

  // exact maximal bond profile capped at chi
  std::vector<std::size_t> bonds(length + 1, 1);
  for (std::size_t i = 1; i < length; ++i) {
    const double from_left = std::pow(double(local_dim), double(i));
    const double from_right = std::pow(double(local_dim), double(length - i));
    const double cap = std::min({from_left, from_right, double(chi)});
    bonds[i] = static_cast<std::size_t>(cap);
  }

  MpsState psi;
  psi.local_dim = local_dim;
  psi.sites.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    DenseTensor t({bonds[i], local_dim, bonds[i + 1]});
    for (auto& x : t.data()) x = cxd(dist(rng), dist(rng));
    psi.sites.push_back(std::move(t));
  }
  right_canonicalize(psi);
  return psi;
}

MpsState product_mps(std::size_t length, const std::vector<cxd>& local_state) {
  if (local_state.empty()) throw DimensionError("product_mps: empty local state");
  double n2 = 0.0;
  for (const auto& x : local_state) n2 += std::norm(x);
  const double inv = 1.0 / std::sqrt(n2);
  MpsState psi;
  psi.local_dim = local_state.size();
  for (std::size_t i = 0; i < length; ++i) {
    DenseTensor t({1, local_state.size(), 1});
    for (std::size_t p = 0; p < local_state.size(); ++p)
      t({0, p, 0}) = local_state[p] * inv;
    psi.sites.push_back(std::move(t));
  }
  psi.bond_spectra.assign(length > 0 ? length - 1 : 0, {1.0});
  psi.form = MpsForm::RightCanonical; // product states are both-canonical
  return psi;
}

void right_canonicalize(MpsState& psi) {
  const std::size_t n = psi.sites.size();
  for (std::size_t i = n; i-- > 1;) {
    DenseTensor& m = psi.sites[i];
    const std::size_t l = m.extent(0), d = m.extent(1), r = m.extent(2);
    TruncationPolicy keep_all;
    keep_all.max_bond = std::min(l, d * r);
    auto svd = svd_truncate(m.reshape({l, d * r}), keep_all);
    const std::size_t k = svd.s.size();
    m = svd.v.reshape({k, d, r});
    // carry U.diag(s) into the previous site
    DenseTensor us({l, k});
    for (std::size_t a = 0; a < l; ++a)
      for (std::size_t b = 0; b < k; ++b) us({a, b}) = svd.u({a, b}) * svd.s[b];
    psi.sites[i - 1] = contract(psi.sites[i - 1], us, {{2, 0}});
  }
  // drop the leftover norm on the first site
  DenseTensor& first = psi.sites[0];
  const double nrm = first.norm();
  if (nrm == 0.0) throw NumericalError("right_canonicalize: zero state");
  first = first.scaled(1.0 / nrm);
  psi.form = MpsForm::RightCanonical;
  psi.center = 0;
}

double mps_norm(const MpsState& psi) {
  DenseTensor env = DenseTensor::identity(psi.sites[0].extent(0));
  for (const auto& a : psi.sites) {
    DenseTensor t = contract(env, a.conj(), {{0, 0}});
    env = contract(t, a, {{0, 0}, {1, 1}});
  }
  double tr = 0.0;
  for (std::size_t i = 0; i < env.extent(0); ++i) tr += std::real(env({i, i}));
  return std::sqrt(std::max(0.0, tr));
}

cxd mps_overlap(const MpsState& phi, const MpsState& psi) {
  if (phi.length() != psi.length() || phi.local_dim != psi.local_dim)
    throw DimensionError("mps_overlap: shape mismatch");
  DenseTensor env({phi.sites[0].extent(0), psi.sites[0].extent(0)});
  env({0, 0}) = 1.0;
  for (std::size_t i = 0; i < phi.length(); ++i) {
    DenseTensor t = contract(env, phi.sites[i].conj(), {{0, 0}});
    env = contract(t, psi.sites[i], {{0, 0}, {1, 1}});
  }
  return env({0, 0});
}

} // namespace sgsim
