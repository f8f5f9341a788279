#pragma once

#include "sgsim/mpo.hpp"
#include "sgsim/mps.hpp"

#include <cstdint>
#include <random>
#include <vector>

// Environment contractions shared by the finite and infinite DMRG drivers.
// Environments are rank-3 (bra-bond, mpo-bond, ket-bond).

namespace sgsim::detail {

inline DenseTensor trivial_env(const std::vector<cxd>& boundary) {
  DenseTensor e({1, boundary.size(), 1});
  for (std::size_t w = 0; w < boundary.size(); ++w) e({0, w, 0}) = boundary[w];
  return e;
}

// absorb site tensor a and MPO tensor w into a left environment
inline DenseTensor grow_left(const DenseTensor& env, const DenseTensor& a,
                             const DenseTensor& w) {
  DenseTensor t = contract(env, a.conj(), {{0, 0}});   // (w, kl, p, br)
  DenseTensor t2 = contract(t, w, {{0, 0}, {2, 1}});   // (kl, br, q, wr)
  return contract(t2, a, {{0, 0}, {2, 1}});            // (br, wr, kr)
}

// absorb site tensor a and MPO tensor w into a right environment
inline DenseTensor grow_right(const DenseTensor& env, const DenseTensor& a,
                              const DenseTensor& w) {
  DenseTensor t = contract(env, a.conj(), {{0, 2}});   // (w, kr, bl, p)
  DenseTensor t2 = contract(t, w, {{0, 3}, {3, 1}});   // (kr, bl, wl, q)
  return contract(t2, a, {{0, 2}, {3, 1}});            // (bl, wl, kl)
}

// y = H_eff theta for the two-site wavefunction (l, p1, p2, r)
inline DenseTensor apply_two_site(const DenseTensor& lenv, const DenseTensor& renv,
                                  const DenseTensor& w1, const DenseTensor& w2,
                                  const DenseTensor& theta) {
  DenseTensor t = contract(lenv, theta, {{2, 0}});      // (bl, w, p1, p2, r)
  DenseTensor t2 = contract(t, w1, {{1, 0}, {2, 2}});   // (bl, p2, r, q1, w')
  DenseTensor t3 = contract(t2, w2, {{4, 0}, {1, 2}});  // (bl, r, q1, q2, w'')
  DenseTensor t4 = contract(t3, renv, {{4, 1}, {1, 2}}); // (bl, q1, q2, br)
  return t4;
}

// normalized random two-site wavefunction
inline DenseTensor random_theta(std::size_t l, std::size_t d, std::size_t r,
                                std::mt19937_64& rng) {
  DenseTensor theta({l, d, d, r});
  std::normal_distribution<double> dist(0.0, 1.0);
  for (auto& x : theta.data()) x = cxd(dist(rng), dist(rng));
  const double n = theta.norm();
  return theta.scaled(1.0 / n);
}

} // namespace sgsim::detail
