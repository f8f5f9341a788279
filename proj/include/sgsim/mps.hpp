#pragma once

#include "sgsim/tensor.hpp"

#include <cstdint>
#include <vector>

// Matrix-product states: finite chains in canonical form and the two-site
// infinite unit cell produced by iDMRG.

namespace sgsim {

enum class MpsForm {
  LeftCanonical,
  RightCanonical,
  Mixed,            // left-isometric strictly left of `center`, right-isometric right of it
  InfiniteUnitCell, // sites = {A left-isometric, B right-isometric}
};

struct MpsState {
  // rank-3 site tensors (left-bond, physical, right-bond)
  std::vector<DenseTensor> sites;
  // finite: one spectrum per internal bond (length L-1), filled by DMRG;
  // infinite: {center spectrum between A and B, outer spectrum}
  std::vector<std::vector<double>> bond_spectra;
  MpsForm form = MpsForm::RightCanonical;
  std::size_t center = 0;
  std::size_t local_dim = 0;

  std::size_t length() const { return sites.size(); }
  bool infinite() const { return form == MpsForm::InfiniteUnitCell; }

  // verifies the isometry conditions the form claims, and that stored bond
  // spectra are non-increasing with unit 2-norm; throws NumericalError
  void check_canonical(double tol = 1e-10) const;
};

// Random finite MPS with bond dimension min(chi, exact maximum), normalized
// and right-canonicalized. Deterministic in the seed.
MpsState random_finite_mps(std::size_t length, std::size_t local_dim,
                           std::size_t chi, std::uint64_t seed);

// Product state |v>^{otimes L}.
MpsState product_mps(std::size_t length, const std::vector<cxd>& local_state);

// Sweeps SVDs right-to-left, dropping the overall norm; form becomes
// RightCanonical. Bond spectra are not filled (DMRG owns those).
void right_canonicalize(MpsState& psi);

double mps_norm(const MpsState& psi);

// <phi|psi> for finite states of equal shape.
cxd mps_overlap(const MpsState& phi, const MpsState& psi);

} // namespace sgsim
