#pragma once

#include "sgsim/mps.hpp"

#include <utility>
#include <vector>

// Read-only measurements on converged MPS: local expectations, two-point
// correlators, transfer-matrix correlation length, and entanglement data.

namespace sgsim {

// <psi| op_site |psi> / <psi|psi>. op is d x d. For infinite states `site`
// indexes into the unit cell.
cxd measure_local(const MpsState& psi, const DenseTensor& op, std::size_t site);

// <opA_i opB_{i+r}> for r = 1..r_max. Finite states anchor i at the center
// site (L/2) and require i + r_max < L; infinite states anchor at cell site 0.
std::vector<std::pair<std::size_t, cxd>> measure_two_point(const MpsState& psi,
                                                           const DenseTensor& op_a,
                                                           const DenseTensor& op_b,
                                                           std::size_t r_max);

// xi = -n_cell / ln|lambda_2| from the unit-cell transfer matrix (largest
// eigenvalue normalized away); infinite states only. A bond-dimension-1
// state has no subleading eigenvalue and returns 0. Throws NumericalError
// when |lambda_2| ~ |lambda_1| (non-injective / critical transfer matrix).
double correlation_length(const MpsState& psi);

// von Neumann entropy of the cut at `bond` (bond b sits between sites b and
// b+1; infinite states: 0 = center bond, 1 = outer bond).
double entanglement_entropy(const MpsState& psi, std::size_t bond);

struct EntanglementSpectrum {
  std::vector<double> levels;              // eps_n = -ln p_n + ln p_0, non-decreasing, eps_0 = 0
  std::vector<std::size_t> multiplicities; // degeneracy per distinct level (clustered)
  std::vector<double> cluster_means;       // one per cluster, same length as multiplicities
  double spacing = 0.0;                    // crude mean gap between the first clusters
};

EntanglementSpectrum entanglement_spectrum(const MpsState& psi, std::size_t bond,
                                           double cluster_tol_frac = 0.05);

} // namespace sgsim
