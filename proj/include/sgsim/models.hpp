#pragma once

#include "sgsim/mpo.hpp"

#include <cstddef>
#include <optional>

// The two lattice regularizations of the sine-Gordon model (Josephson
// junction array and XYZ chain) as MPOs, plus the maps between lattice
// couplings and continuum field-theory parameters, in both directions.

namespace sgsim::models {

struct QecParams {
  double e_c0 = 1.0;  // charging energy, sets the overall scale
  double delta = 0.2; // nearest-neighbor charging coupling
  double e_g = 0.0;   // gate energy
  double e_j = 0.0;   // horizontal junction energy
  double e_j0 = 0.0;  // vertical junction energy
  int n_max = 4;      // charge truncation, local dimension 2 n_max + 1
  double a = 1.0;     // lattice spacing

  std::size_t local_dim() const { return static_cast<std::size_t>(2 * n_max + 1); }
  void validate() const;
};

struct XyzParams {
  double jx = 1.0;
  double jy = 1.0;
  double jz = 0.0;

  // Jx >= Jy >= |Jz|: the regime in which the scaling-limit formulas hold.
  // Violations are a warning, not an error; the harness scans do leave it.
  bool in_scaling_regime() const { return jx >= jy && jy >= std::abs(jz); }
};

struct SgParams {
  double beta2 = 0.0;  // coupling squared, in (0, 8 pi)
  double xi_sg = 0.0;  // beta^2 / (8 pi - beta^2)
  double m0 = 0.0;     // mass-parameter of the action
  double m = 0.0;      // soliton mass
  double u = 0.0;      // plasmon velocity (supplied externally when known)
  double a = 1.0;      // lattice spacing
};

// Charge-lowering shift S|n> = |n-1> on the truncated basis n = -n_max..n_max
// (ascending); cos(phi) = (S + S^dag)/2. The commutator [n, S] = -S holds
// exactly away from the truncation edge.
DenseTensor vertex_operator_matrix(int n_max);
DenseTensor charge_number_matrix(int n_max);

// Pauli matrices and spin raising/lowering, for measurements.
DenseTensor pauli_x();
DenseTensor pauli_y();
DenseTensor pauli_z();
DenseTensor sigma_plus();
DenseTensor sigma_minus();

// H = E_C0 sum n_i^2 + delta E_C0 sum n_i n_{i+1} - E_g sum n_i
//     - E_J sum cos(phi_i - phi_{i+1}) - E_J0 sum cos(phi_i).
// length = 0 builds the translation-invariant (infinite) MPO.
MpoOperator build_qec_mpo(const QecParams& p, std::size_t length);

// H = -(1/2) sum [Jx XX + Jy YY + Jz ZZ].
MpoOperator build_xyz_mpo(const XyzParams& p, std::size_t length);

struct LuttingerEstimate {
  double u = 0.0;
  double k = 0.0;
};
// Perturbative estimates for E_J >> E_C0.
LuttingerEstimate perturbative_luttinger(const QecParams& p);

// beta^2 = pi K; M0 = E_J0 a^{-(1-beta^2/4pi)} / E_C0. The soliton mass is
// filled from the exact mass formula; u, when known (Cardy fit or the
// perturbative estimate), can be passed in.
SgParams qec_to_sg(double luttinger_k, const QecParams& p,
                   std::optional<double> u = std::nullopt);

struct XyzScalingResult {
  SgParams sg;
  double l = 0.0;      // anisotropy parameter
  double xi_xyz = 0.0; // correlation length, lattice units
  bool regime_warning = false;
};
XyzScalingResult xyz_to_sg(const XyzParams& p, double a = 1.0);

// Inverse map at Jx = 1. Throws outside the scaling window (xi_xyz < 1)
// unless allow_outside_scaling is set; the corrections-to-scaling scans
// deliberately continue into that region.
XyzParams sg_to_xyz(double beta2, double m_target, double a = 1.0,
                    bool allow_outside_scaling = false);

// Soliton mass from the measured <sigma^+> by eliminating the unknown
// continuum VEV: M = (4/a) [2 (1 - beta^2/8pi) sigma_vev]^{16 pi / beta^2}.
double soliton_mass_from_sigma(double sigma_vev, double beta2, double a = 1.0);

} // namespace sgsim::models
