#include "sgsim/models.hpp"

#include "sgsim/analytics.hpp"
#include "sgsim/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace sgsim::models {

using specfun::kPi;

void QecParams::validate() const {
  if (!(e_c0 > 0.0)) throw specfun::DomainError("QecParams: E_C0 must be > 0");
  if (n_max < 1) throw specfun::DomainError("QecParams: n_max must be >= 1");
  if (!(delta >= 0.0 && delta < 1.0))
    throw specfun::DomainError("QecParams: delta must lie in [0,1)");
}

DenseTensor vertex_operator_matrix(int n_max) {
  if (n_max < 1) throw specfun::DomainError("vertex_operator_matrix: n_max >= 1");
  const std::size_t d = static_cast<std::size_t>(2 * n_max + 1);
  DenseTensor s({d, d});
  // basis |n>, n = -n_max..n_max ascending; S|n> = |n-1>
  for (std::size_t col = 1; col < d; ++col) s({col - 1, col}) = 1.0;
  return s;
}

DenseTensor charge_number_matrix(int n_max) {
  const std::size_t d = static_cast<std::size_t>(2 * n_max + 1);
  DenseTensor n({d, d});
  for (std::size_t i = 0; i < d; ++i)
    n({i, i}) = static_cast<double>(static_cast<int>(i) - n_max);
  return n;
}

DenseTensor pauli_x() { return DenseTensor::from_matrix({{0, 1}, {1, 0}}); }
DenseTensor pauli_y() {
  return DenseTensor::from_matrix({{0, cxd{0, -1}}, {cxd{0, 1}, 0}});
}
DenseTensor pauli_z() { return DenseTensor::from_matrix({{1, 0}, {0, -1}}); }
DenseTensor sigma_plus() { return DenseTensor::from_matrix({{0, 1}, {0, 0}}); }
DenseTensor sigma_minus() { return DenseTensor::from_matrix({{0, 0}, {1, 0}}); }

namespace {

void place_block(DenseTensor& w, std::size_t row, std::size_t col,
                 const DenseTensor& op, cxd factor = 1.0) {
  const std::size_t d = op.extent(0);
  for (std::size_t o = 0; o < d; ++o)
    for (std::size_t i = 0; i < d; ++i) w({row, o, i, col}) = factor * op({o, i});
}

} // namespace

MpoOperator build_qec_mpo(const QecParams& p, std::size_t length) {
  p.validate();
  const std::size_t d = p.local_dim();
  const DenseTensor s = vertex_operator_matrix(p.n_max);
  const DenseTensor sdag = s.conj().transpose({1, 0});
  const DenseTensor n = charge_number_matrix(p.n_max);
  const DenseTensor id = DenseTensor::identity(d);

  // onsite: E_C0 n^2 - E_g n - E_J0 (S + S^dag)/2
  DenseTensor onsite({d, d});
  for (std::size_t i = 0; i < d; ++i) {
    const double q = static_cast<double>(static_cast<int>(i) - p.n_max);
    onsite({i, i}) = p.e_c0 * q * q - p.e_g * q;
  }
  onsite = onsite + s.scaled(-p.e_j0 / 2.0) + sdag.scaled(-p.e_j0 / 2.0);

  // bond 5 MPO: 0 identity-in, 1..3 carriers (n, S, S^dag), 4 identity-out
  const std::size_t w = 5;
  DenseTensor bulk({w, d, d, w});
  place_block(bulk, 0, 0, id);
  place_block(bulk, 0, 1, n);
  place_block(bulk, 0, 2, s);
  place_block(bulk, 0, 3, sdag);
  place_block(bulk, 0, 4, onsite);
  place_block(bulk, 1, 4, n, p.delta * p.e_c0);
  place_block(bulk, 2, 4, sdag, -p.e_j / 2.0); // S_i S^dag_{i+1}
  place_block(bulk, 3, 4, s, -p.e_j / 2.0);    // S^dag_i S_{i+1}
  place_block(bulk, 4, 4, id);

  std::vector<cxd> lb(w, 0.0), rb(w, 0.0);
  lb[0] = 1.0;
  rb[4] = 1.0;
  if (length == 0) {
    MpoOperator mpo;
    mpo.local_dim = d;
    mpo.infinite = true;
    mpo.sites = {bulk};
    mpo.left_boundary = lb;
    mpo.right_boundary = rb;
    return mpo;
  }
  return finite_mpo_from_bulk(bulk, lb, rb, length, d);
}

MpoOperator build_xyz_mpo(const XyzParams& p, std::size_t length) {
  const std::size_t d = 2;
  const DenseTensor id = DenseTensor::identity(2);
  const DenseTensor sx = pauli_x(), sy = pauli_y(), sz = pauli_z();

  const std::size_t w = 5;
  DenseTensor bulk({w, d, d, w});
  place_block(bulk, 0, 0, id);
  place_block(bulk, 0, 1, sx);
  place_block(bulk, 0, 2, sy);
  place_block(bulk, 0, 3, sz);
  place_block(bulk, 1, 4, sx, -p.jx / 2.0);
  place_block(bulk, 2, 4, sy, -p.jy / 2.0);
  place_block(bulk, 3, 4, sz, -p.jz / 2.0);
  place_block(bulk, 4, 4, id);

  std::vector<cxd> lb(w, 0.0), rb(w, 0.0);
  lb[0] = 1.0;
  rb[4] = 1.0;
  if (length == 0) {
    MpoOperator mpo;
    mpo.local_dim = d;
    mpo.infinite = true;
    mpo.sites = {bulk};
    mpo.left_boundary = lb;
    mpo.right_boundary = rb;
    return mpo;
  }
  return finite_mpo_from_bulk(bulk, lb, rb, length, d);
}

LuttingerEstimate perturbative_luttinger(const QecParams& p) {
  if (!(p.e_j > 0.0)) throw specfun::DomainError("perturbative_luttinger: E_J > 0");
  LuttingerEstimate est;
  est.u = p.a * std::sqrt(2.0 * p.e_c0 * p.e_j);
  est.k = std::sqrt(2.0 * p.e_c0 / p.e_j) / (2.0 * kPi);
  return est;
}

SgParams qec_to_sg(double luttinger_k, const QecParams& p, std::optional<double> u) {
  if (!(luttinger_k > 0.0 && luttinger_k < 8.0))
    throw specfun::DomainError("qec_to_sg: K must lie in (0, 8)");
  SgParams sg;
  sg.beta2 = kPi * luttinger_k;
  sg.xi_sg = analytics::xi_sg(sg.beta2);
  sg.a = p.a;
  sg.m0 = p.e_j0 * std::pow(p.a, -(1.0 - sg.beta2 / (4.0 * kPi))) / p.e_c0;
  sg.m = sg.m0 > 0.0 ? analytics::soliton_mass(sg.beta2, sg.m0) : 0.0;
  sg.u = u.value_or(0.0);
  return sg;
}

XyzScalingResult xyz_to_sg(const XyzParams& p, double a) {
  if (!(p.jx > std::abs(p.jz)))
    throw specfun::DomainError("xyz_to_sg: requires Jx > |Jz|");
  XyzScalingResult out;
  out.regime_warning = !p.in_scaling_regime();
  const double k_xyz = (2.0 / kPi) * std::acos(p.jz / p.jx);
  const double l2 = (p.jx * p.jx - p.jy * p.jy) / (p.jx * p.jx - p.jz * p.jz);
  out.l = std::sqrt(std::abs(l2));
  out.xi_xyz = 0.25 * std::pow(4.0 / out.l, 1.0 / (1.0 - k_xyz / 2.0));
  out.sg.beta2 = 4.0 * kPi * k_xyz;
  out.sg.xi_sg = analytics::xi_sg(out.sg.beta2);
  out.sg.a = a;
  out.sg.m = 1.0 / (a * out.xi_xyz);
  out.sg.m0 = analytics::mass_parameter_from_soliton(out.sg.beta2, out.sg.m);
  return out;
}

XyzParams sg_to_xyz(double beta2, double m_target, double a,
                    bool allow_outside_scaling) {
  if (!(beta2 > 0.0 && beta2 < 8.0 * kPi))
    throw specfun::DomainError("sg_to_xyz: beta^2 must lie in (0, 8 pi)");
  if (!(m_target > 0.0)) throw specfun::DomainError("sg_to_xyz: M must be > 0");
  const double xi_xyz = 1.0 / (a * m_target);
  if (xi_xyz < 1.0 && !allow_outside_scaling)
    throw specfun::DomainError(
        "sg_to_xyz: xi_XYZ < 1 lattice site, outside the scaling limit");
  const double k_xyz = beta2 / (4.0 * kPi);
  XyzParams p;
  p.jx = 1.0;
  p.jz = std::cos(kPi * k_xyz / 2.0);
  const double l = 4.0 * std::pow(4.0 * xi_xyz, -(1.0 - k_xyz / 2.0));
  const double jy2 = 1.0 - l * l * (1.0 - p.jz * p.jz);
  if (!(jy2 > 0.0))
    throw specfun::DomainError("sg_to_xyz: mass too large, J_y^2 would go negative");
  p.jy = std::sqrt(jy2);
  return p;
}

double soliton_mass_from_sigma(double sigma_vev, double beta2, double a) {
  if (!(sigma_vev > 0.0))
    throw specfun::DomainError("soliton_mass_from_sigma: sigma_vev must be > 0");
  const double b8 = beta2 / (8.0 * kPi);
  // log space: the exponent 16 pi / beta^2 is large at small beta^2
  const double log_m = std::log(4.0 / a) +
                       (16.0 * kPi / beta2) * std::log(2.0 * (1.0 - b8) * sigma_vev);
  return std::exp(log_m);
}

} // namespace sgsim::models
