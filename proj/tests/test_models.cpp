#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "sgsim/analytics.hpp"
#include "sgsim/models.hpp"

using namespace sgsim;
using namespace sgsim::models;
using Mat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic>;

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// embeds op acting on `sites` (ascending, contiguous not required) into an
// L-site chain of local dimension d, built site by site from identities
Mat embed(const std::vector<std::pair<int, Mat>>& ops, int length, int d) {
  Mat out = Mat::Identity(1, 1);
  for (int s = 0; s < length; ++s) {
    Mat local = Mat::Identity(d, d);
    for (const auto& [site, op] : ops)
      if (site == s) local = op;
    out = kron(out, local);
  }
  return out;
}

Mat to_mat(const DenseTensor& t) {
  const auto d0 = static_cast<Eigen::Index>(t.shape()[0]);
  const auto d1 = static_cast<Eigen::Index>(t.shape()[1]);
  Mat m(d0, d1);
  for (Eigen::Index i = 0; i < d0; ++i)
    for (Eigen::Index j = 0; j < d1; ++j) m(i, j) = t({std::size_t(i), std::size_t(j)});
  return m;
}

// dense QEC Hamiltonian built directly from the sum definition
Mat qec_dense_oracle(const QecParams& p, int length) {
  const int d = static_cast<int>(p.local_dim());
  Mat n = Mat::Zero(d, d);
  Mat s = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) n(i, i) = double(i - p.n_max);
  for (int i = 0; i + 1 < d; ++i) s(i, i + 1) = 1.0; // S|m> = |m-1>
  const Mat sdag = s.adjoint();
  const Mat cosphi = 0.5 * (s + sdag);
  const Eigen::Index dim = Eigen::Index(std::pow(d, length));
  Mat h = Mat::Zero(dim, dim);
  for (int i = 0; i < length; ++i) {
    h += p.e_c0 * embed({{i, Mat(n * n)}}, length, d);
    h -= p.e_g * embed({{i, n}}, length, d);
    h -= p.e_j0 * embed({{i, cosphi}}, length, d);
  }
  for (int i = 0; i + 1 < length; ++i) {
    h += p.delta * p.e_c0 * embed({{i, n}, {i + 1, n}}, length, d);
    // cos(phi_i - phi_{i+1}) = (S_i S_{i+1}^dag + h.c.)/2
    h -= 0.5 * p.e_j * embed({{i, s}, {i + 1, sdag}}, length, d);
    h -= 0.5 * p.e_j * embed({{i, sdag}, {i + 1, s}}, length, d);
  }
  return h;
}

Mat xyz_dense_oracle(const XyzParams& p, int length) {
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cxd(0, -1), cxd(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Eigen::Index dim = Eigen::Index(1) << length;
  Mat h = Mat::Zero(dim, dim);
  for (int i = 0; i + 1 < length; ++i) {
    h -= 0.5 * p.jx * embed({{i, sx}, {i + 1, sx}}, length, 2);
    h -= 0.5 * p.jy * embed({{i, sy}, {i + 1, sy}}, length, 2);
    h -= 0.5 * p.jz * embed({{i, sz}, {i + 1, sz}}, length, 2);
  }
  return h;
}

} // namespace

TEST_CASE("charge operators on the truncated basis") {
  const int n_max = 2;
  const Mat s = to_mat(vertex_operator_matrix(n_max));
  const Mat n = to_mat(charge_number_matrix(n_max));
  // S|m> = |m-1>: acting on the basis vector for m = 1 gives m = 0
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(5);
  v(3) = 1.0; // m = +1
  const Eigen::VectorXcd w = s * v;
  CHECK(std::abs(w(2) - cxd(1.0)) < 1e-15);
  CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-15));
  // [n, S] = -S exactly (the truncation edge only kills matrix elements)
  CHECK((n * s - s * n + s).norm() < 1e-15);
  // cos(phi) is Hermitian with norm 1 eigenvector structure
  const Mat cosphi = 0.5 * (s + Mat(s.adjoint()));
  CHECK((cosphi - Mat(cosphi.adjoint())).norm() < 1e-15);
}

TEST_CASE("Pauli algebra") {
  const Mat x = to_mat(pauli_x()), y = to_mat(pauli_y()), z = to_mat(pauli_z());
  CHECK((x * y - cxd(0, 1) * z).norm() < 1e-15);
  CHECK((y * z - cxd(0, 1) * x).norm() < 1e-15);
  CHECK((x * x - Mat::Identity(2, 2)).norm() < 1e-15);
  const Mat sp = to_mat(sigma_plus()), sm = to_mat(sigma_minus());
  CHECK((sp - 0.5 * (x + cxd(0, 1) * y)).norm() < 1e-15);
  CHECK((sm - Mat(sp.adjoint())).norm() < 1e-15);
}

TEST_CASE("QEC MPO matches the dense Hamiltonian") {
  QecParams p;
  p.e_c0 = 1.0;
  p.delta = 0.2;
  p.e_g = 0.3;
  p.e_j = 1.55;
  p.e_j0 = 0.016;
  p.n_max = 1;
  for (int length : {2, 3, 4}) {
    const MpoOperator mpo = build_qec_mpo(p, length);
    CHECK(mpo.is_hermitian());
    const Mat dense = to_mat(mpo.dense());
    const Mat oracle = qec_dense_oracle(p, length);
    CHECK((dense - oracle).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("QEC MPO at n_max = 2 including the gate term") {
  QecParams p;
  p.delta = 0.15;
  p.e_g = 0.7;
  p.e_j = 2.0;
  p.e_j0 = 0.1;
  p.n_max = 2;
  const MpoOperator mpo = build_qec_mpo(p, 3);
  CHECK((to_mat(mpo.dense()) - qec_dense_oracle(p, 3)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("XYZ MPO matches the dense Hamiltonian") {
  const XyzParams p{1.0, 0.999937, 0.981};
  for (int length : {2, 3, 5}) {
    const MpoOperator mpo = build_xyz_mpo(p, length);
    CHECK(mpo.is_hermitian());
    CHECK((to_mat(mpo.dense()) - xyz_dense_oracle(p, length)).cwiseAbs().maxCoeff() <
          1e-14);
  }
}

TEST_CASE("XYZ MPO ground energy agrees with exact diagonalization") {
  // independent check through the spectrum, not just matrix elements
  const XyzParams p{1.0, 0.7, 0.3};
  const MpoOperator mpo = build_xyz_mpo(p, 6);
  Eigen::SelfAdjointEigenSolver<Mat> es(to_mat(mpo.dense()));
  Eigen::SelfAdjointEigenSolver<Mat> eo(xyz_dense_oracle(p, 6));
  CHECK(es.eigenvalues()(0) == doctest::Approx(eo.eigenvalues()(0)).epsilon(1e-13));
}

TEST_CASE("infinite MPOs expose the bulk tensor and boundaries") {
  QecParams p;
  p.e_j = 1.55;
  p.e_j0 = 0.016;
  p.n_max = 2;
  const MpoOperator inf = build_qec_mpo(p, 0);
  CHECK(inf.infinite);
  CHECK(inf.length() == 1);
  CHECK(inf.bulk().shape()[0] == inf.left_boundary.size());
  CHECK(inf.bulk().shape()[3] == inf.right_boundary.size());
  // the finite MPO built from the same bulk reproduces the dense oracle
  const MpoOperator fin =
      finite_mpo_from_bulk(inf.bulk(), inf.left_boundary, inf.right_boundary, 3,
                           p.local_dim());
  CHECK((to_mat(fin.dense()) - qec_dense_oracle(p, 3)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("perturbative Luttinger estimates") {
  QecParams p;
  p.e_c0 = 1.0;
  p.e_j = 50.0;
  p.a = 1.0;
  const auto est = perturbative_luttinger(p);
  CHECK(est.u == doctest::Approx(std::sqrt(2.0 * 50.0)).epsilon(1e-14));
  CHECK(est.k == doctest::Approx(std::sqrt(2.0 / 50.0) / (2.0 * specfun::kPi))
                     .epsilon(1e-14));
}

TEST_CASE("QEC to sine-Gordon parameter map") {
  QecParams p;
  p.e_j = 1.55;
  p.e_j0 = 0.016;
  const double k = 8.0 * 0.063; // Luttinger parameter giving beta^2/8pi = 0.063
  const SgParams sg = qec_to_sg(k, p, 1.46);
  CHECK(sg.beta2 == doctest::Approx(specfun::kPi * k).epsilon(1e-14));
  CHECK(sg.xi_sg == doctest::Approx(0.067235859124866596).epsilon(1e-12));
  CHECK(sg.m0 == doctest::Approx(0.016).epsilon(1e-14)); // a = 1
  CHECK(sg.m == doctest::Approx(0.65966994023063236).epsilon(1e-12));
  CHECK(sg.u == doctest::Approx(1.46).epsilon(1e-14));
}

TEST_CASE("XYZ to sine-Gordon and back") {
  const XyzParams p{1.0, 0.999937, 0.981};
  const XyzScalingResult res = xyz_to_sg(p);
  CHECK(res.l == doctest::Approx(0.057857464036115062).epsilon(1e-12));
  CHECK(res.xi_xyz > 1.0);
  CHECK(res.sg.m == doctest::Approx(1.0 / res.xi_xyz).epsilon(1e-13));
  // round trip through the inverse map at Jx = 1
  const XyzParams q = sg_to_xyz(res.sg.beta2, res.sg.m);
  CHECK(q.jy == doctest::Approx(p.jy).epsilon(1e-10));
  CHECK(q.jz == doctest::Approx(p.jz).epsilon(1e-10));
  // outside the scaling window the inverse map refuses unless overridden
  CHECK_THROWS(sg_to_xyz(res.sg.beta2, 2.0));
  CHECK_NOTHROW(sg_to_xyz(res.sg.beta2, 2.0, 1.0, true));
}

TEST_CASE("soliton mass from the measured spin expectation value") {
  // eliminate the VEV: sigma = [ (a M / 4)^{beta^2/16 pi} ] / (2 (1 - beta^2/8pi))
  const double beta2 = 0.063 * 8.0 * specfun::kPi;
  const double m = 0.0435;
  const double sigma = std::pow(m / 4.0, beta2 / (16.0 * specfun::kPi)) /
                       (2.0 * (1.0 - beta2 / (8.0 * specfun::kPi)));
  CHECK(soliton_mass_from_sigma(sigma, beta2) == doctest::Approx(m).epsilon(1e-10));
}

TEST_CASE("parameter validation") {
  QecParams p;
  p.n_max = 0;
  CHECK_THROWS(p.validate());
  QecParams q;
  q.e_c0 = -1.0;
  CHECK_THROWS(q.validate());
}
