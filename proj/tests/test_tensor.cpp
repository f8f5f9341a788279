#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgsim/tensor.hpp"

#include <Eigen/Dense>

#include <random>

using namespace sgsim;

namespace {

DenseTensor random_tensor(std::vector<std::size_t> shape, std::mt19937_64& rng) {
  DenseTensor t(std::move(shape));
  std::normal_distribution<double> g(0.0, 1.0);
  for (auto& x : t.data()) x = cxd{g(rng), g(rng)};
  return t;
}

double rel_diff(const DenseTensor& a, const DenseTensor& b) {
  return (a - b).norm() / std::max(1e-300, b.norm());
}

} // namespace

TEST_CASE("contract: identity leaves a vector alone") {
  DenseTensor id = DenseTensor::identity(2);
  DenseTensor v({2}, {cxd{3, 0}, cxd{4, 0}});
  DenseTensor r = contract(id, v, {{1, 0}});
  CHECK(r.rank() == 1);
  CHECK(r({0}) == cxd{3, 0});
  CHECK(r({1}) == cxd{4, 0});
}

TEST_CASE("contract: hand-multiplied 2x2 matrix product") {
  DenseTensor a = DenseTensor::from_matrix({{1, 2}, {3, 4}});
  DenseTensor b = DenseTensor::from_matrix({{5, 6}, {7, 8}});
  DenseTensor c = contract(a, b, {{1, 0}});
  CHECK(c({0, 0}).real() == doctest::Approx(19));
  CHECK(c({0, 1}).real() == doctest::Approx(22));
  CHECK(c({1, 0}).real() == doctest::Approx(43));
  CHECK(c({1, 1}).real() == doctest::Approx(50));
}

TEST_CASE("contract: full self-contraction gives the squared Frobenius norm") {
  std::mt19937_64 rng(7);
  DenseTensor t = random_tensor({3, 4, 2}, rng);
  DenseTensor r = contract(t.conj(), t, {{0, 0}, {1, 1}, {2, 2}});
  CHECK(r.rank() == 0);
  CHECK(r.data()[0].real() == doctest::Approx(t.norm() * t.norm()).epsilon(1e-12));
  CHECK(std::abs(r.data()[0].imag()) < 1e-12);
  CHECK(r.data()[0].real() >= 0.0);
}

TEST_CASE("contract: bilinearity") {
  std::mt19937_64 rng(11);
  DenseTensor a = random_tensor({4, 3}, rng);
  DenseTensor b = random_tensor({3, 5}, rng);
  const cxd alpha{1.7, -0.4};
  DenseTensor lhs = contract(a.scaled(alpha), b, {{1, 0}});
  DenseTensor rhs = contract(a, b, {{1, 0}}).scaled(alpha);
  CHECK(rel_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("contract: extent mismatch raises a dimension error") {
  DenseTensor a({2, 3});
  DenseTensor b({4, 2});
  CHECK_THROWS_AS(contract(a, b, {{1, 0}}), DimensionError);
}

TEST_CASE("transpose inverts itself and matches manual indexing") {
  std::mt19937_64 rng(3);
  DenseTensor t = random_tensor({2, 3, 4}, rng);
  DenseTensor p = t.transpose({2, 0, 1});
  CHECK(p.shape() == std::vector<std::size_t>{4, 2, 3});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 4; ++k) CHECK(p({k, i, j}) == t({i, j, k}));
  DenseTensor back = p.transpose({1, 2, 0});
  CHECK(rel_diff(back, t) == 0.0);
}

TEST_CASE("svd_truncate: diag(3,2,1) with chi=2") {
  DenseTensor m = DenseTensor::from_matrix({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  auto r = svd_truncate(m, {.max_bond = 2});
  REQUIRE(r.s.size() == 2);
  CHECK(r.s[0] == doctest::Approx(3.0));
  CHECK(r.s[1] == doctest::Approx(2.0));
  CHECK(r.discarded_weight == doctest::Approx(1.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("svd_truncate: lossless reconstruction when nothing is discarded") {
  std::mt19937_64 rng(23);
  DenseTensor m = random_tensor({6, 9}, rng);
  auto r = svd_truncate(m, {.max_bond = 9});
  CHECK(r.discarded_weight == doctest::Approx(0.0));
  // rebuild u * diag(s) * v
  DenseTensor us = r.u;
  for (std::size_t i = 0; i < us.extent(0); ++i)
    for (std::size_t j = 0; j < us.extent(1); ++j) us({i, j}) *= r.s[j];
  DenseTensor rec = contract(us, r.v, {{1, 0}});
  CHECK((rec - m).norm() <= 1e-10 * m.norm());
  // orthonormal columns / rows
  DenseTensor uu = contract(r.u.conj(), r.u, {{0, 0}});
  DenseTensor vv = contract(r.v, r.v.conj(), {{1, 1}});
  CHECK((uu - DenseTensor::identity(r.s.size())).norm() < 1e-12);
  CHECK((vv - DenseTensor::identity(r.s.size())).norm() < 1e-12);
}

TEST_CASE("svd_truncate: exact rank-1 keeps zero discarded weight at chi=1") {
  std::mt19937_64 rng(5);
  DenseTensor u = random_tensor({5}, rng);
  DenseTensor v = random_tensor({7}, rng);
  DenseTensor m({5, 7});
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 7; ++j) m({i, j}) = u({i}) * v({j});
  auto r = svd_truncate(m, {.max_bond = 1});
  CHECK(r.s.size() == 1);
  CHECK(r.discarded_weight < 1e-24);
}

TEST_CASE("svd_truncate: singular values non-increasing") {
  std::mt19937_64 rng(29);
  DenseTensor m = random_tensor({12, 12}, rng);
  auto r = svd_truncate(m, {.max_bond = 12});
  for (std::size_t i = 0; i + 1 < r.s.size(); ++i) CHECK(r.s[i] >= r.s[i + 1]);
}

TEST_CASE("lanczos_lowest: diagonal matrix") {
  auto apply = [](const std::vector<cxd>& x, std::vector<cxd>& y) {
    const double d[3] = {-1.0, 0.0, 5.0};
    y.resize(3);
    for (int i = 0; i < 3; ++i) y[i] = d[i] * x[i];
  };
  auto r = lanczos_lowest(apply, {cxd{1, 0}, cxd{1, 0}, cxd{1, 0}}, 1e-12, 50);
  CHECK(r.e0 == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(r.v[0]) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("lanczos_lowest: pauli-x") {
  auto apply = [](const std::vector<cxd>& x, std::vector<cxd>& y) {
    y = {x[1], x[0]};
  };
  auto r = lanczos_lowest(apply, {cxd{1, 0}, cxd{0.3, 0}}, 1e-12, 50);
  CHECK(r.e0 == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("lanczos_lowest: random hermitian 64x64 against dense diagonalization") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd A(64, 64);
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) A(i, j) = cxd{g(rng), g(rng)};
  Eigen::MatrixXcd H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const double exact = es.eigenvalues()(0);

  auto apply = [&H](const std::vector<cxd>& x, std::vector<cxd>& y) {
    Eigen::Map<const Eigen::VectorXcd> xv(x.data(), 64);
    y.resize(64);
    Eigen::Map<Eigen::VectorXcd> yv(y.data(), 64);
    yv = H * xv;
  };
  std::vector<cxd> v0(64);
  for (auto& x : v0) x = cxd{g(rng), g(rng)};
  auto r = lanczos_lowest(apply, v0, 1e-12, 200);
  CHECK(r.e0 == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("lanczos_lowest: rejects a non-Hermitian map") {
  auto apply = [](const std::vector<cxd>& x, std::vector<cxd>& y) {
    y = {cxd{0, 1} * x[1], cxd{0, 0}};
  };
  CHECK_THROWS_AS(lanczos_lowest(apply, {cxd{1, 0}, cxd{1, 0}}, 1e-12, 50),
                  NumericalError);
}
