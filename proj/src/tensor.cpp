#include "sgsim/tensor.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace sgsim {

namespace {

using MatrixXcd = Eigen::MatrixXcd;
using Eigen::Index;

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ")";
  return os.str();
}

} // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), elems_(shape_product(shape_), cxd{0.0, 0.0}) {}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<cxd> elems)
    : shape_(std::move(shape)), elems_(std::move(elems)) {
  if (elems_.size() != shape_product(shape_))
    throw DimensionError("element count does not match shape " + shape_string(shape_));
}

DenseTensor DenseTensor::identity(std::size_t n) {
  DenseTensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.elems_[i * n + i] = 1.0;
  return t;
}

DenseTensor DenseTensor::from_matrix(const std::vector<std::vector<cxd>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  DenseTensor t({r, c});
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix initializer");
    std::copy(rows[i].begin(), rows[i].end(), t.elems_.begin() + i * c);
  }
  return t;
}

std::size_t DenseTensor::flat_index(std::span<const std::size_t> idx) const {
  if (idx.size() != shape_.size()) throw DimensionError("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (idx[a] >= shape_[a]) throw DimensionError("index out of range");
    flat = flat * shape_[a] + idx[a];
  }
  return flat;
}

cxd& DenseTensor::at(std::span<const std::size_t> idx) { return elems_[flat_index(idx)]; }
const cxd& DenseTensor::at(std::span<const std::size_t> idx) const {
  return elems_[flat_index(idx)];
}
cxd& DenseTensor::operator()(std::initializer_list<std::size_t> idx) {
  return at(std::span(idx.begin(), idx.size()));
}
const cxd& DenseTensor::operator()(std::initializer_list<std::size_t> idx) const {
  return at(std::span(idx.begin(), idx.size()));
}

DenseTensor DenseTensor::reshape(std::vector<std::size_t> new_shape) const {
  if (shape_product(new_shape) != elems_.size())
    throw DimensionError("reshape changes element count: " + shape_string(shape_) +
                         " -> " + shape_string(new_shape));
  DenseTensor t;
  t.shape_ = std::move(new_shape);
  t.elems_ = elems_;
  return t;
}

DenseTensor DenseTensor::transpose(const std::vector<std::size_t>& perm) const {
  if (perm.size() != shape_.size()) throw DimensionError("permutation rank mismatch");
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) throw DimensionError("invalid permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> new_shape(perm.size());
  for (std::size_t a = 0; a < perm.size(); ++a) new_shape[a] = shape_[perm[a]];
  DenseTensor out(new_shape);

  const std::size_t r = shape_.size();
  if (r == 0) {
    out.elems_ = elems_;
    return out;
  }
  // strides of the source in its own layout
  std::vector<std::size_t> src_stride(r, 1);
  for (std::size_t a = r - 1; a > 0; --a) src_stride[a - 1] = src_stride[a] * shape_[a];
  // for each destination axis, the source stride it walks
  std::vector<std::size_t> walk(r);
  for (std::size_t a = 0; a < r; ++a) walk[a] = src_stride[perm[a]];

  std::vector<std::size_t> idx(r, 0);
  std::size_t src = 0;
  const std::size_t n = elems_.size();
  for (std::size_t dst = 0; dst < n; ++dst) {
    out.elems_[dst] = elems_[src];
    // increment destination multi-index, updating the source offset
    for (std::size_t a = r; a-- > 0;) {
      idx[a]++;
      src += walk[a];
      if (idx[a] < new_shape[a]) break;
      src -= walk[a] * new_shape[a];
      idx[a] = 0;
    }
  }
  return out;
}

DenseTensor DenseTensor::conj() const {
  DenseTensor t = *this;
  for (auto& x : t.elems_) x = std::conj(x);
  return t;
}

DenseTensor DenseTensor::scaled(cxd factor) const {
  DenseTensor t = *this;
  for (auto& x : t.elems_) x *= factor;
  return t;
}

double DenseTensor::norm() const {
  double s = 0.0;
  for (const auto& x : elems_) s += std::norm(x);
  return std::sqrt(s);
}

void DenseTensor::check_finite(const char* where) const {
  for (const auto& x : elems_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw NumericalError(std::string("non-finite element after ") + where);
}

DenseTensor operator+(const DenseTensor& a, const DenseTensor& b) {
  if (a.shape() != b.shape()) throw DimensionError("shape mismatch in addition");
  DenseTensor t = a;
  for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] += b.data()[i];
  return t;
}

DenseTensor operator-(const DenseTensor& a, const DenseTensor& b) {
  if (a.shape() != b.shape()) throw DimensionError("shape mismatch in subtraction");
  DenseTensor t = a;
  for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] -= b.data()[i];
  return t;
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<std::size_t, std::size_t>>& axis_pairs) {
  const std::size_t ra = a.rank();
  const std::size_t rb = b.rank();
  std::vector<bool> a_paired(ra, false), b_paired(rb, false);
  for (auto [pa, pb] : axis_pairs) {
    if (pa >= ra || pb >= rb) throw DimensionError("contraction axis out of range");
    if (a_paired[pa] || b_paired[pb]) throw DimensionError("axis paired twice");
    if (a.extent(pa) != b.extent(pb))
      throw DimensionError("contracted extents differ: " + std::to_string(a.extent(pa)) +
                           " vs " + std::to_string(b.extent(pb)));
    a_paired[pa] = true;
    b_paired[pb] = true;
  }

  std::vector<std::size_t> a_free, b_free, a_perm, b_perm;
  for (std::size_t i = 0; i < ra; ++i)
    if (!a_paired[i]) a_free.push_back(i);
  for (std::size_t i = 0; i < rb; ++i)
    if (!b_paired[i]) b_free.push_back(i);
  a_perm = a_free;
  for (auto [pa, pb] : axis_pairs) a_perm.push_back(pa);
  for (auto [pa, pb] : axis_pairs) b_perm.push_back(pb);
  for (auto i : b_free) b_perm.push_back(i);

  std::size_t m = 1, k = 1, n = 1;
  std::vector<std::size_t> out_shape;
  for (auto i : a_free) {
    m *= a.extent(i);
    out_shape.push_back(a.extent(i));
  }
  for (auto [pa, pb] : axis_pairs) k *= a.extent(pa);
  for (auto i : b_free) {
    n *= b.extent(i);
    out_shape.push_back(b.extent(i));
  }

  DenseTensor ap = a.transpose(a_perm);
  DenseTensor bp = b.transpose(b_perm);

  // row-major (m,k)x(k,n): map as column-major transposed matrices
  using RowMat =
      Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> ma(ap.data().data(), static_cast<Index>(m),
                              static_cast<Index>(k));
  Eigen::Map<const RowMat> mb(bp.data().data(), static_cast<Index>(k),
                              static_cast<Index>(n));
  DenseTensor out(out_shape);
  Eigen::Map<RowMat> mo(out.data().data(), static_cast<Index>(m),
                        static_cast<Index>(n));
  mo.noalias() = ma * mb;
  return out;
}

void TruncationPolicy::validate() const {
  if (max_bond < 1) throw DimensionError("max_bond must be >= 1");
  if (sv_cutoff < 0.0 || sv_cutoff >= 1.0)
    throw DimensionError("sv_cutoff must lie in [0,1)");
  if (max_discarded_weight < 0.0)
    throw DimensionError("max_discarded_weight must be >= 0");
}

SvdResult svd_truncate(const DenseTensor& m, const TruncationPolicy& policy) {
  policy.validate();
  if (m.rank() != 2) throw DimensionError("svd_truncate expects a rank-2 tensor");
  const std::size_t rows = m.extent(0);
  const std::size_t cols = m.extent(1);

  using RowMat =
      Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> mm(m.data().data(), static_cast<Index>(rows),
                              static_cast<Index>(cols));
  Eigen::BDCSVD<MatrixXcd> svd(mm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NumericalError("SVD failed to converge (rows=" + std::to_string(rows) +
                         ", cols=" + std::to_string(cols) +
                         ", norm=" + std::to_string(m.norm()) + ")");

  const auto& sv = svd.singularValues();
  const std::size_t full = static_cast<std::size_t>(sv.size());
  double total_w = 0.0;
  for (std::size_t i = 0; i < full; ++i) total_w += sv[static_cast<Index>(i)] * sv[static_cast<Index>(i)];

  // cutoff relative to the largest value, then the bond cap; earlier index wins ties
  const double thresh = full ? policy.sv_cutoff * sv[0] : 0.0;
  std::size_t keep = 0;
  while (keep < full && sv[static_cast<Index>(keep)] > thresh) ++keep;
  keep = std::min(keep, policy.max_bond);
  // optional extra trailing discards while the weight budget allows
  if (policy.max_discarded_weight > 0.0 && total_w > 0.0) {
    double disc = 0.0;
    for (std::size_t i = keep; i < full; ++i)
      disc += sv[static_cast<Index>(i)] * sv[static_cast<Index>(i)];
    while (keep > 1) {
      const double w = sv[static_cast<Index>(keep - 1)] * sv[static_cast<Index>(keep - 1)];
      if ((disc + w) / total_w > policy.max_discarded_weight) break;
      disc += w;
      --keep;
    }
  }
  keep = std::max<std::size_t>(keep, 1);
  keep = std::min(keep, full);

  double kept_w = 0.0;
  for (std::size_t i = 0; i < keep; ++i) kept_w += sv[static_cast<Index>(i)] * sv[static_cast<Index>(i)];

  SvdResult out;
  out.s.resize(keep);
  for (std::size_t i = 0; i < keep; ++i) out.s[i] = sv[static_cast<Index>(i)];
  out.discarded_weight = total_w > 0.0 ? (total_w - kept_w) / total_w : 0.0;

  out.u = DenseTensor({rows, keep});
  out.v = DenseTensor({keep, cols});
  const MatrixXcd U = svd.matrixU().leftCols(static_cast<Index>(keep));
  const MatrixXcd Vh = svd.matrixV().leftCols(static_cast<Index>(keep)).adjoint();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < keep; ++j)
      out.u.data()[i * keep + j] = U(static_cast<Index>(i), static_cast<Index>(j));
  for (std::size_t i = 0; i < keep; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out.v.data()[i * cols + j] = Vh(static_cast<Index>(i), static_cast<Index>(j));
  return out;
}

namespace {

double vec_norm(const std::vector<cxd>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cxd vec_dot(const std::vector<cxd>& a, const std::vector<cxd>& b) {
  cxd s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void axpy(cxd alpha, const std::vector<cxd>& x, std::vector<cxd>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

} // namespace

LanczosResult lanczos_lowest(
    const std::function<void(const std::vector<cxd>&, std::vector<cxd>&)>& apply_h,
    const std::vector<cxd>& v0, double tol, std::size_t max_iter) {
  const std::size_t n = v0.size();
  if (n == 0 || vec_norm(v0) == 0.0) throw DimensionError("lanczos start vector is zero");

  std::mt19937_64 rng(0x5eedbeef);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<cxd> start = v0;
  for (int restart = 0; restart < 3; ++restart) {
    std::vector<std::vector<cxd>> basis;
    std::vector<double> alpha, beta;
    std::vector<cxd> w(n), q = start;
    {
      const double nrm = vec_norm(q);
      for (auto& x : q) x /= nrm;
    }
    basis.push_back(q);

    bool breakdown = false;
    double e0 = 0.0;
    std::vector<double> ritz_vec;
    const std::size_t m_max = std::min<std::size_t>(max_iter, n);
    for (std::size_t it = 0; it < m_max; ++it) {
      apply_h(basis.back(), w);
      const cxd diag = vec_dot(basis.back(), w);
      if (std::abs(diag.imag()) > 1e-8 * std::max(1.0, std::abs(diag.real())))
        throw NumericalError("lanczos: operator is not Hermitian (<v|Hv> has imaginary part " +
                             std::to_string(diag.imag()) + ")");
      alpha.push_back(diag.real());
      // full reorthogonalization, twice for safety
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) axpy(-vec_dot(b, w), b, w);
      const double b_next = vec_norm(w);

      // tridiagonal eigenproblem for the current Krylov space
      const std::size_t k = alpha.size();
      Eigen::MatrixXd trid = Eigen::MatrixXd::Zero(static_cast<Index>(k), static_cast<Index>(k));
      for (std::size_t i = 0; i < k; ++i) trid(static_cast<Index>(i), static_cast<Index>(i)) = alpha[i];
      for (std::size_t i = 0; i + 1 < k; ++i) {
        trid(static_cast<Index>(i), static_cast<Index>(i + 1)) = beta[i];
        trid(static_cast<Index>(i + 1), static_cast<Index>(i)) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(trid);
      e0 = es.eigenvalues()(0);
      ritz_vec.assign(es.eigenvectors().col(0).data(), es.eigenvectors().col(0).data() + k);

      const double resid = b_next * std::abs(ritz_vec.back());
      if (resid <= tol * std::max(1.0, std::abs(e0)) || it + 1 == m_max || k == n) {
        LanczosResult out;
        out.e0 = e0;
        out.iterations = k;
        out.v.assign(n, cxd{0.0, 0.0});
        for (std::size_t i = 0; i < k; ++i) axpy(cxd{ritz_vec[i], 0.0}, basis[i], out.v);
        const double nrm = vec_norm(out.v);
        if (nrm == 0.0) {
          breakdown = true;
          break;
        }
        for (auto& x : out.v) x /= nrm;
        return out;
      }
      if (b_next < 1e-14) {
        breakdown = true;
        break;
      }
      beta.push_back(b_next);
      for (auto& x : w) x /= b_next;
      basis.push_back(w);
    }
    if (!breakdown) break;
    // breakdown: restart from a perturbed vector
    start = v0;
    for (auto& x : start) x += 1e-6 * cxd{gauss(rng), gauss(rng)};
  }
  throw NumericalError("lanczos: repeated Krylov breakdown after 3 restarts");
}

} // namespace sgsim
