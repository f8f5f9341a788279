#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Dense tensor algebra over complex doubles: contraction, reshape/transpose,
// truncated SVD and a Lanczos ground-state solver. Row-major element layout;
// every contraction reduces to a matrix product.

namespace sgsim {

using cxd = std::complex<double>;

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<std::size_t> shape);
  DenseTensor(std::vector<std::size_t> shape, std::vector<cxd> elems);

  static DenseTensor identity(std::size_t n);
  static DenseTensor from_matrix(const std::vector<std::vector<cxd>>& rows);

  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return elems_.size(); }
  std::size_t extent(std::size_t axis) const { return shape_.at(axis); }
  const std::vector<std::size_t>& shape() const { return shape_; }

  cxd& at(std::span<const std::size_t> idx);
  const cxd& at(std::span<const std::size_t> idx) const;
  cxd& operator()(std::initializer_list<std::size_t> idx);
  const cxd& operator()(std::initializer_list<std::size_t> idx) const;

  std::vector<cxd>& data() { return elems_; }
  const std::vector<cxd>& data() const { return elems_; }

  DenseTensor reshape(std::vector<std::size_t> new_shape) const;
  DenseTensor transpose(const std::vector<std::size_t>& perm) const;
  DenseTensor conj() const;
  DenseTensor scaled(cxd factor) const;

  double norm() const;  // Frobenius
  void check_finite(const char* where) const;

 private:
  std::size_t flat_index(std::span<const std::size_t> idx) const;

  std::vector<std::size_t> shape_;
  std::vector<cxd> elems_;
};

DenseTensor operator+(const DenseTensor& a, const DenseTensor& b);
DenseTensor operator-(const DenseTensor& a, const DenseTensor& b);

// Sums over the paired axes; result carries the unpaired axes of a, then b.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<std::size_t, std::size_t>>& axis_pairs);

struct TruncationPolicy {
  std::size_t max_bond = 1;
  double sv_cutoff = 0.0;            // relative to the largest singular value
  double max_discarded_weight = 0.0; // extra trailing discards allowed up to this weight

  void validate() const;
};

struct SvdResult {
  DenseTensor u;                 // (m, k), orthonormal columns
  std::vector<double> s;         // non-increasing, length k
  DenseTensor v;                 // (k, n), orthonormal rows; input ~= u diag(s) v
  double discarded_weight = 0.0; // sum of discarded s^2 over sum of all s^2
};

SvdResult svd_truncate(const DenseTensor& m, const TruncationPolicy& policy);

struct LanczosResult {
  double e0 = 0.0;
  std::vector<cxd> v; // normalized
  std::size_t iterations = 0;
};

// Lowest eigenpair of a Hermitian map. apply_h must be Hermitian; violations
// are detected through the imaginary part of <v|Hv> and reported as errors.
LanczosResult lanczos_lowest(
    const std::function<void(const std::vector<cxd>&, std::vector<cxd>&)>& apply_h,
    const std::vector<cxd>& v0, double tol, std::size_t max_iter);

} // namespace sgsim
