#pragma once

#include "sgsim/tensor.hpp"

#include <vector>

namespace sgsim {

// Matrix-product operator. Site tensors are rank-4 (left-bond, phys-out,
// phys-in, right-bond). A finite MPO stores one tensor per site with unit
// edge bonds; an infinite (translation-invariant) MPO stores the single bulk
// tensor together with the boundary selector vectors.
struct MpoOperator {
  std::vector<DenseTensor> sites;
  std::size_t local_dim = 0;
  bool infinite = false;
  std::vector<cxd> left_boundary;  // length = bulk left bond
  std::vector<cxd> right_boundary; // length = bulk right bond

  std::size_t length() const { return sites.size(); }
  const DenseTensor& bulk() const;

  // Dense reconstruction (d^L x d^L); finite MPOs only, intended for L <= 6.
  DenseTensor dense() const;
  bool is_hermitian(double tol = 1e-12) const;
};

// Builds a finite MPO of the given length from a bulk tensor and boundary
// selectors (first site takes the boundary row, last site the boundary column).
MpoOperator finite_mpo_from_bulk(const DenseTensor& bulk,
                                 const std::vector<cxd>& left_boundary,
                                 const std::vector<cxd>& right_boundary,
                                 std::size_t length, std::size_t local_dim);

} // namespace sgsim
