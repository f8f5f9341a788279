#include "sgsim/mpo.hpp"

namespace sgsim {

const DenseTensor& MpoOperator::bulk() const {
  if (sites.empty()) throw DimensionError("empty MPO");
  return sites.front();
}

MpoOperator finite_mpo_from_bulk(const DenseTensor& bulk,
                                 const std::vector<cxd>& left_boundary,
                                 const std::vector<cxd>& right_boundary,
                                 std::size_t length, std::size_t local_dim) {
  if (length < 2) throw DimensionError("finite MPO needs length >= 2");
  const std::size_t wl = bulk.extent(0);
  const std::size_t wr = bulk.extent(3);
  const std::size_t d = local_dim;

  DenseTensor lvec({1, wl});
  for (std::size_t i = 0; i < wl; ++i) lvec({0, i}) = left_boundary.at(i);
  DenseTensor rvec({wr, 1});
  for (std::size_t i = 0; i < wr; ++i) rvec({i, 0}) = right_boundary.at(i);

  MpoOperator mpo;
  mpo.local_dim = d;
  mpo.infinite = false;
  DenseTensor first = contract(lvec, bulk, {{1, 0}}); // (1, o, i, wr)
  DenseTensor last =
      contract(bulk, rvec, {{3, 0}});                 // (wl, o, i, 1)
  mpo.sites.push_back(first);
  for (std::size_t s = 1; s + 1 < length; ++s) mpo.sites.push_back(bulk);
  mpo.sites.push_back(last);
  return mpo;
}

DenseTensor MpoOperator::dense() const {
  if (infinite) throw DimensionError("dense reconstruction needs a finite MPO");
  if (sites.empty()) throw DimensionError("empty MPO");
  const std::size_t d = local_dim;
  // running tensor: (phys_out_block, phys_in_block, right_bond)
  DenseTensor acc = sites.front().transpose({1, 2, 3, 0});
  acc = acc.reshape({d, d, sites.front().extent(3)}); // edge bond 1 absorbed
  std::size_t dim = d;
  for (std::size_t s = 1; s < sites.size(); ++s) {
    const DenseTensor& w = sites[s];
    // acc (O, I, wl) x w (wl, o, i, wr) -> (O, I, o, i, wr) -> (Oo, Ii, wr)
    DenseTensor t = contract(acc, w, {{2, 0}});
    t = t.transpose({0, 2, 1, 3, 4});
    dim *= d;
    acc = t.reshape({dim, dim, w.extent(3)});
  }
  if (acc.extent(2) != 1) throw DimensionError("MPO does not close to a scalar bond");
  return acc.reshape({dim, dim});
}

bool MpoOperator::is_hermitian(double tol) const {
  DenseTensor h = dense();
  const std::size_t n = h.extent(0);
  double scale = h.norm();
  if (scale == 0.0) return true;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(h({i, j}) - std::conj(h({j, i}))));
  return worst <= tol * scale;
}

} // namespace sgsim
