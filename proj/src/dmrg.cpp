#include "sgsim/dmrg.hpp"

#include "dmrg_internal.hpp"

#include <algorithm>
#include <cmath>

namespace sgsim {

using detail::apply_two_site;
using detail::grow_left;
using detail::grow_right;

void DmrgSchedule::validate() const {
  if (stages.empty()) throw DimensionError("DmrgSchedule: no stages");
  for (std::size_t i = 0; i + 1 < stages.size(); ++i)
    if (stages[i + 1].chi < stages[i].chi)
      throw DimensionError("DmrgSchedule: chi must be non-decreasing");
  for (const auto& st : stages)
    if (st.chi < 1 || st.max_sweeps < 1 || st.sv_cutoff < 0.0 || st.lanczos_tol <= 0.0)
      throw DimensionError("DmrgSchedule: bad stage parameters");
}

DmrgSchedule DmrgSchedule::ramp(std::size_t chi_start, std::size_t chi_max,
                                double sv_cutoff, std::size_t max_sweeps) {
  DmrgSchedule s;
  s.stages.clear();
  for (std::size_t chi = chi_start;; chi *= 2) {
    chi = std::min(chi, chi_max);
    s.stages.push_back(SweepStage{chi, sv_cutoff, 1e-12, max_sweeps});
    if (chi == chi_max) break;
  }
  return s;
}

namespace {

double spectrum_entropy(const std::vector<double>& s) {
  double out = 0.0;
  for (double x : s) {
    const double p = x * x;
    if (p > 1e-300) out -= p * std::log(p);
  }
  return out;
}

struct TwoSiteSolve {
  DenseTensor theta;
  double energy = 0.0;
};

TwoSiteSolve solve_two_site(const DenseTensor& lenv, const DenseTensor& renv,
                            const DenseTensor& w1, const DenseTensor& w2,
                            const DenseTensor& guess, double tol) {
  const std::vector<std::size_t> shape = {guess.extent(0), guess.extent(1),
                                          guess.extent(2), guess.extent(3)};
  auto apply = [&](const std::vector<cxd>& x, std::vector<cxd>& y) {
    DenseTensor t(shape, x);
    DenseTensor ht = apply_two_site(lenv, renv, w1, w2, t);
    y = std::move(ht.data());
  };
  LanczosResult res = lanczos_lowest(apply, guess.data(), tol, 500);
  return {DenseTensor(shape, std::move(res.v)), res.e0};
}

struct SplitResult {
  DenseTensor left;   // (l, d, k) isometry
  DenseTensor right;  // (k, d, r) isometry
  std::vector<double> spectrum; // normalized
  DenseTensor center; // diag(s) as (k, k)
};

SplitResult split_theta(const DenseTensor& theta, const TruncationPolicy& pol) {
  const std::size_t l = theta.extent(0), d = theta.extent(1), r = theta.extent(3);
  auto svd = svd_truncate(theta.reshape({l * d, d * r}), pol);
  const std::size_t k = svd.s.size();
  double n2 = 0.0;
  for (double x : svd.s) n2 += x * x;
  const double inv = 1.0 / std::sqrt(n2);
  SplitResult out;
  out.left = svd.u.reshape({l, d, k});
  out.right = svd.v.reshape({k, d, r});
  out.spectrum.resize(k);
  out.center = DenseTensor({k, k});
  for (std::size_t i = 0; i < k; ++i) {
    out.spectrum[i] = svd.s[i] * inv;
    out.center({i, i}) = out.spectrum[i];
  }
  return out;
}

} // namespace

FiniteDmrgResult run_finite_dmrg(const MpoOperator& h, std::size_t length,
                                 const DmrgSchedule& schedule) {
  schedule.validate();
  if (length < 2) throw DimensionError("run_finite_dmrg: length must be >= 2");
  if (h.infinite || h.length() != length)
    throw DimensionError("run_finite_dmrg: MPO length mismatch");
  const std::size_t d = h.local_dim;

  MpsState psi = random_finite_mps(length, d, std::min<std::size_t>(8, schedule.stages.front().chi),
                                   schedule.rng_seed);
  psi.bond_spectra.assign(length - 1, {1.0});

  // environments: lenv[i] covers sites < i, renv[i] covers sites > i
  std::vector<DenseTensor> lenv(length), renv(length);
  lenv[0] = detail::trivial_env({cxd(1.0)});
  renv[length - 1] = detail::trivial_env({cxd(1.0)});
  for (std::size_t i = length - 1; i >= 2; --i)
    renv[i - 1] = grow_right(renv[i], psi.sites[i], h.sites[i]);

  std::vector<double> history;
  double energy = 0.0;
  std::vector<double> entropies(length - 1, 0.0);
  bool converged = false;

  for (std::size_t si = 0; si < schedule.stages.size(); ++si) {
    const SweepStage& st = schedule.stages[si];
    TruncationPolicy pol;
    pol.max_bond = st.chi;
    pol.sv_cutoff = st.sv_cutoff;
    converged = false;

    for (std::size_t sweep = 0; sweep < st.max_sweeps && !converged; ++sweep) {
      double max_entropy_change = 0.0;
      // left-to-right
      for (std::size_t i = 0; i + 1 < length; ++i) {
        DenseTensor guess = contract(psi.sites[i], psi.sites[i + 1], {{2, 0}});
        auto sol = solve_two_site(lenv[i], renv[i + 1], h.sites[i], h.sites[i + 1],
                                  guess, st.lanczos_tol);
        energy = sol.energy;
        auto split = split_theta(sol.theta, pol);
        psi.sites[i] = split.left;
        psi.sites[i + 1] = contract(split.center, split.right, {{1, 0}});
        max_entropy_change = std::max(
            max_entropy_change,
            std::abs(spectrum_entropy(split.spectrum) - entropies[i]));
        entropies[i] = spectrum_entropy(split.spectrum);
        psi.bond_spectra[i] = std::move(split.spectrum);
        lenv[i + 1] = grow_left(lenv[i], psi.sites[i], h.sites[i]);
      }
      // right-to-left
      for (std::size_t i = length - 1; i-- > 0;) {
        DenseTensor guess = contract(psi.sites[i], psi.sites[i + 1], {{2, 0}});
        auto sol = solve_two_site(lenv[i], renv[i + 1], h.sites[i], h.sites[i + 1],
                                  guess, st.lanczos_tol);
        energy = sol.energy;
        auto split = split_theta(sol.theta, pol);
        psi.sites[i + 1] = split.right;
        psi.sites[i] = contract(split.left, split.center, {{2, 0}});
        max_entropy_change = std::max(
            max_entropy_change,
            std::abs(spectrum_entropy(split.spectrum) - entropies[i]));
        entropies[i] = spectrum_entropy(split.spectrum);
        psi.bond_spectra[i] = std::move(split.spectrum);
        renv[i] = grow_right(renv[i + 1], psi.sites[i + 1], h.sites[i + 1]);
      }
      history.push_back(energy);
      if (history.size() >= 2) {
        const double de = std::abs(history[history.size() - 1] -
                                   history[history.size() - 2]);
        if (sweep + 1 >= st.min_sweeps && de <= schedule.energy_tol &&
            max_entropy_change <= schedule.entropy_tol)
          converged = true;
      }
    }
    if (!converged && si + 1 == schedule.stages.size())
      throw DmrgConvergenceError(
          "run_finite_dmrg: final stage exceeded max_sweeps without meeting "
          "tolerances",
          history);
  }

  // center sits on site 0 after the right-to-left pass
  const double nrm = psi.sites[0].norm();
  psi.sites[0] = psi.sites[0].scaled(1.0 / nrm);
  psi.form = MpsForm::Mixed;
  psi.center = 0;
  psi.local_dim = d;

  FiniteDmrgResult out;
  out.energy = energy;
  out.state = std::move(psi);
  out.energy_history = std::move(history);
  out.sweeps = out.energy_history.size();
  return out;
}

} // namespace sgsim
