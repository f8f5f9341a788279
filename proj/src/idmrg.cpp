#include "sgsim/dmrg.hpp"

#include "dmrg_internal.hpp"

#include <algorithm>
#include <cmath>

namespace sgsim {

using detail::apply_two_site;
using detail::grow_left;
using detail::grow_right;

namespace {

double spectrum_entropy(const std::vector<double>& s) {
  double out = 0.0;
  for (double x : s) {
    const double p = x * x;
    if (p > 1e-300) out -= p * std::log(p);
  }
  return out;
}

// lambda B lambda_prev^{-1} (pseudo-inverse on the trailing bond)
DenseTensor rotate_b(const DenseTensor& b, const std::vector<double>& lam,
                     const std::vector<double>& lam_prev) {
  DenseTensor out = b;
  const double cutoff = 1e-8 * lam_prev.front();
  const std::size_t l = b.extent(0), d = b.extent(1), r = b.extent(2);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t c = 0; c < r; ++c) {
        const double inv = lam_prev[c] > cutoff ? 1.0 / lam_prev[c] : 0.0;
        out({a, p, c}) *= lam[a] * inv;
      }
  return out;
}

DenseTensor scale_right_bond(const DenseTensor& a, const std::vector<double>& lam) {
  DenseTensor out = a;
  const std::size_t l = a.extent(0), d = a.extent(1), r = a.extent(2);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t c = 0; c < r; ++c) out({i, p, c}) *= lam[c];
  return out;
}

} // namespace

IdmrgResult run_idmrg(const MpoOperator& h, const DmrgSchedule& schedule,
                      const IdmrgStageHook& hook,
                      const std::optional<MpsState>& init) {
  schedule.validate();
  if (!h.infinite)
    throw DimensionError("run_idmrg: requires a translation-invariant MPO");
  const DenseTensor& w = h.bulk();
  const std::size_t d = h.local_dim;

  DenseTensor lenv = detail::trivial_env(h.left_boundary);
  DenseTensor renv = detail::trivial_env(h.right_boundary);
  std::mt19937_64 rng(schedule.rng_seed);

  DenseTensor a, b;                  // current unit cell, A left- / B right-isometric
  std::vector<double> lam, lam_prev; // center and outer spectra
  double e_prev = 0.0;
  bool have_energy = false;
  double density = 0.0, entropy_prev = 0.0, entropy_prev2 = 0.0;

  std::vector<double> density_history;
  bool env_ready = init.has_value();
  IdmrgResult out;

  auto make_state = [&]() {
    MpsState psi;
    psi.sites = {a, b};
    psi.bond_spectra = {lam, lam_prev};
    psi.form = MpsForm::InfiniteUnitCell;
    psi.local_dim = d;
    return psi;
  };

  auto solve = [&](const DenseTensor& guess, double tol) {
    const std::vector<std::size_t> shape = {guess.extent(0), guess.extent(1),
                                            guess.extent(2), guess.extent(3)};
    auto apply = [&](const std::vector<cxd>& x, std::vector<cxd>& y) {
      DenseTensor t(shape, x);
      y = std::move(apply_two_site(lenv, renv, w, w, t).data());
    };
    return lanczos_lowest(apply, guess.data(), tol, 500);
  };

  if (init) {
    if (!init->infinite() || init->local_dim != d)
      throw DimensionError("run_idmrg: incompatible warm-start state");
    a = init->sites[0];
    b = init->sites[1];
    lam = init->bond_spectra[0];
    lam_prev = init->bond_spectra[1];
    // Seed the environments with an identity closure on the outer bond
    // (boundary MPO channel only) and grow once with the bare isometric
    // cell tensors. The Schmidt weights stay in the center guess: folding
    // them into the environments would make the effective norm operator
    // non-identity and bias the variational energy.
    const std::size_t chi_o = a.extent(0);
    const std::size_t wub = h.left_boundary.size();
    DenseTensor lseed({chi_o, wub, chi_o});
    for (std::size_t i = 0; i < chi_o; ++i)
      for (std::size_t m = 0; m < wub; ++m)
        lseed({i, m, i}) = h.left_boundary[m];
    lenv = grow_left(lseed, a, w);
    const std::size_t wvb = h.right_boundary.size();
    DenseTensor rseed({chi_o, wvb, chi_o});
    for (std::size_t i = 0; i < chi_o; ++i)
      for (std::size_t m = 0; m < wvb; ++m)
        rseed({i, m, i}) = h.right_boundary[m];
    renv = grow_right(rseed, b, w);
  }

  std::size_t total_iterations = 0;
  for (std::size_t si = 0; si < schedule.stages.size(); ++si) {
    const SweepStage& st = schedule.stages[si];
    TruncationPolicy pol;
    pol.max_bond = st.chi;
    pol.sv_cutoff = st.sv_cutoff;
    bool converged = false;
    std::size_t stage_iters = 0;

    for (std::size_t it = 0; it < st.max_sweeps && !converged; ++it, ++stage_iters) {
      DenseTensor guess;
      if (a.rank() == 0) { // cold start
        guess = detail::random_theta(1, d, 1, rng);
      } else {
        if (env_ready) { // warm start: environments already hold the cell
          env_ready = false;
        } else {
          lenv = grow_left(lenv, a, w);
          renv = grow_right(renv, b, w);
        }
        guess = contract(rotate_b(b, lam, lam_prev), scale_right_bond(a, lam),
                         {{2, 0}});
        const double n = guess.norm();
        if (n < 1e-12) // rotation guess collapsed; fall back to random
          guess = detail::random_theta(a.extent(2), d, b.extent(0), rng);
        else
          guess = guess.scaled(1.0 / n);
      }

      LanczosResult sol = solve(guess, st.lanczos_tol);
      DenseTensor theta({guess.extent(0), guess.extent(1), guess.extent(2),
                         guess.extent(3)},
                        std::move(sol.v));
      const std::size_t l = theta.extent(0), r = theta.extent(3);
      auto svd = svd_truncate(theta.reshape({l * d, d * r}), pol);
      const std::size_t k = svd.s.size();
      double n2 = 0.0;
      for (double x : svd.s) n2 += x * x;
      const double inv = 1.0 / std::sqrt(n2);
      std::vector<double> lam_new(k);
      for (std::size_t i = 0; i < k; ++i) lam_new[i] = svd.s[i] * inv;

      lam_prev = lam.empty() ? std::vector<double>{1.0} : lam;
      lam = std::move(lam_new);
      a = svd.u.reshape({l, d, k});
      b = svd.v.reshape({k, d, r});

      if (have_energy) {
        density = (sol.e0 - e_prev) / 2.0;
        density_history.push_back(density);
        const double s_now = spectrum_entropy(lam);
        // the two-site cell produces a period-2 even/odd oscillation, so
        // compare against the values two growth steps back
        const std::size_t n = density_history.size();
        if (n >= 3 && stage_iters + 1 >= st.min_sweeps &&
            std::abs(density_history[n - 1] - density_history[n - 3]) <=
                schedule.energy_tol &&
            std::abs(s_now - entropy_prev2) <= schedule.entropy_tol)
          converged = true;
        entropy_prev2 = entropy_prev;
        entropy_prev = s_now;
      }
      e_prev = sol.e0;
      have_energy = true;
      ++total_iterations;
    }

    if (!converged && si + 1 == schedule.stages.size())
      throw DmrgConvergenceError(
          "run_idmrg: final stage exceeded max growth steps without meeting "
          "tolerances",
          density_history);

    IdmrgStageRecord rec;
    rec.chi = st.chi;
    rec.energy_density =
        density_history.size() >= 2
            ? 0.5 * (density_history[density_history.size() - 1] +
                     density_history[density_history.size() - 2])
            : density;
    rec.entropy = spectrum_entropy(lam);
    rec.iterations = stage_iters;
    out.stage_records.push_back(rec);
    if (hook) hook(make_state(), rec);
  }

  // average out the residual period-2 oscillation
  out.energy_density = density;
  if (density_history.size() >= 2)
    out.energy_density =
        0.5 * (density_history[density_history.size() - 1] +
               density_history[density_history.size() - 2]);
  out.state = make_state();
  out.iterations = total_iterations;
  return out;
}

} // namespace sgsim
