#pragma once

#include "sgsim/mpo.hpp"
#include "sgsim/mps.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

// Two-site DMRG ground-state search: finite chains with open boundaries and
// the McCulloch-style infinite algorithm on a two-site unit cell.

namespace sgsim {

struct SweepStage {
  std::size_t chi = 32;      // bond-dimension cap for this stage
  double sv_cutoff = 1e-10;  // relative singular-value cutoff
  double lanczos_tol = 1e-12;
  std::size_t max_sweeps = 50; // full sweeps (finite) or growth steps (infinite)
  // Sweeps to perform before the convergence test may fire. After a
  // bond-dimension increase the energy and entropy move slowly at first,
  // so a stage can otherwise exit before the state has expanded into the
  // enlarged bond space.
  std::size_t min_sweeps = 0;
};

struct DmrgSchedule {
  std::vector<SweepStage> stages{SweepStage{}};
  double energy_tol = 1e-10;  // per-sweep energy change
  double entropy_tol = 1e-8;  // per-sweep max bond-entropy change
  std::uint64_t rng_seed = 12345;

  void validate() const; // stages non-empty, chi non-decreasing

  // convenience: chi doubling from chi_start up to chi_max
  static DmrgSchedule ramp(std::size_t chi_start, std::size_t chi_max,
                           double sv_cutoff = 1e-10, std::size_t max_sweeps = 50);
};

struct DmrgConvergenceError : NumericalError {
  std::vector<double> energy_history;
  DmrgConvergenceError(const std::string& what, std::vector<double> history)
      : NumericalError(what), energy_history(std::move(history)) {}
};

struct FiniteDmrgResult {
  double energy = 0.0;
  MpsState state;
  std::vector<double> energy_history; // one entry per full sweep
  std::size_t sweeps = 0;
};

// Ground state of a finite Hermitian MPO chain. Intermediate stages of the
// schedule are warm-up and may stop at max_sweeps; the final stage must meet
// the convergence tolerances or a DmrgConvergenceError is thrown.
FiniteDmrgResult run_finite_dmrg(const MpoOperator& h, std::size_t length,
                                 const DmrgSchedule& schedule);

struct IdmrgStageRecord {
  std::size_t chi = 0;          // stage cap (actual bond may be smaller)
  double energy_density = 0.0;
  double entropy = 0.0;         // center-bond entanglement entropy
  std::size_t iterations = 0;   // growth steps spent in this stage
};

// called with a snapshot of the state each time a schedule stage converges;
// used by the finite-entanglement-scaling scans
using IdmrgStageHook =
    std::function<void(const MpsState&, const IdmrgStageRecord&)>;

struct IdmrgResult {
  double energy_density = 0.0;
  MpsState state; // InfiniteUnitCell
  std::vector<IdmrgStageRecord> stage_records;
  std::size_t iterations = 0;
};

// Ground state energy density of a translation-invariant MPO. If `init` is
// given, its unit cell seeds the first growth step (warm start).
IdmrgResult run_idmrg(const MpoOperator& h, const DmrgSchedule& schedule,
                      const IdmrgStageHook& hook = {},
                      const std::optional<MpsState>& init = std::nullopt);

} // namespace sgsim
