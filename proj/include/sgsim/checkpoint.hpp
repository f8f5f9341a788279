#pragma once

#include "sgsim/mps.hpp"

#include <string>

#include <json.hpp>

// Versioned JSON checkpoints for MPS states: shapes, flattened tensors, bond
// spectra and free-form metadata (seed, schedule, model parameters).

namespace sgsim {

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kCheckpointVersion = 1;

void save_mps(const std::string& path, const MpsState& psi,
              const nlohmann::json& metadata = {});

struct LoadedCheckpoint {
  MpsState state;
  nlohmann::json metadata;
};

LoadedCheckpoint load_mps(const std::string& path);

} // namespace sgsim
