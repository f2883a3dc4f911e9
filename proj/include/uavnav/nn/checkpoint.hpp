#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "uavnav/nn/dueling_net.hpp"
#include "uavnav/nn/optimizer.hpp"

namespace uavnav::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Unreadable, corrupt or incompatible checkpoint. `version` is the format
/// version found in the file (0 when the header could not be read).
class CheckpointError : public std::runtime_error {
 public:
  CheckpointError(const std::string& what, std::uint32_t version)
      : std::runtime_error(what + " (checkpoint format v" + std::to_string(version) + ")"), version_(version) {}
  std::uint32_t version() const { return version_; }

 private:
  std::uint32_t version_;
};

struct Checkpoint {
  DuelingNet net;
  OptimizerState optimizer;
};

/// Writes to `path` via a temporary file and rename. Throws IoError.
void save_checkpoint(const DuelingNet& net, const OptimizerState& opt, const std::filesystem::path& path);

/// Throws CheckpointError on a missing, truncated or corrupt file, and on
/// a network whose action count differs from `expected_actions` (when > 0).
Checkpoint load_checkpoint(const std::filesystem::path& path, int expected_actions = 0);

std::string serialize_checkpoint(const DuelingNet& net, const OptimizerState& opt);
Checkpoint deserialize_checkpoint(const std::string& bytes, int expected_actions = 0);

}  // namespace uavnav::nn
