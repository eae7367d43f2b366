#pragma once

#include <stdexcept>
#include <string>

namespace mf {

// Error taxonomy mirrors the CLI exit codes: ConfigError -> 2,
// DivergenceError -> 3, MissingArtifactError -> 4, anything else -> 1.

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivergenceError : std::runtime_error {
  long step = -1;
  DivergenceError(const std::string& msg, long step_index)
      : std::runtime_error(msg + " (step " + std::to_string(step_index) + ")"),
        step(step_index) {}
};

struct MissingArtifactError : std::runtime_error {
  explicit MissingArtifactError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct StateError : std::runtime_error {
  explicit StateError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mf
