// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace thinv::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2 };

struct RunOptions {
  std::string command;
  std::optional<std::string> config_path;
  std::vector<double> p_values;  // overrides the config when nonempty
  std::optional<std::string> out;
  std::optional<int> n;
};

/// Executes one command. Artifacts are written atomically; nothing is left behind on error.
int run(const RunOptions& opts);

}  // namespace thinv::cli
