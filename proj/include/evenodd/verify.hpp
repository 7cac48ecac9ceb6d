#pragma once

// Runtime invariant suite behind the `verify` subcommand.

#include <optional>
#include <string>
#include <vector>

#include "evenodd/coherence.hpp"

namespace evenodd {

/// Fault injection used to demonstrate that the suite detects breakage.
struct VerifyOptions {
  SpinSystemParams spin;
  /// Compile hardware-frame programs without the mid-delay pi pulse.
  bool drop_refocusing = false;
  /// Flip the |00> sign of this catalog entry's oracle in the quantum run.
  std::optional<int> flip_uf_sign;
};

struct GroupResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<GroupResult> run_verification(const VerifyOptions& options = {});

}  // namespace evenodd
