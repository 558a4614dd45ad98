#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sbls/instance_io.hpp"

namespace sbls {

/// 2x3x3 example with b = (5, 0), s = t = 2; known point (1,1,0,1,1,0).
InstanceFile bundled_example_a();

/// 2x4x4 example with b = (1, 7), s = t = 3; known point (1,1,0,0,2,1,0,0).
InstanceFile bundled_example_b();

/// Zero-residual point (1,1,0,1,0,1) of example A.
Point bundled_example_a_optimum();

/// Names accepted by run_repro, in a fixed order.
const std::vector<std::string>& repro_names();

struct ReproResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> mismatches;
  nlohmann::json report;
};

/// Recomputes a bundled example and compares against pinned expectations.
/// Throws std::invalid_argument for an unknown name.
ReproResult run_repro(const std::string& name);

}  // namespace sbls
