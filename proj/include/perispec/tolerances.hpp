// Copyright 2026 The perispec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

namespace perispec {

// One knob set for the whole analysis pipeline. All values are dimensionless
// relative tolerances; every report serializes the set it was produced with.
struct ToleranceSet {
  double eps_peripheral = 1e-8;  // | |lambda| - 1 | cut for peripheral clusters
  double cluster_tol = 1e-8;     // eigenvalue clustering radius (relative)
  double eps_residual = 1e-9;    // eigen-residual / witness-identity bound
  double psd_tol = 1e-10;        // positivity thresholds in the check batteries
  double nullspace_scale = 1e3;  // safety factor on the SVD rank cutoff
                                 // tau = nullspace_scale * D * eps_machine * |S|

  void validate() const {
    if (eps_peripheral <= 0 || cluster_tol <= 0 || eps_residual <= 0 ||
        psd_tol <= 0 || nullspace_scale <= 0) {
      throw std::invalid_argument("ToleranceSet: all tolerances must be strictly positive");
    }
  }
};

}  // namespace perispec
