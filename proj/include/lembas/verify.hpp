// Copyright 2026 The lembas authors
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

#include <string>
#include <vector>

namespace lembas {

// Outcome of one verification check. `measured` is the check's headline
// deviation and `threshold` what it was held against; `passed` is the
// authoritative verdict (some checks also fold in runtime bounds or
// inequality conditions described in `detail`).
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

// Runs the release-gate suite: closed-form rate and total comparisons for
// both built-in scenarios, first-law closure, the two routes to the
// incoherent generator, entropy-rate and canonical-temperature identities,
// kernel oracles, and the integrator's convergence order. Checks are
// independent; one throwing is reported as its own failure. Grid sizes
// honor LEMBAS_NSTEPS_OVERRIDE like every other configured step count.
std::vector<CheckResult> run_acceptance_checks();

}  // namespace lembas
