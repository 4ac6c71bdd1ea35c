// Copyright 2026 The pdg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef PDG_TESTS_TEST_SUPPORT_H_
#define PDG_TESTS_TEST_SUPPORT_H_

#include <cmath>

#include "pdg/mission.h"
#include "pdg/solver.h"

namespace pdg::testing_support {

inline const MissionConfig& DefaultMission() {
  static const MissionConfig mission;
  return mission;
}

// The reference full solve is the most expensive fixture in the suite; every
// test in a binary shares one copy.
inline const SolveResult& ReferenceFullSolve() {
  static const SolveResult result =
      FullSolve(DefaultMission(), ReferenceTheta(), LineSearchConfig{});
  return result;
}

inline double RelDiff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace pdg::testing_support

#endif  // PDG_TESTS_TEST_SUPPORT_H_
