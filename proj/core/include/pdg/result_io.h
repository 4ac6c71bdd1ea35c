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


#ifndef PDG_RESULT_IO_H_
#define PDG_RESULT_IO_H_

#include <iosfwd>
#include <string>

#include "pdg/mission.h"
#include "pdg/solver.h"

namespace pdg {

// One row per node: node,t,r_x,r_y,r_z,v_x,v_y,v_z,log_mass,mass,u_x,u_y,u_z,
// sigma,thrust. u and sigma are thrust acceleration terms (N/kg); thrust is
// |u| times mass (N).
void WriteTrajectoryCsv(const SolveResult& result, std::ostream& out);

// status, cost, t_f, wall_time_ms and solver diagnostics as JSON.
std::string SolveSummaryJson(const SolveResult& result, const MissionConfig& mission,
                             const ProblemParameters& params);

}  // namespace pdg

#endif  // PDG_RESULT_IO_H_
