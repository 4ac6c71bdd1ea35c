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


#ifndef PDG_SOLVER_H_
#define PDG_SOLVER_H_

#include <optional>
#include <string>
#include <vector>

#include "pdg/interior_point.h"
#include "pdg/lcvx.h"
#include "pdg/mission.h"

namespace pdg {

// kUnbounded arises only for reduced problems with too few constraints left
// to bound the fuel cost.
enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

const char* ToString(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  Trajectory trajectory;
  double cost = 0.0;  // +inf unless optimal (-inf when unbounded)
  double t_f = 0.0;
  double wall_time_ms = 0.0;
  int iterations = 0;
  int conic_solves = 1;
  // Wall time of the most expensive single conic solve inside this result.
  double max_inner_ms = 0.0;
  std::string diagnostics;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

InteriorPointSettings SettingsFor(const MissionConfig& mission);

SolveResult SolveConic(const DiscretizedSocp& socp);

struct LineSearchConfig {
  double t_lo = 5.0;
  double t_hi = 0.0;  // <= 0 selects the fuel-exhaustion bound
  int coarse_grid = 20;
  double refine_tol = 0.1;
  int workers = 1;

  void Validate() const;
};

// (m_wet - m_dry) / (alpha rho_min): no trajectory can burn longer than this.
double FuelExhaustionTime(const MissionConfig& mission, const ProblemParameters& params);

// Line search over the final time: coarse grid on [t_lo, t_hi], then golden
// section around the best grid point. Grid points past the fuel-exhaustion
// time are skipped. When `hint` is set, grid points are solved in order of
// distance from it; the result does not depend on the order.
SolveResult FullSolve(const MissionConfig& mission, const ProblemParameters& params,
                      const LineSearchConfig& ls, std::optional<double> hint = std::nullopt);

// Line-search trace for diagnostics: (t_f, cost) for every conic solve.
struct LineSearchTrace {
  std::vector<std::pair<double, double>> grid;
  std::vector<std::pair<double, double>> refinement;
  bool unimodal = true;
};
SolveResult FullSolve(const MissionConfig& mission, const ProblemParameters& params,
                      const LineSearchConfig& ls, std::optional<double> hint,
                      LineSearchTrace* trace);

// Fixed-time solve of the full problem.
SolveResult FixedTimeSolve(const MissionConfig& mission, const ProblemParameters& params,
                           double t_f);

SolveResult ReducedSolve(const MissionConfig& mission, const ProblemParameters& params,
                         const Strategy& strategy);

// Throws std::invalid_argument unless the result is optimal.
std::vector<std::uint8_t> ExtractTightConstraints(const DiscretizedSocp& socp,
                                                  const SolveResult& solution,
                                                  double tol = kTightTolerance);

FeasibilityReport CheckFeasibility(const DiscretizedSocp& socp, const SolveResult& candidate,
                                   double tol = kFeasibilityTolerance,
                                   double tol_eq = kEqualityTolerance);

// Strategy read off an optimal full solve: its tight set and final time.
Strategy OracleStrategy(const MissionConfig& mission, const ProblemParameters& params,
                        const SolveResult& full, double tol = kTightTolerance);

}  // namespace pdg

#endif  // PDG_SOLVER_H_
