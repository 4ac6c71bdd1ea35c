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


#ifndef PDG_RUNTIME_H_
#define PDG_RUNTIME_H_

#include <functional>
#include <string>

#include "pdg/lcvx.h"
#include "pdg/mission.h"
#include "pdg/nn/inference.h"
#include "pdg/solver.h"

namespace pdg {

enum class PathTaken {
  kReducedAccepted,
  kFallbackAfterInfeasibleReduced,
  kFallbackAfterFailedFeasibilityCheck,
  kFullInfeasible,
};

const char* ToString(PathTaken path);

// kResidual evaluates every full-problem constraint at the reduced solution.
// kResolve solves the full problem at the predicted final time and returns
// that solution when it is optimal.
enum class FeasibilityMode { kResidual, kResolve };

const char* ToString(FeasibilityMode mode);
FeasibilityMode ParseFeasibilityMode(const std::string& text);

struct StageTimings {
  double prediction_ms = 0.0;
  double reduced_solve_ms = 0.0;
  double feasibility_check_ms = 0.0;
  double full_solve_ms = 0.0;
  double total_ms = 0.0;

  double StageSum() const {
    return prediction_ms + reduced_solve_ms + feasibility_check_ms + full_solve_ms;
  }
};

struct TpdgOptions {
  nn::PredictOptions predict;  // t_hi <= 0 or infinite selects the fuel-exhaustion bound
  LineSearchConfig line_search;
  FeasibilityMode feasibility = FeasibilityMode::kResidual;
  double tol = kFeasibilityTolerance;
  double tol_eq = kEqualityTolerance;
};

struct TpdgOutcome {
  SolveResult solution;
  PathTaken path = PathTaken::kFullInfeasible;
  StageTimings timings;
  Strategy strategy;
  SolveStatus reduced_status = SolveStatus::kNumericalFailure;
  double reduced_cost = 0.0;
  bool feasibility_checked = false;
  bool feasibility_passed = false;
  FeasibilityReport feasibility;  // of the reduced candidate, when checked
  bool full_solve_run = false;
};

using StrategyPredictor = std::function<Strategy(const ProblemParameters&)>;

// Predict, solve the reduced problem, check it against the full problem at
// the predicted final time, and fall back to the full free-final-time solve
// when either step fails.
TpdgOutcome RunTpdg(const MissionConfig& mission, const ProblemParameters& params,
                    const StrategyPredictor& predictor, const TpdgOptions& options = {});

TpdgOutcome RunTpdg(const MissionConfig& mission, const ProblemParameters& params,
                    const nn::ModelBundle& constraints, const nn::ModelBundle& time,
                    const TpdgOptions& options = {});

// JSON record of one call: path, timings, cost, final time, feasibility
// residuals and strategy summary.
std::string OutcomeJson(const TpdgOutcome& outcome, const MissionConfig& mission,
                        const ProblemParameters& params);

}  // namespace pdg

#endif  // PDG_RUNTIME_H_
