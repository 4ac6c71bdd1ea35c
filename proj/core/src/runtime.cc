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


#include "pdg/runtime.h"

#include <chrono>
#include <cmath>

#include <json.hpp>

namespace pdg {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::json Number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

const char* ToString(PathTaken path) {
  switch (path) {
    case PathTaken::kReducedAccepted: return "reduced_accepted";
    case PathTaken::kFallbackAfterInfeasibleReduced: return "fallback_after_infeasible_reduced";
    case PathTaken::kFallbackAfterFailedFeasibilityCheck:
      return "fallback_after_failed_feasibility_check";
    case PathTaken::kFullInfeasible: return "full_infeasible";
  }
  return "unknown";
}

const char* ToString(FeasibilityMode mode) {
  return mode == FeasibilityMode::kResidual ? "residual" : "resolve";
}

FeasibilityMode ParseFeasibilityMode(const std::string& text) {
  if (text == "residual") return FeasibilityMode::kResidual;
  if (text == "resolve") return FeasibilityMode::kResolve;
  throw std::invalid_argument("unknown feasibility mode '" + text + "' (residual|resolve)");
}

TpdgOutcome RunTpdg(const MissionConfig& mission, const ProblemParameters& params,
                    const StrategyPredictor& predictor, const TpdgOptions& options) {
  const Clock::time_point start = Clock::now();
  TpdgOutcome out;

  Clock::time_point stage = Clock::now();
  out.strategy = predictor(params);
  out.timings.prediction_ms = Since(stage);

  stage = Clock::now();
  const SolveResult reduced = ReducedSolve(mission, params, out.strategy);
  out.timings.reduced_solve_ms = Since(stage);
  out.reduced_status = reduced.status;
  out.reduced_cost = reduced.cost;

  bool accepted = false;
  if (reduced.optimal() && std::isfinite(reduced.cost)) {
    stage = Clock::now();
    out.feasibility_checked = true;
    try {
      const DiscretizedSocp full = BuildSocp(mission, params, out.strategy.t_f_star);
      if (options.feasibility == FeasibilityMode::kResidual) {
        out.feasibility = CheckFeasibility(full, reduced, options.tol, options.tol_eq);
        if (out.feasibility.feasible) {
          out.solution = reduced;
          accepted = true;
        }
      } else {
        SolveResult resolved = SolveConic(full);
        if (resolved.optimal()) {
          out.feasibility = CheckFeasibility(full, resolved, options.tol, options.tol_eq);
          if (out.feasibility.feasible) {
            out.solution = std::move(resolved);
            accepted = true;
          }
        } else {
          out.feasibility = CheckFeasibility(full, reduced, options.tol, options.tol_eq);
          out.feasibility.feasible = false;
        }
      }
    } catch (const FuelExhaustionError&) {
      out.feasibility.feasible = false;
    }
    out.feasibility_passed = accepted;
    out.timings.feasibility_check_ms = Since(stage);
  }

  if (accepted) {
    out.path = PathTaken::kReducedAccepted;
  } else {
    stage = Clock::now();
    out.full_solve_run = true;
    out.solution = FullSolve(mission, params, options.line_search, out.strategy.t_f_star);
    out.timings.full_solve_ms = Since(stage);
    if (!out.solution.optimal()) {
      out.path = PathTaken::kFullInfeasible;
    } else if (out.feasibility_checked) {
      out.path = PathTaken::kFallbackAfterFailedFeasibilityCheck;
    } else {
      out.path = PathTaken::kFallbackAfterInfeasibleReduced;
    }
  }
  out.timings.total_ms = Since(start);
  return out;
}

TpdgOutcome RunTpdg(const MissionConfig& mission, const ProblemParameters& params,
                    const nn::ModelBundle& constraints, const nn::ModelBundle& time,
                    const TpdgOptions& options) {
  nn::CheckCompatible(constraints, nn::Target::kConstraints, mission);
  nn::CheckCompatible(time, nn::Target::kTime, mission);
  nn::PredictOptions predict = options.predict;
  predict.t_lo = options.line_search.t_lo;
  if (!(predict.t_hi > 0.0) || !std::isfinite(predict.t_hi)) {
    predict.t_hi = options.line_search.t_hi > 0.0 ? options.line_search.t_hi
                                                  : FuelExhaustionTime(mission, params);
  }
  return RunTpdg(
      mission, params,
      [&](const ProblemParameters& p) {
        return nn::PredictStrategy(constraints, time, mission, p, predict);
      },
      options);
}

std::string OutcomeJson(const TpdgOutcome& o, const MissionConfig& mission,
                        const ProblemParameters& params) {
  nlohmann::json j;
  j["path_taken"] = ToString(o.path);
  j["status"] = ToString(o.solution.status);
  j["cost"] = Number(o.solution.cost);
  j["t_f"] = Number(o.solution.t_f);
  j["mission_hash"] = mission.Hash();
  j["layout_version"] = kLayoutVersion;
  const auto v = params.ToVector();
  j["theta"] = {{"phi_deg", RadToDeg(v[0])},      {"gamma_gs_deg", RadToDeg(v[1])},
                {"gamma_p_deg", RadToDeg(v[2])},  {"r0", {v[3], v[4], v[5]}},
                {"v0", {v[6], v[7], v[8]}}};
  j["strategy"] = {{"t_f_star", Number(o.strategy.t_f_star)},
                   {"active_flags", o.strategy.ActiveCount()},
                   {"flags", o.strategy.tau.size()}};
  j["reduced"] = {{"status", ToString(o.reduced_status)}, {"cost", Number(o.reduced_cost)}};
  nlohmann::json feas = {{"checked", o.feasibility_checked}, {"passed", o.feasibility_passed}};
  if (o.feasibility_checked) {
    feas["worst_violation"] = Number(o.feasibility.worst_violation);
    feas["worst"] = o.feasibility.worst;
    feas["equality_violation"] = Number(o.feasibility.equality_violation);
    nlohmann::json fam = nlohmann::json::object();
    for (int f = 0; f < kNumFamilies; ++f) {
      fam[FamilyName(Family(f))] = Number(o.feasibility.family_violation[f]);
    }
    feas["family_violation"] = fam;
  }
  j["feasibility"] = feas;
  j["timings_ms"] = {{"prediction", o.timings.prediction_ms},
                     {"reduced_solve", o.timings.reduced_solve_ms},
                     {"feasibility_check", o.timings.feasibility_check_ms},
                     {"full_solve", o.timings.full_solve_ms},
                     {"total", o.timings.total_ms}};
  j["full_solve_run"] = o.full_solve_run;
  return j.dump(2);
}

}  // namespace pdg
