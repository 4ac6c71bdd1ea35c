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


#include <gtest/gtest.h>

#include <json.hpp>

#include "pdg/runtime.h"
#include "test_support.h"

namespace pdg {
namespace {

using testing_support::DefaultMission;
using testing_support::ReferenceFullSolve;
using testing_support::RelDiff;

StrategyPredictor Fixed(const Strategy& s) {
  return [s](const ProblemParameters&) { return s; };
}

const Strategy& Oracle() {
  static const Strategy s = OracleStrategy(DefaultMission(), ReferenceTheta(), ReferenceFullSolve());
  return s;
}

TEST(RunTpdg, OracleStrategyIsAccepted) {
  const TpdgOutcome o = RunTpdg(DefaultMission(), ReferenceTheta(), Fixed(Oracle()));
  EXPECT_EQ(o.path, PathTaken::kReducedAccepted);
  EXPECT_FALSE(o.full_solve_run);
  EXPECT_TRUE(o.feasibility_passed);
  ASSERT_TRUE(o.solution.optimal());
  const SolveResult fixed = FixedTimeSolve(DefaultMission(), ReferenceTheta(), Oracle().t_f_star);
  EXPECT_LT(RelDiff(o.solution.cost, fixed.cost), 1e-4);
  EXPECT_EQ(o.timings.full_solve_ms, 0.0);
}

TEST(RunTpdg, EmptyStrategyFallsBackToFeasibleSolution) {
  Strategy s = Oracle();
  std::fill(s.tau.begin(), s.tau.end(), 0);
  const TpdgOutcome o = RunTpdg(DefaultMission(), ReferenceTheta(), Fixed(s));
  EXPECT_TRUE(o.path == PathTaken::kFallbackAfterFailedFeasibilityCheck ||
              o.path == PathTaken::kFallbackAfterInfeasibleReduced)
      << ToString(o.path);
  EXPECT_TRUE(o.full_solve_run);
  ASSERT_TRUE(o.solution.optimal());
  const FeasibilityReport r =
      CheckFeasibility(BuildSocp(DefaultMission(), ReferenceTheta(), o.solution.t_f), o.solution);
  EXPECT_TRUE(r.feasible) << r.worst_violation;
  EXPECT_LT(RelDiff(o.solution.cost, ReferenceFullSolve().cost), 1e-3);
}

TEST(RunTpdg, BadTimeFallsBack) {
  Strategy s = Oracle();
  s.t_f_star *= 0.6;
  const TpdgOutcome o = RunTpdg(DefaultMission(), ReferenceTheta(), Fixed(s));
  ASSERT_TRUE(o.solution.optimal());
  if (o.path == PathTaken::kReducedAccepted) {
    EXPECT_TRUE(CheckFeasibility(BuildSocp(DefaultMission(), ReferenceTheta(), o.solution.t_f),
                                 o.solution)
                    .feasible);
  } else {
    EXPECT_TRUE(o.full_solve_run);
  }
}

TEST(RunTpdg, InfeasibleParametersReportFullInfeasible) {
  const ProblemParameters theta = MakeTheta(DegToRad(10), DegToRad(20), DegToRad(60),
                                            Vec3(2000, 2000, 1000), Vec3(-15, -15, -30));
  const TpdgOutcome o = RunTpdg(DefaultMission(), theta, Fixed(Oracle()));
  EXPECT_EQ(o.path, PathTaken::kFullInfeasible);
  EXPECT_FALSE(o.solution.optimal());
  EXPECT_TRUE(o.full_solve_run);
}

TEST(RunTpdg, StageTimesAddUpToTotal) {
  for (bool empty : {false, true}) {
    Strategy s = Oracle();
    if (empty) std::fill(s.tau.begin(), s.tau.end(), 0);
    const TpdgOutcome o = RunTpdg(DefaultMission(), ReferenceTheta(), Fixed(s));
    EXPECT_LE(o.timings.StageSum(), o.timings.total_ms + 1e-9);
    EXPECT_GE(o.timings.StageSum(), 0.95 * o.timings.total_ms - 1.0);
  }
}

TEST(RunTpdg, ResolveModeReturnsFullSolution) {
  TpdgOptions opt;
  opt.feasibility = FeasibilityMode::kResolve;
  const TpdgOutcome o = RunTpdg(DefaultMission(), ReferenceTheta(), Fixed(Oracle()), opt);
  EXPECT_EQ(o.path, PathTaken::kReducedAccepted);
  const SolveResult fixed = FixedTimeSolve(DefaultMission(), ReferenceTheta(), Oracle().t_f_star);
  EXPECT_LT(RelDiff(o.solution.cost, fixed.cost), 1e-8);
  EXPECT_EQ(ParseFeasibilityMode("resolve"), FeasibilityMode::kResolve);
  EXPECT_THROW(ParseFeasibilityMode("none"), std::invalid_argument);
}

TEST(OutcomeJson, ParsesAndCarriesPath) {
  const TpdgOutcome o = RunTpdg(DefaultMission(), ReferenceTheta(), Fixed(Oracle()));
  const auto j = nlohmann::json::parse(OutcomeJson(o, DefaultMission(), ReferenceTheta()));
  EXPECT_EQ(j.at("path_taken"), "reduced_accepted");
  EXPECT_EQ(j.at("strategy").at("flags"), 397);
  EXPECT_TRUE(j.at("feasibility").at("passed").get<bool>());
  EXPECT_EQ(j.at("feasibility").at("family_violation").size(), std::size_t(kNumFamilies));
  EXPECT_NEAR(j.at("theta").at("phi_deg").get<double>(), 10.0, 1e-9);
}

TEST(RunTpdg, ModelsMustMatchMission) {
  nn::TransformerConfig c;
  c.d_model = 16;
  c.n_heads = 2;
  c.n_layers = 1;
  c.output_dim = 397;
  nn::ModelBundle constraints(nn::Target::kConstraints, c, 1);
  c.output_dim = 1;
  nn::ModelBundle time(nn::Target::kTime, c, 1);
  constraints.layout_version = time.layout_version = kLayoutVersion;
  constraints.nodes = time.nodes = 50;
  constraints.mission_hash = time.mission_hash = DefaultMission().Hash();
  MissionConfig other = DefaultMission();
  other.vehicle.m_wet = 2000;
  EXPECT_THROW(RunTpdg(other, ReferenceTheta(), constraints, time), nn::ModelMismatchError);
  EXPECT_THROW(RunTpdg(DefaultMission(), ReferenceTheta(), time, constraints),
               nn::ModelMismatchError);
}

}  // namespace
}  // namespace pdg
