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


#ifndef PDG_BENCH_REPORT_H_
#define PDG_BENCH_REPORT_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "pdg/runtime.h"
#include "pdg/solver.h"

namespace pdg {

struct Stat {
  int n = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for n < 2
};
Stat Summarize(const std::vector<double>& values);

// Paired result for one parameter vector.
struct BenchCase {
  SolveResult full;
  TpdgOutcome tpdg;
  bool tpdg_verified = false;  // tpdg solution re-checked against the full problem
  double reduced_gap = 0.0;    // tpdg cost / full cost - 1 on the accepted path
};

// Runs the full free-final-time solve and T-PDG on the same parameters.
BenchCase RunBenchCase(const MissionConfig& mission, const ProblemParameters& params,
                       const StrategyPredictor& predictor, const TpdgOptions& options);

struct BenchRow {
  std::string name;
  int n = 0;
  double feasibility_pct = 0.0;
  double mean_ms = 0.0;
  double std_ms = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> algorithms;  // full solve, T-PDG
  std::vector<BenchRow> stages;      // prediction, reduced solve, feasibility check, fallback
  int cases = 0;
  int full_feasible = 0;
  int reduced_accepted = 0;
  int fallback_infeasible_reduced = 0;
  int fallback_failed_check = 0;
  int full_infeasible = 0;
  double feasibility_check_pass_pct = 0.0;
  double speedup = 0.0;             // mean full / mean tpdg
  double time_reduction_pct = 0.0;  // 100 (1 - mean tpdg / mean full)
  double reduced_only_ratio = 0.0;  // mean reduced-solve stage / mean full
  Stat suboptimality;               // over accepted cases

  void WriteCsv(std::ostream& out) const;
  std::string Summary() const;
};

BenchReport BuildBenchReport(const std::vector<BenchCase>& cases);

}  // namespace pdg

#endif  // PDG_BENCH_REPORT_H_
