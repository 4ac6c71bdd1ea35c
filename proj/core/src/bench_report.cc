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


#include "pdg/bench_report.h"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace pdg {

Stat Summarize(const std::vector<double>& values) {
  Stat s;
  s.n = int(values.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (s.n - 1));
  }
  return s;
}

BenchCase RunBenchCase(const MissionConfig& mission, const ProblemParameters& params,
                       const StrategyPredictor& predictor, const TpdgOptions& options) {
  BenchCase c;
  c.full = FullSolve(mission, params, options.line_search);
  c.tpdg = RunTpdg(mission, params, predictor, options);
  const SolveResult& sol = c.tpdg.solution;
  if (sol.optimal()) {
    c.tpdg_verified =
        CheckFeasibility(BuildSocp(mission, params, sol.t_f), sol, options.tol, options.tol_eq)
            .feasible;
  }
  if (c.tpdg.path == PathTaken::kReducedAccepted && c.full.optimal()) {
    c.reduced_gap = sol.cost / c.full.cost - 1.0;
  }
  return c;
}

BenchReport BuildBenchReport(const std::vector<BenchCase>& cases) {
  BenchReport r;
  r.cases = int(cases.size());
  std::vector<double> full_ms, tpdg_ms, pred_ms, red_ms, check_ms, fallback_ms, gaps;
  int tpdg_ok = 0;
  int checked = 0, passed = 0;
  for (const BenchCase& c : cases) {
    full_ms.push_back(c.full.wall_time_ms);
    tpdg_ms.push_back(c.tpdg.timings.total_ms);
    pred_ms.push_back(c.tpdg.timings.prediction_ms);
    red_ms.push_back(c.tpdg.timings.reduced_solve_ms);
    if (c.tpdg.feasibility_checked) {
      check_ms.push_back(c.tpdg.timings.feasibility_check_ms);
      ++checked;
      passed += c.tpdg.feasibility_passed;
    }
    if (c.tpdg.full_solve_run) fallback_ms.push_back(c.tpdg.timings.full_solve_ms);
    r.full_feasible += c.full.optimal();
    tpdg_ok += c.tpdg.solution.optimal() && c.tpdg_verified;
    switch (c.tpdg.path) {
      case PathTaken::kReducedAccepted:
        ++r.reduced_accepted;
        gaps.push_back(c.reduced_gap);
        break;
      case PathTaken::kFallbackAfterInfeasibleReduced: ++r.fallback_infeasible_reduced; break;
      case PathTaken::kFallbackAfterFailedFeasibilityCheck: ++r.fallback_failed_check; break;
      case PathTaken::kFullInfeasible: ++r.full_infeasible; break;
    }
  }
  auto pct = [&](int k, int n) { return n > 0 ? 100.0 * k / n : 0.0; };
  auto row = [](std::string name, const std::vector<double>& ms, double feas) {
    const Stat s = Summarize(ms);
    return BenchRow{std::move(name), s.n, feas, s.mean, s.std};
  };
  r.algorithms.push_back(row("full_solve", full_ms, pct(r.full_feasible, r.cases)));
  r.algorithms.push_back(row("tpdg", tpdg_ms, pct(tpdg_ok, r.cases)));
  r.feasibility_check_pass_pct = pct(passed, checked);
  r.stages.push_back(row("prediction", pred_ms, 100.0));
  r.stages.push_back(row("reduced_solve", red_ms, pct(checked, r.cases)));
  r.stages.push_back(row("feasibility_check", check_ms, r.feasibility_check_pass_pct));
  r.stages.push_back(row("fallback_full_solve", fallback_ms,
                         pct(int(fallback_ms.size()) - r.full_infeasible,
                             int(fallback_ms.size()))));
  const double full_mean = r.algorithms[0].mean_ms;
  const double tpdg_mean = r.algorithms[1].mean_ms;
  if (tpdg_mean > 0.0) r.speedup = full_mean / tpdg_mean;
  if (full_mean > 0.0) {
    r.time_reduction_pct = 100.0 * (1.0 - tpdg_mean / full_mean);
    r.reduced_only_ratio = r.stages[1].mean_ms / full_mean;
  }
  r.suboptimality = Summarize(gaps);
  return r;
}

void BenchReport::WriteCsv(std::ostream& out) const {
  out << "kind,name,n,feasibility_pct,mean_ms,std_ms\n";
  char buf[256];
  auto put = [&](const char* kind, const BenchRow& b) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.4f,%.6g,%.6g\n", kind, b.name.c_str(), b.n,
                  b.feasibility_pct, b.mean_ms, b.std_ms);
    out << buf;
  };
  for (const BenchRow& b : algorithms) put("algorithm", b);
  for (const BenchRow& b : stages) put("stage", b);
}

std::string BenchReport::Summary() const {
  std::ostringstream os;
  char buf[256];
  os << "cases: " << cases << " (full-solve feasible: " << full_feasible << ")\n";
  os << "algorithm            feasible%    mean ms     std ms\n";
  for (const BenchRow& b : algorithms) {
    std::snprintf(buf, sizeof(buf), "%-20s %9.2f %10.2f %10.2f\n", b.name.c_str(),
                  b.feasibility_pct, b.mean_ms, b.std_ms);
    os << buf;
  }
  os << "stage                  pass%      mean ms     std ms     n\n";
  for (const BenchRow& b : stages) {
    std::snprintf(buf, sizeof(buf), "%-20s %9.2f %10.2f %10.2f %5d\n", b.name.c_str(),
                  b.feasibility_pct, b.mean_ms, b.std_ms, b.n);
    os << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "paths: accepted %d, fallback (reduced infeasible) %d, fallback (check failed) %d, "
                "infeasible %d\n",
                reduced_accepted, fallback_infeasible_reduced, fallback_failed_check,
                full_infeasible);
  os << buf;
  std::snprintf(buf, sizeof(buf),
                "speedup %.3fx, time reduction %.1f%%, reduced-solve / full-solve %.3f\n", speedup,
                time_reduction_pct, reduced_only_ratio);
  os << buf;
  if (suboptimality.n > 0) {
    std::snprintf(buf, sizeof(buf), "accepted-path suboptimality: mean %.3e, std %.3e\n",
                  suboptimality.mean, suboptimality.std);
    os << buf;
  }
  return os.str();
}

}  // namespace pdg
