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


#include "pdg/solver.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace pdg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

SolveResult Infeasible(double t_f, std::string why) {
  SolveResult r;
  r.status = SolveStatus::kInfeasible;
  r.cost = kInf;
  r.t_f = t_f;
  r.diagnostics = std::move(why);
  return r;
}

}  // namespace

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

InteriorPointSettings SettingsFor(const MissionConfig& mission) {
  InteriorPointSettings s;
  s.max_iterations = mission.solver.max_iterations;
  s.feastol = mission.solver.feastol;
  s.abstol = mission.solver.abstol;
  s.reltol = mission.solver.reltol;
  return s;
}

SolveResult SolveConic(const DiscretizedSocp& socp) {
  const auto start = std::chrono::steady_clock::now();
  const ConeProgram program = socp.ToConeProgram();
  const ConeSolution sol = SolveConeProgram(program, SettingsFor(socp.mission()));

  SolveResult r;
  r.t_f = socp.t_f();
  r.iterations = sol.iterations;
  r.diagnostics = sol.message;
  switch (sol.status) {
    case ConeStatus::kOptimal:
      r.status = SolveStatus::kOptimal;
      r.trajectory = Trajectory(sol.x);
      r.cost = sol.primal_cost;
      break;
    case ConeStatus::kPrimalInfeasible:
      r.status = SolveStatus::kInfeasible;
      r.cost = kInf;
      break;
    case ConeStatus::kDualInfeasible:
      r.status = SolveStatus::kUnbounded;
      r.cost = -kInf;
      break;
    case ConeStatus::kMaxIterations:
    case ConeStatus::kNumericalFailure: {
      std::ostringstream os;
      os << sol.message << " [pres " << sol.primal_residual << ", dres " << sol.dual_residual
         << ", gap " << sol.gap << "]";
      r.status = SolveStatus::kNumericalFailure;
      r.cost = kInf;
      r.diagnostics = os.str();
      break;
    }
  }
  r.wall_time_ms = ElapsedMs(start);
  r.max_inner_ms = r.wall_time_ms;
  return r;
}

void LineSearchConfig::Validate() const {
  if (!(t_lo > 0.0)) throw std::invalid_argument("LineSearchConfig: t_lo must be positive");
  if (t_hi > 0.0 && !(t_hi > t_lo)) {
    throw std::invalid_argument("LineSearchConfig: t_hi must exceed t_lo");
  }
  if (coarse_grid < 3) throw std::invalid_argument("LineSearchConfig: coarse_grid must be >= 3");
  if (!(refine_tol > 0.0)) throw std::invalid_argument("LineSearchConfig: refine_tol must be > 0");
}

double FuelExhaustionTime(const MissionConfig& mission, const ProblemParameters& params) {
  const ThrustBounds rho = EffectiveThrustBounds(mission.vehicle, params.phi());
  return (mission.vehicle.m_wet - mission.vehicle.m_dry) / (mission.vehicle.alpha * rho.rho_min);
}

SolveResult FixedTimeSolve(const MissionConfig& mission, const ProblemParameters& params,
                           double t_f) {
  const auto start = std::chrono::steady_clock::now();
  try {
    SolveResult r = SolveConic(BuildSocp(mission, params, t_f));
    return r;
  } catch (const FuelExhaustionError& e) {
    SolveResult r = Infeasible(t_f, e.what());
    r.wall_time_ms = ElapsedMs(start);
    return r;
  }
}

SolveResult FullSolve(const MissionConfig& mission, const ProblemParameters& params,
                      const LineSearchConfig& ls, std::optional<double> hint) {
  return FullSolve(mission, params, ls, hint, nullptr);
}

SolveResult FullSolve(const MissionConfig& mission, const ProblemParameters& params,
                      const LineSearchConfig& ls, std::optional<double> hint,
                      LineSearchTrace* trace) {
  ls.Validate();
  const auto start = std::chrono::steady_clock::now();
  const double exhaustion = FuelExhaustionTime(mission, params);
  const double t_hi = ls.t_hi > 0.0 ? ls.t_hi : exhaustion;
  if (!(t_hi > ls.t_lo)) {
    SolveResult r = Infeasible(0.0, "fuel-exhaustion time below t_lo");
    r.conic_solves = 0;
    return r;
  }

  const int n = ls.coarse_grid;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = ls.t_lo + (t_hi - ls.t_lo) * i / (n - 1);

  std::vector<SolveResult> results(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (hint) {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(grid[a] - *hint) < std::abs(grid[b] - *hint);
    });
  }
  auto evaluate = [&](int i) {
    if (grid[i] > exhaustion) {
      results[i] = Infeasible(grid[i], "beyond fuel-exhaustion time");
      results[i].conic_solves = 0;
    } else {
      results[i] = FixedTimeSolve(mission, params, grid[i]);
    }
  };
  const int workers = std::max(1, std::min(ls.workers, n));
  if (workers == 1) {
    for (int i : order) evaluate(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int j = next++; j < n; j = next++) evaluate(order[j]);
      });
    }
    for (auto& t : pool) t.join();
  }

  auto cost_of = [](const SolveResult& r) { return r.optimal() ? r.cost : kInf; };
  int best = -1;
  for (int i = 0; i < n; ++i) {
    if (cost_of(results[i]) < (best < 0 ? kInf : cost_of(results[best]))) best = i;
  }
  int solves = 0;
  double max_inner = 0.0;
  for (const auto& r : results) {
    solves += r.conic_solves;
    max_inner = std::max(max_inner, r.max_inner_ms);
  }

  bool unimodal = true;
  {
    // Finite costs should form one contiguous run with a single minimum.
    int first = -1, last = -1;
    for (int i = 0; i < n; ++i) {
      if (std::isfinite(cost_of(results[i]))) {
        if (first < 0) first = i;
        last = i;
      }
    }
    if (first >= 0) {
      int direction_changes = 0;
      double prev_delta = 0.0;
      for (int i = first; i < last; ++i) {
        const double a = cost_of(results[i]), b = cost_of(results[i + 1]);
        if (!std::isfinite(a) || !std::isfinite(b)) {
          unimodal = false;
          break;
        }
        const double delta = b - a;
        if (prev_delta < 0.0 && delta > 0.0) ++direction_changes;
        if (prev_delta > 0.0 && delta < 0.0) unimodal = false;
        if (delta != 0.0) prev_delta = delta;
      }
      if (direction_changes > 1) unimodal = false;
    }
  }
  if (trace) {
    trace->grid.clear();
    trace->refinement.clear();
    for (int i = 0; i < n; ++i) trace->grid.emplace_back(grid[i], cost_of(results[i]));
    trace->unimodal = unimodal;
  }

  if (best < 0) {
    SolveResult r = Infeasible(0.0, "no feasible final time on the coarse grid");
    r.conic_solves = solves;
    r.max_inner_ms = max_inner;
    r.wall_time_ms = ElapsedMs(start);
    return r;
  }

  // Golden-section refinement on the bracket around the best grid point.
  SolveResult best_result = results[best];
  double a = grid[std::max(best - 1, 0)];
  double b = grid[std::min(best + 1, n - 1)];
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  auto probe = [&](double t) {
    SolveResult r = t > exhaustion ? Infeasible(t, "beyond fuel-exhaustion time")
                                   : FixedTimeSolve(mission, params, t);
    ++solves;
    max_inner = std::max(max_inner, r.max_inner_ms);
    const double c = cost_of(r);
    if (trace) trace->refinement.emplace_back(t, c);
    if (c < cost_of(best_result) ||
        (c == cost_of(best_result) && t < best_result.t_f)) {
      best_result = r;
    }
    return c;
  };
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = probe(c);
  double fd = probe(d);
  while (b - a > ls.refine_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = probe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = probe(d);
    }
  }

  best_result.conic_solves = solves;
  best_result.max_inner_ms = max_inner;
  best_result.wall_time_ms = ElapsedMs(start);
  if (!unimodal) best_result.diagnostics += " [warning: grid costs not unimodal in t_f]";
  return best_result;
}

SolveResult ReducedSolve(const MissionConfig& mission, const ProblemParameters& params,
                         const Strategy& strategy) {
  strategy.Validate(mission.nodes);
  const auto start = std::chrono::steady_clock::now();
  try {
    const DiscretizedSocp reduced =
        ReduceProblem(BuildSocp(mission, params, strategy.t_f_star), strategy);
    return SolveConic(reduced);
  } catch (const FuelExhaustionError& e) {
    SolveResult r = Infeasible(strategy.t_f_star, e.what());
    r.wall_time_ms = ElapsedMs(start);
    return r;
  }
}

std::vector<std::uint8_t> ExtractTightConstraints(const DiscretizedSocp& socp,
                                                  const SolveResult& solution, double tol) {
  if (!solution.optimal()) {
    throw std::invalid_argument(std::string("ExtractTightConstraints: solution status is ") +
                                ToString(solution.status));
  }
  return ExtractTightConstraints(socp, solution.trajectory, tol);
}

FeasibilityReport CheckFeasibility(const DiscretizedSocp& socp, const SolveResult& candidate,
                                   double tol, double tol_eq) {
  return CheckFeasibility(socp, candidate.trajectory, tol, tol_eq);
}

Strategy OracleStrategy(const MissionConfig& mission, const ProblemParameters& params,
                        const SolveResult& full, double tol) {
  const DiscretizedSocp socp = BuildSocp(mission, params, full.t_f);
  return Strategy{ExtractTightConstraints(socp, full, tol), full.t_f};
}

}  // namespace pdg
