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


#ifndef PDG_INTERIOR_POINT_H_
#define PDG_INTERIOR_POINT_H_

#include <string>

#include <Eigen/Core>

#include "pdg/cone_program.h"

namespace pdg {

enum class ConeStatus {
  kOptimal,
  kPrimalInfeasible,
  kDualInfeasible,
  kMaxIterations,
  kNumericalFailure,
};

const char* ToString(ConeStatus status);

struct InteriorPointSettings {
  int max_iterations = 80;
  double feastol = 1e-8;
  double abstol = 1e-10;
  double reltol = 1e-10;
  // Static regularization of the KKT matrix; iterative refinement removes it.
  double regularization = 1e-8;
  int refinement_steps = 4;
  bool equilibrate = true;
  double step_fraction = 0.99;
  // Accepted as "optimal (reduced accuracy)" when the iteration cannot make
  // further progress.
  double inaccurate_feastol = 1e-6;
  double inaccurate_gaptol = 1e-6;  // absolute or relative
};

struct ConeSolution {
  ConeStatus status = ConeStatus::kNumericalFailure;
  Eigen::VectorXd x, y, z, s;
  int iterations = 0;
  double primal_cost = 0.0;
  double dual_cost = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  std::string message;
};

// Homogeneous self-dual primal-dual interior-point method with Nesterov-Todd
// scaling and Mehrotra predictor-corrector steps. The Newton systems are
// solved with a sparse LDL' factorization of the regularized quasi-definite
// KKT matrix. Deterministic for identical inputs.
ConeSolution SolveConeProgram(const ConeProgram& problem, const InteriorPointSettings& settings);

}  // namespace pdg

#endif  // PDG_INTERIOR_POINT_H_
