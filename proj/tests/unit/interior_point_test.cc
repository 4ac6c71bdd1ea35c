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

#include <random>

#include <Eigen/Dense>

#include "pdg/interior_point.h"

namespace pdg {
namespace {

SparseMatrix Sparse(const Eigen::MatrixXd& m) { return m.sparseView(); }

ConeProgram Lp() {
  // max x1 + x2  s.t.  x1 + 2 x2 <= 4,  3 x1 + x2 <= 6,  x >= 0.
  ConeProgram p;
  p.c = Eigen::Vector2d(-1, -1);
  p.A.resize(0, 2);
  p.b.resize(0);
  Eigen::MatrixXd g(4, 2);
  g << 1, 2, 3, 1, -1, 0, 0, -1;
  p.G = Sparse(g);
  p.h = Eigen::Vector4d(4, 6, 0, 0);
  p.cones.linear = 4;
  return p;
}

TEST(InteriorPoint, SolvesSmallLp) {
  const ConeSolution s = SolveConeProgram(Lp(), {});
  ASSERT_EQ(s.status, ConeStatus::kOptimal) << s.message;
  EXPECT_NEAR(s.x(0), 1.6, 1e-7);
  EXPECT_NEAR(s.x(1), 1.2, 1e-7);
  EXPECT_NEAR(s.primal_cost, -2.8, 1e-8);
}

TEST(InteriorPoint, SolvesSmallSocpWithEquality) {
  // min -x1  s.t.  x2 = 0.6,  |(x1, x2)| <= 1.
  ConeProgram p;
  p.c = Eigen::Vector2d(-1, 0);
  Eigen::MatrixXd a(1, 2);
  a << 0, 1;
  p.A = Sparse(a);
  p.b = Eigen::VectorXd::Constant(1, 0.6);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(3, 2);
  g(1, 0) = -1;
  g(2, 1) = -1;
  p.G = Sparse(g);
  p.h = Eigen::Vector3d(1, 0, 0);
  p.cones.soc = {3};
  const ConeSolution s = SolveConeProgram(p, {});
  ASSERT_EQ(s.status, ConeStatus::kOptimal) << s.message;
  EXPECT_NEAR(s.x(0), 0.8, 1e-7);
  EXPECT_NEAR(s.primal_cost, -0.8, 1e-8);
}

TEST(InteriorPoint, DetectsPrimalInfeasibility) {
  // x >= 1 and x <= 0.
  ConeProgram p;
  p.c = Eigen::VectorXd::Ones(1);
  p.A.resize(0, 1);
  p.b.resize(0);
  Eigen::MatrixXd g(2, 1);
  g << -1, 1;
  p.G = Sparse(g);
  p.h = Eigen::Vector2d(-1, 0);
  p.cones.linear = 2;
  EXPECT_EQ(SolveConeProgram(p, {}).status, ConeStatus::kPrimalInfeasible);
}

TEST(InteriorPoint, DetectsUnboundedness) {
  // min -x  s.t. x >= 0.
  ConeProgram p;
  p.c = -Eigen::VectorXd::Ones(1);
  p.A.resize(0, 1);
  p.b.resize(0);
  p.G = Sparse(-Eigen::MatrixXd::Ones(1, 1));
  p.h = Eigen::VectorXd::Zero(1);
  p.cones.linear = 1;
  EXPECT_EQ(SolveConeProgram(p, {}).status, ConeStatus::kDualInfeasible);
}

// Random problems built around a known primal-dual pair; the returned point
// is checked against the KKT conditions directly.
ConeProgram RandomSocp(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const int nv = 8, ne = 2;
  ConeProgram p;
  p.cones.linear = 4;
  p.cones.soc = {3, 4, 3};
  const int m = p.cones.rows();
  Eigen::MatrixXd a(ne, nv), g(m, nv);
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < nv; ++j) a(i, j) = n(rng);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < nv; ++j) g(i, j) = n(rng);
  Eigen::VectorXd x0(nv), y0(ne);
  for (int j = 0; j < nv; ++j) x0(j) = n(rng);
  for (int i = 0; i < ne; ++i) y0(i) = n(rng);
  // Interior s0 and z0 keep both problems strictly feasible (hence bounded).
  Eigen::VectorXd s0 = cone::Identity(p.cones), z0 = cone::Identity(p.cones);
  for (int i = 0; i < m; ++i) {
    s0(i) += 0.1 * std::abs(n(rng));
    z0(i) += 0.1 * std::abs(n(rng));
  }
  p.A = Sparse(a);
  p.b = a * x0;
  p.G = Sparse(g);
  p.h = g * x0 + s0;
  p.c = -a.transpose() * y0 - g.transpose() * z0;
  return p;
}

TEST(InteriorPoint, RandomSocpsSatisfyKkt) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const ConeProgram p = RandomSocp(rng);
    const ConeSolution s = SolveConeProgram(p, {});
    ASSERT_EQ(s.status, ConeStatus::kOptimal) << "trial " << trial << ": " << s.message;
    const Eigen::MatrixXd a = p.A, g = p.G;
    EXPECT_LT((a * s.x - p.b).norm(), 1e-7);
    EXPECT_LT((g * s.x + s.s - p.h).norm(), 1e-7);
    EXPECT_LT((p.c + a.transpose() * s.y + g.transpose() * s.z).norm(), 1e-7);
    EXPECT_LE(cone::MaxEigenvalueShift(p.cones, s.s), 1e-9);
    EXPECT_LE(cone::MaxEigenvalueShift(p.cones, s.z), 1e-9);
    EXPECT_LT(std::abs(s.s.dot(s.z)), 1e-7);
    EXPECT_NEAR(p.c.dot(s.x), -p.b.dot(s.y) - p.h.dot(s.z), 1e-6);
  }
}

TEST(InteriorPoint, DeterministicForIdenticalInput) {
  std::mt19937_64 rng(23);
  const ConeProgram p = RandomSocp(rng);
  const ConeSolution a = SolveConeProgram(p, {});
  const ConeSolution b = SolveConeProgram(p, {});
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.primal_cost, b.primal_cost);
}

TEST(InteriorPoint, EquilibrationDoesNotChangeAnswer) {
  std::mt19937_64 rng(29);
  ConeProgram p = RandomSocp(rng);
  // Badly scaled rows.
  Eigen::MatrixXd g = p.G;
  g.row(0) *= 1e3;
  p.h(0) *= 1e3;
  p.G = Sparse(g);
  InteriorPointSettings off;
  off.equilibrate = false;
  const ConeSolution a = SolveConeProgram(p, {});
  const ConeSolution b = SolveConeProgram(p, off);
  ASSERT_EQ(a.status, ConeStatus::kOptimal);
  ASSERT_EQ(b.status, ConeStatus::kOptimal);
  EXPECT_NEAR(a.primal_cost, b.primal_cost, 1e-6 * (1 + std::abs(a.primal_cost)));
}

}  // namespace
}  // namespace pdg
