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


#ifndef PDG_CONE_PROGRAM_H_
#define PDG_CONE_PROGRAM_H_

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace pdg {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

// Cone K = R_+^linear x Q^soc[0] x Q^soc[1] x ...; rows of G are ordered the
// same way.
struct ConeDims {
  int linear = 0;
  std::vector<int> soc;

  int rows() const;
  // Degree of the cone: linear + number of second-order cones.
  int degree() const;
};

//   minimize    c'x
//   subject to  A x = b
//               G x + s = h,  s in K
struct ConeProgram {
  Eigen::VectorXd c;
  SparseMatrix A;
  Eigen::VectorXd b;
  SparseMatrix G;
  Eigen::VectorXd h;
  ConeDims cones;

  int num_variables() const { return int(c.size()); }
  // Throws std::invalid_argument on inconsistent shapes.
  void Validate() const;
};

// Elementwise operations on vectors partitioned according to a ConeDims.
namespace cone {

// Jordan product u o v.
Eigen::VectorXd Product(const ConeDims& dims, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// Solves lambda o x = r for x; lambda must be interior.
Eigen::VectorXd InverseProduct(const ConeDims& dims, const Eigen::VectorXd& lambda,
                               const Eigen::VectorXd& r);

// Identity element e.
Eigen::VectorXd Identity(const ConeDims& dims);

// Largest alpha such that x + alpha*e lies on the boundary of K; negative when
// x is strictly interior (i.e. -min eigenvalue).
double MaxEigenvalueShift(const ConeDims& dims, const Eigen::VectorXd& x);

// Largest alpha >= 0 with x + alpha*d in K (x interior); +inf if unbounded.
double MaxStep(const ConeDims& dims, const Eigen::VectorXd& x, const Eigen::VectorXd& d);

// Nesterov-Todd scaling for the pair (s, z): block-diagonal symmetric W with
// W z = W^{-1} s = lambda.
struct NtScaling {
  // Per linear row: sqrt(s/z).
  Eigen::VectorXd linear;
  // Per second-order cone: the dense block and its inverse.
  std::vector<Eigen::MatrixXd> soc;
  std::vector<Eigen::MatrixXd> soc_inverse;

  Eigen::VectorXd Apply(const ConeDims& dims, const Eigen::VectorXd& v) const;
  Eigen::VectorXd ApplyInverse(const ConeDims& dims, const Eigen::VectorXd& v) const;
};

NtScaling ComputeNtScaling(const ConeDims& dims, const Eigen::VectorXd& s,
                           const Eigen::VectorXd& z);

}  // namespace cone
}  // namespace pdg

#endif  // PDG_CONE_PROGRAM_H_
