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


#include "pdg/nn/attention.h"

#include <cassert>
#include <cmath>

namespace pdg::nn {

Matrix SoftmaxRows(const Matrix& scores) {
  Matrix out(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double m = scores.row(i).maxCoeff();
    out.row(i) = (scores.row(i).array() - m).exp().matrix();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

Matrix Attention(const Matrix& q, const Matrix& k, const Matrix& v, Matrix* weights) {
  assert(q.cols() == k.cols() && k.rows() == v.rows());
  const double scale = 1.0 / std::sqrt(double(q.cols()));
  Matrix p = SoftmaxRows((q * k.transpose()) * scale);
  Matrix out = p * v;
  if (weights) *weights = std::move(p);
  return out;
}

AttentionGrad AttentionBackward(const Matrix& q, const Matrix& k, const Matrix& v,
                                const Matrix& weights, const Matrix& d_out) {
  const double scale = 1.0 / std::sqrt(double(q.cols()));
  AttentionGrad g;
  g.dv = weights.transpose() * d_out;
  const Matrix dp = d_out * v.transpose();
  // Softmax Jacobian applied row by row: dS = P .* (dP - rowsum(dP .* P)).
  const Eigen::VectorXd inner = (dp.array() * weights.array()).rowwise().sum();
  Matrix ds = weights.array() * (dp.array().colwise() - inner.array());
  ds *= scale;
  g.dq = ds * k;
  g.dk = ds.transpose() * q;
  return g;
}

}  // namespace pdg::nn
