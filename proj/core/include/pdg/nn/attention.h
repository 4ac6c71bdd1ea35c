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


#ifndef PDG_NN_ATTENTION_H_
#define PDG_NN_ATTENTION_H_

#include <Eigen/Core>

namespace pdg::nn {

using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

// Row-wise softmax with the row maximum subtracted first.
Matrix SoftmaxRows(const Matrix& scores);

// Softmax(Q K^T / sqrt(d_k)) V. `weights`, when given, receives the softmax matrix.
Matrix Attention(const Matrix& q, const Matrix& k, const Matrix& v, Matrix* weights = nullptr);

// Gradients of Attention() given the upstream gradient dO and the saved weights.
struct AttentionGrad {
  Matrix dq, dk, dv;
};
AttentionGrad AttentionBackward(const Matrix& q, const Matrix& k, const Matrix& v,
                                const Matrix& weights, const Matrix& d_out);

}  // namespace pdg::nn

#endif  // PDG_NN_ATTENTION_H_
