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


#ifndef PDG_NN_TRANSFORMER_H_
#define PDG_NN_TRANSFORMER_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdg/nn/attention.h"

namespace pdg::nn {

// kPerScalar: each input scalar is its own token (sequence length = input_dim).
// kSingle: the whole input vector is one token.
enum class TokenMode { kPerScalar, kSingle };

const char* ToString(TokenMode mode);
TokenMode ParseTokenMode(const std::string& text);

struct TransformerConfig {
  int input_dim = 9;
  int output_dim = 1;
  int d_model = 64;
  int n_heads = 1;
  int n_layers = 2;
  int d_ff = 0;  // 0 selects 4 * d_model
  double dropout = 0.1;
  TokenMode tokens = TokenMode::kPerScalar;

  void Validate() const;
  int d_k() const { return d_model / n_heads; }
  int ff_width() const { return d_ff > 0 ? d_ff : 4 * d_model; }
  int seq_len() const { return tokens == TokenMode::kPerScalar ? input_dim : 1; }
};

// Per-feature affine standardization fit on training rows.
struct Standardizer {
  RowVector mean;
  RowVector std;

  // Features with (near) zero spread get std = 1.
  static Standardizer Fit(const Matrix& x);
  Matrix Apply(const Matrix& x) const;
  Matrix Invert(const Matrix& z) const;
};

// Non-finite activation detected; layer() is the encoder layer index, or -1
// for the input embedding and -2 for the decoder.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(int layer, const std::string& what)
      : std::runtime_error(what), layer_(layer) {}
  int layer() const { return layer_; }

 private:
  int layer_;
};

struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
};

// Transformer-encoder regressor: linear token encoder, learned positional
// table, post-norm encoder layers (attention, add & norm, feedforward, add &
// norm), mean pooling over tokens, linear decoder.
class Transformer {
 public:
  Transformer(const TransformerConfig& config, std::uint64_t seed);

  const TransformerConfig& config() const { return config_; }
  std::vector<Parameter>& parameters() { return params_; }
  const std::vector<Parameter>& parameters() const { return params_; }
  Parameter& parameter(const std::string& name);
  const Parameter& parameter(const std::string& name) const;
  std::size_t ParameterCount() const;

  // Eval-mode forward pass on standardized rows (B x input_dim); returns
  // B x output_dim. `embeddings` receives the pooled B x d_model
  // representation that feeds the decoder. Safe to call concurrently.
  Matrix Forward(const Matrix& x, Matrix* embeddings = nullptr) const;

  // Train-mode forward pass with dropout masks drawn from rng. Keeps the
  // activations needed by Backward().
  Matrix ForwardTrain(const Matrix& x, std::mt19937_64& rng);

  // Accumulates dLoss/dparam into every Parameter::grad for the last
  // ForwardTrain() call, given dLoss/doutput.
  void Backward(const Matrix& d_out);

  void ZeroGrad();

 private:
  struct LayerIds {
    int wq, bq, wk, bk, wv, bv, wo, bo, g1, b1n, w1, b1, w2, b2, g2, b2n;
  };
  struct LayerCache {
    Matrix h0, q, k, v, ctx;
    std::vector<Matrix> weights;  // per (sample, head)
    Matrix mask1, xhat1;
    Eigen::VectorXd rstd1;
    Matrix h1, u, mask2, xhat2;
    Eigen::VectorXd rstd2;
  };
  struct Cache {
    Matrix x;
    int batch = 0;
    std::vector<LayerCache> layers;
    Matrix embeddings;
  };

  Matrix Run(const Matrix& x, std::mt19937_64* rng, Cache* cache, Matrix* embeddings) const;
  int Add(const std::string& name, int rows, int cols);

  TransformerConfig config_;
  std::vector<Parameter> params_;
  int enc_w_ = 0, enc_b_ = 0, pos_ = 0, dec_w_ = 0, dec_b_ = 0;
  std::vector<LayerIds> layers_;
  Cache cache_;
};

}  // namespace pdg::nn

#endif  // PDG_NN_TRANSFORMER_H_
