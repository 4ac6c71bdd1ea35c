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


#ifndef PDG_NN_MODEL_IO_H_
#define PDG_NN_MODEL_IO_H_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pdg/nn/transformer.h"

namespace pdg::nn {

enum class Target { kConstraints, kTime };

const char* ToString(Target target);
Target ParseTarget(const std::string& text);

// A trained network together with everything needed to apply it: input
// standardization and the problem layout it was trained against.
struct ModelBundle {
  Target target = Target::kTime;
  Transformer net;
  Standardizer standardizer;
  std::string layout_version;
  std::string mission_hash;
  int nodes = 0;
  std::string optimizer;

  // Starts with an identity standardizer; training replaces it.
  ModelBundle(Target target, const TransformerConfig& config, std::uint64_t seed)
      : target(target),
        net(config, seed),
        standardizer{RowVector::Zero(config.input_dim), RowVector::Ones(config.input_dim)} {}

  // Raw parameter rows (B x 9) to raw model outputs.
  Matrix Predict(const Matrix& theta) const;
  // As Predict(), also returning the pooled pre-decoder representation.
  Matrix Embed(const Matrix& theta, Matrix* outputs = nullptr) const;
};

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kModelFormatVersion = 1;

// Layout: 8-byte magic "PDGMODEL", little-endian uint64 header length, JSON
// header, then float64 little-endian tensor data in header order.
void SaveModel(const ModelBundle& model, std::ostream& out);
void SaveModel(const ModelBundle& model, const std::filesystem::path& path);
ModelBundle LoadModel(std::istream& in);
ModelBundle LoadModel(const std::filesystem::path& path);

}  // namespace pdg::nn

#endif  // PDG_NN_MODEL_IO_H_
