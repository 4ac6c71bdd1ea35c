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
#include <sstream>

#include "pdg/nn/model_io.h"

namespace pdg::nn {
namespace {

ModelBundle Sample() {
  TransformerConfig c;
  c.d_model = 16;
  c.n_heads = 2;
  c.n_layers = 2;
  c.output_dim = 13;
  ModelBundle m(Target::kConstraints, c, 42);
  m.layout_version = "lcvx-layout-v1";
  m.mission_hash = "0123456789abcdef";
  m.nodes = 2;
  m.optimizer = "adam";
  m.standardizer.mean = RowVector::LinSpaced(9, -3.0, 5.0);
  m.standardizer.std = RowVector::LinSpaced(9, 0.5, 2.0);
  return m;
}

Matrix Inputs() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix x(5, 9);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 9; ++j) x(i, j) = n(rng);
  return x;
}

TEST(ModelIo, RoundTripIsBitwiseStable) {
  const ModelBundle m = Sample();
  std::stringstream buf;
  SaveModel(m, buf);
  const std::string bytes = buf.str();
  const ModelBundle back = LoadModel(buf);
  EXPECT_EQ(back.Predict(Inputs()), m.Predict(Inputs()));
  EXPECT_EQ(back.target, m.target);
  EXPECT_EQ(back.layout_version, m.layout_version);
  EXPECT_EQ(back.mission_hash, m.mission_hash);
  EXPECT_EQ(back.nodes, 2);
  EXPECT_EQ(back.optimizer, "adam");
  EXPECT_EQ(back.net.ParameterCount(), m.net.ParameterCount());
  EXPECT_EQ(back.standardizer.std, m.standardizer.std);
  std::stringstream again;
  SaveModel(back, again);
  EXPECT_EQ(again.str(), bytes);
}

TEST(ModelIo, MagicAndHeader) {
  std::stringstream buf;
  SaveModel(Sample(), buf);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 8), "PDGMODEL");
  EXPECT_NE(bytes.find("\"format_version\""), std::string::npos);
  EXPECT_NE(bytes.find("\"parameter_count\""), std::string::npos);
}

TEST(ModelIo, BadMagicRejected) {
  std::stringstream buf;
  SaveModel(Sample(), buf);
  std::string bytes = buf.str();
  bytes[0] = 'X';
  std::stringstream bad(bytes);
  EXPECT_THROW(LoadModel(bad), ModelFormatError);
}

TEST(ModelIo, TruncationRejected) {
  std::stringstream buf;
  SaveModel(Sample(), buf);
  const std::string bytes = buf.str();
  std::stringstream cut(bytes.substr(0, bytes.size() - 100));
  EXPECT_THROW(LoadModel(cut), ModelFormatError);
}

TEST(ModelIo, UnknownVersionRejected) {
  std::stringstream buf;
  SaveModel(Sample(), buf);
  std::string bytes = buf.str();
  const std::string key = "\"format_version\":1";
  const auto pos = bytes.find(key);
  ASSERT_NE(pos, std::string::npos);
  bytes.replace(pos, key.size(), "\"format_version\":9");
  std::stringstream bad(bytes);
  EXPECT_THROW(LoadModel(bad), ModelFormatError);
}

TEST(ModelIo, TargetParsing) {
  EXPECT_EQ(ParseTarget("time"), Target::kTime);
  EXPECT_THROW(ParseTarget("fuel"), std::invalid_argument);
}

}  // namespace
}  // namespace pdg::nn
