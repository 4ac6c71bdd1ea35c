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


#include "pdg/nn/inference.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace pdg::nn {

void CheckCompatible(const ModelBundle& model, Target target, const MissionConfig& mission) {
  if (model.target != target) {
    throw ModelMismatchError(std::string("model predicts ") + ToString(model.target) +
                             ", expected " + ToString(target));
  }
  if (model.layout_version != kLayoutVersion) {
    throw ModelMismatchError("model layout version '" + model.layout_version +
                             "' does not match '" + kLayoutVersion + "'");
  }
  if (model.nodes != mission.nodes) {
    throw ModelMismatchError("model was trained for " + std::to_string(model.nodes) +
                             " nodes, mission has " + std::to_string(mission.nodes));
  }
  if (model.mission_hash != mission.Hash()) {
    throw ModelMismatchError("model mission hash " + model.mission_hash +
                             " does not match mission " + mission.Hash());
  }
  const int expected = target == Target::kConstraints ? 8 * mission.nodes - 3 : 1;
  if (model.net.config().output_dim != expected) {
    throw ModelMismatchError("model output width " +
                             std::to_string(model.net.config().output_dim) + ", expected " +
                             std::to_string(expected));
  }
}

std::vector<std::uint8_t> Binarize(const RowVector& raw, double threshold) {
  std::vector<std::uint8_t> bits(std::size_t(raw.size()));
  for (Eigen::Index i = 0; i < raw.size(); ++i) bits[std::size_t(i)] = raw(i) >= threshold;
  return bits;
}

double BinaryAccuracy(const std::vector<std::uint8_t>& predicted,
                      const std::vector<std::uint8_t>& truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("BinaryAccuracy: length mismatch");
  }
  if (truth.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) same += (predicted[i] != 0) == (truth[i] != 0);
  return double(same) / double(truth.size());
}

double ClampFinalTime(double raw, const PredictOptions& options) {
  const double t = raw * options.t_f_margin;
  if (!std::isfinite(t)) return options.t_lo;
  return std::clamp(t, options.t_lo, std::max(options.t_lo, options.t_hi));
}

Strategy PredictStrategy(const ModelBundle& constraints, const ModelBundle& time,
                         const MissionConfig& mission, const ProblemParameters& theta,
                         const PredictOptions& options) {
  CheckCompatible(constraints, Target::kConstraints, mission);
  CheckCompatible(time, Target::kTime, mission);
  Matrix row(1, ProblemParameters::kSize);
  const auto v = theta.ToVector();
  for (int j = 0; j < ProblemParameters::kSize; ++j) row(0, j) = v[j];
  Strategy s;
  s.tau = Binarize(constraints.Predict(row).row(0), options.threshold);
  s.t_f_star = ClampFinalTime(time.Predict(row)(0, 0), options);
  return s;
}

TrainOutcome TrainOnDataset(const Dataset& dataset, const std::vector<int>& rows, Target target,
                            const TransformerConfig& model_config,
                            const TrainConfig& train_config, const TrainProgress& progress) {
  TransformerConfig cfg = model_config;
  cfg.input_dim = ProblemParameters::kSize;
  cfg.output_dim = target == Target::kConstraints ? dataset.flags() : 1;
  TrainOutcome out = Train(ThetaMatrix(dataset, rows), TargetMatrix(dataset, target, rows), target,
                           cfg, train_config, progress);
  out.model.layout_version = dataset.header.layout_version;
  out.model.mission_hash = dataset.header.mission_hash;
  out.model.nodes = dataset.header.nodes;
  return out;
}

TestMetrics EvaluateModel(const ModelBundle& model, const Dataset& dataset,
                          const std::vector<int>& rows, double threshold) {
  TestMetrics m;
  if (rows.empty()) return m;
  const Matrix truth = TargetMatrix(dataset, model.target, rows);
  const Matrix pred = PredictBatched(model, ThetaMatrix(dataset, rows));
  m.mse = MeanSquaredError(pred, truth);
  if (model.target == Target::kConstraints) {
    std::size_t same = 0, zeros = 0;
    for (Eigen::Index i = 0; i < truth.rows(); ++i) {
      for (Eigen::Index j = 0; j < truth.cols(); ++j) {
        const bool bit = pred(i, j) >= threshold;
        same += bit == (truth(i, j) != 0.0);
        zeros += truth(i, j) == 0.0;
      }
    }
    m.binary_accuracy = double(same) / double(truth.size());
    m.baseline_accuracy = double(zeros) / double(truth.size());
  } else {
    const double mean = truth.mean();
    m.label_variance = (truth.array() - mean).square().mean();
  }
  return m;
}

void ExportEmbeddings(const ModelBundle& model, const Dataset& dataset, std::ostream& out) {
  const int d = model.net.config().d_model;
  out << "id";
  for (int j = 0; j < d; ++j) out << ",e_" << j;
  out << ",label\n";
  const std::vector<int> rows = AllRows(dataset);
  const Matrix theta = ThetaMatrix(dataset, rows);
  char buf[32];
  for (Eigen::Index start = 0; start < theta.rows(); start += 256) {
    const Eigen::Index n = std::min<Eigen::Index>(256, theta.rows() - start);
    const Matrix emb = model.Embed(theta.middleRows(start, n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const DatasetSample& s = dataset.samples[std::size_t(start + i)];
      out << start + i;
      for (int j = 0; j < d; ++j) {
        std::snprintf(buf, sizeof(buf), "%.9g", emb(i, j));
        out << ',' << buf;
      }
      long label;
      if (model.target == Target::kConstraints) {
        label = std::count_if(s.tau.begin(), s.tau.end(), [](std::uint8_t b) { return b != 0; });
      } else {
        label = std::lround(s.t_f);
      }
      out << ',' << label << '\n';
    }
  }
}

}  // namespace pdg::nn
