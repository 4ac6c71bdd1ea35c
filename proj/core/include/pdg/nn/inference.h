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


#ifndef PDG_NN_INFERENCE_H_
#define PDG_NN_INFERENCE_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pdg/lcvx.h"
#include "pdg/nn/model_io.h"
#include "pdg/nn/train.h"
#include "pdg/sampler.h"

namespace pdg::nn {

class ModelMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ModelMismatchError unless the model was trained for this target,
// layout version, node count and mission hash.
void CheckCompatible(const ModelBundle& model, Target target, const MissionConfig& mission);

// Flag = 1 where the raw output is >= threshold.
std::vector<std::uint8_t> Binarize(const RowVector& raw, double threshold);

// Fraction of positions where the two bit vectors agree.
double BinaryAccuracy(const std::vector<std::uint8_t>& predicted,
                      const std::vector<std::uint8_t>& truth);

struct PredictOptions {
  double threshold = 0.5;
  double t_lo = 5.0;
  double t_hi = std::numeric_limits<double>::infinity();
  double t_f_margin = 1.0;  // multiplies the predicted final time before clamping
};

// Maps a raw time prediction to [t_lo, t_hi] after applying the margin.
double ClampFinalTime(double raw, const PredictOptions& options);

Strategy PredictStrategy(const ModelBundle& constraints, const ModelBundle& time,
                         const MissionConfig& mission, const ProblemParameters& theta,
                         const PredictOptions& options = {});

// Trains on the given dataset rows and stamps the result with the dataset's
// layout version, node count and mission hash.
TrainOutcome TrainOnDataset(const Dataset& dataset, const std::vector<int>& rows, Target target,
                            const TransformerConfig& model_config,
                            const TrainConfig& train_config, const TrainProgress& progress = {});

struct TestMetrics {
  double mse = 0.0;
  double binary_accuracy = 0.0;     // constraints only
  double baseline_accuracy = 0.0;   // all-zeros prediction, constraints only
  double label_variance = 0.0;      // time only
};
TestMetrics EvaluateModel(const ModelBundle& model, const Dataset& dataset,
                          const std::vector<int>& rows, double threshold = 0.5);

// CSV: id, e_0..e_{d-1}, label. The label is the number of set flags for a
// constraint model and the rounded final time for a time model.
void ExportEmbeddings(const ModelBundle& model, const Dataset& dataset, std::ostream& out);

}  // namespace pdg::nn

#endif  // PDG_NN_INFERENCE_H_
