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


#ifndef PDG_NN_TRAIN_H_
#define PDG_NN_TRAIN_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdg/nn/model_io.h"
#include "pdg/sampler.h"

namespace pdg::nn {

enum class Schedule { kConstant, kWarmup };

const char* ToString(Schedule schedule);
Schedule ParseSchedule(const std::string& text);

struct TrainConfig {
  int batch_size = 128;
  double base_lr = 1e-3;
  Schedule schedule = Schedule::kConstant;
  int warmup_steps = 4000;
  int k_folds = 2;
  int epochs = 1;  // per fold
  std::uint64_t seed = 0;

  void Validate() const;
};

// Linear warm-up to base_lr, then base_lr (step - warmup)^(-1/2) capped at
// base_lr. Steps count from 1.
double LearningRate(int step, const TrainConfig& config);

class TrainingDivergence : public std::runtime_error {
 public:
  TrainingDivergence(int step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

struct TrainLogRow {
  int step;
  int fold;
  double lr;
  double train_mse;
  double val_mse;
};

void WriteTrainLog(const std::vector<TrainLogRow>& log, std::ostream& out);

struct FoldMetrics {
  int fold;
  double train_mse;
  double val_mse;
};

struct TrainOutcome {
  ModelBundle model;
  std::vector<FoldMetrics> folds;
  std::vector<TrainLogRow> log;
  int steps = 0;
};

// Optional per-epoch hook: (fold, epoch, step, train_mse, val_mse).
using TrainProgress = std::function<void(int, int, int, double, double)>;

// Trains on raw rows (theta: B x 9, targets: B x output_dim). The rows are
// the train+validation portion; the standardizer is fit on them alone. Folds
// are visited in turn with one model: each fold trains on the others and
// reports its own validation MSE. The decoder starts at weight zero and bias
// equal to the target mean.
TrainOutcome Train(const Matrix& theta, const Matrix& targets, Target target,
                   const TransformerConfig& model_config, const TrainConfig& train_config,
                   const TrainProgress& progress = {});

// Dataset views.
Matrix ThetaMatrix(const Dataset& dataset, const std::vector<int>& rows);
Matrix TargetMatrix(const Dataset& dataset, Target target, const std::vector<int>& rows);
std::vector<int> AllRows(const Dataset& dataset);

// Mean squared error over all entries.
double MeanSquaredError(const Matrix& prediction, const Matrix& truth);

// Batched ModelBundle::Predict.
Matrix PredictBatched(const ModelBundle& model, const Matrix& theta, int batch = 256);

}  // namespace pdg::nn

#endif  // PDG_NN_TRAIN_H_
