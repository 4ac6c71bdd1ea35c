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


#include "pdg/nn/train.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace pdg::nn {
namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

std::uint64_t Below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0)) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

void Shuffle(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Below(rng, i)]);
}

Matrix Rows(const Matrix& m, const std::vector<int>& idx, std::size_t begin, std::size_t end) {
  Matrix out(Eigen::Index(end - begin), m.cols());
  for (std::size_t i = begin; i < end; ++i) out.row(Eigen::Index(i - begin)) = m.row(idx[i]);
  return out;
}

class Adam {
 public:
  explicit Adam(const std::vector<Parameter>& params) {
    for (const Parameter& p : params) {
      m_.push_back(Matrix::Zero(p.value.rows(), p.value.cols()));
      v_.push_back(Matrix::Zero(p.value.rows(), p.value.cols()));
    }
  }

  void Step(std::vector<Parameter>& params, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, t_);
    const double c2 = 1.0 - std::pow(kBeta2, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * params[i].grad;
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * params[i].grad.cwiseAbs2();
      params[i].value.array() -=
          lr * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + kAdamEps);
    }
  }

 private:
  std::vector<Matrix> m_, v_;
  int t_ = 0;
};

}  // namespace

const char* ToString(Schedule schedule) {
  return schedule == Schedule::kConstant ? "constant" : "warmup";
}

Schedule ParseSchedule(const std::string& text) {
  if (text == "constant") return Schedule::kConstant;
  if (text == "warmup") return Schedule::kWarmup;
  throw std::invalid_argument("unknown schedule '" + text + "' (constant|warmup)");
}

void TrainConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("TrainConfig: ") + what);
  };
  require(batch_size >= 1, "batch_size must be >= 1");
  require(base_lr > 0.0 && std::isfinite(base_lr), "base_lr must be positive");
  require(warmup_steps >= 1, "warmup_steps must be >= 1");
  require(k_folds >= 2, "k_folds must be >= 2");
  require(epochs >= 1, "epochs must be >= 1");
}

double LearningRate(int step, const TrainConfig& config) {
  if (step < 1) throw std::invalid_argument("LearningRate: step counts from 1");
  if (config.schedule == Schedule::kConstant) return config.base_lr;
  const int w = config.warmup_steps;
  if (step <= w) return config.base_lr * double(step) / double(w);
  return std::min(config.base_lr, config.base_lr / std::sqrt(double(step - w)));
}

void WriteTrainLog(const std::vector<TrainLogRow>& log, std::ostream& out) {
  out << "step,fold,lr,train_mse,val_mse\n";
  char buf[160];
  for (const TrainLogRow& r : log) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.9g,%.9g,%.9g\n", r.step, r.fold, r.lr, r.train_mse,
                  r.val_mse);
    out << buf;
  }
}

double MeanSquaredError(const Matrix& prediction, const Matrix& truth) {
  if (prediction.rows() != truth.rows() || prediction.cols() != truth.cols()) {
    throw std::invalid_argument("MeanSquaredError: shape mismatch");
  }
  if (truth.size() == 0) return 0.0;
  return (prediction - truth).squaredNorm() / double(truth.size());
}

Matrix PredictBatched(const ModelBundle& model, const Matrix& theta, int batch) {
  Matrix out(theta.rows(), model.net.config().output_dim);
  for (Eigen::Index start = 0; start < theta.rows(); start += batch) {
    const Eigen::Index n = std::min<Eigen::Index>(batch, theta.rows() - start);
    out.middleRows(start, n) = model.Predict(theta.middleRows(start, n));
  }
  return out;
}

TrainOutcome Train(const Matrix& theta, const Matrix& targets, Target target,
                   const TransformerConfig& model_config, const TrainConfig& tc,
                   const TrainProgress& progress) {
  tc.Validate();
  model_config.Validate();
  if (theta.rows() == 0) throw std::invalid_argument("Train: empty dataset");
  if (theta.rows() != targets.rows() || targets.cols() != model_config.output_dim ||
      theta.cols() != model_config.input_dim) {
    throw std::invalid_argument("Train: shape mismatch between inputs, targets and config");
  }
  if (theta.rows() < tc.k_folds) throw std::invalid_argument("Train: fewer rows than folds");

  TrainOutcome result{ModelBundle(target, model_config, tc.seed), {}, {}, 0};
  ModelBundle& model = result.model;
  model.optimizer = "adam(beta1=0.9,beta2=0.999,eps=1e-8)";
  model.standardizer = Standardizer::Fit(theta);
  const Matrix x = model.standardizer.Apply(theta);

  Transformer& net = model.net;
  net.parameter("decoder.weight").value.setZero();
  net.parameter("decoder.bias").value.row(0) = targets.colwise().mean();

  std::seed_seq seq{std::uint32_t(tc.seed), std::uint32_t(tc.seed >> 32), 0x74726e21u};
  std::mt19937_64 rng(seq);
  std::vector<int> order(std::size_t(theta.rows()));
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, rng);
  std::vector<std::vector<int>> folds(tc.k_folds);
  for (std::size_t i = 0; i < order.size(); ++i) folds[i % tc.k_folds].push_back(order[i]);

  Adam adam(net.parameters());
  int step = 0;
  for (int fold = 0; fold < tc.k_folds; ++fold) {
    std::vector<int> train_rows;
    for (int f = 0; f < tc.k_folds; ++f) {
      if (f != fold) train_rows.insert(train_rows.end(), folds[f].begin(), folds[f].end());
    }
    const std::vector<int>& val_rows = folds[fold];
    const Matrix x_val = Rows(x, val_rows, 0, val_rows.size());
    const Matrix y_val = Rows(targets, val_rows, 0, val_rows.size());

    double epoch_mse = 0.0;
    double val_mse = 0.0;
    for (int epoch = 0; epoch < tc.epochs; ++epoch) {
      Shuffle(train_rows, rng);
      double sum = 0.0;
      std::size_t count = 0;
      double lr = 0.0;
      for (std::size_t b = 0; b < train_rows.size(); b += std::size_t(tc.batch_size)) {
        const std::size_t e = std::min(train_rows.size(), b + std::size_t(tc.batch_size));
        const Matrix xb = Rows(x, train_rows, b, e);
        const Matrix yb = Rows(targets, train_rows, b, e);
        ++step;
        lr = LearningRate(step, tc);
        net.ZeroGrad();
        const Matrix out = net.ForwardTrain(xb, rng);
        const Matrix diff = out - yb;
        const double loss = diff.squaredNorm() / double(diff.size());
        if (!std::isfinite(loss)) {
          throw TrainingDivergence(step, "training diverged (loss not finite) at step " +
                                             std::to_string(step));
        }
        net.Backward(diff * (2.0 / double(diff.size())));
        adam.Step(net.parameters(), lr);
        sum += loss * double(e - b);
        count += e - b;
      }
      epoch_mse = sum / double(std::max<std::size_t>(count, 1));
      Matrix pred(x_val.rows(), targets.cols());
      for (Eigen::Index s = 0; s < x_val.rows(); s += 256) {
        const Eigen::Index n = std::min<Eigen::Index>(256, x_val.rows() - s);
        pred.middleRows(s, n) = net.Forward(x_val.middleRows(s, n));
      }
      val_mse = MeanSquaredError(pred, y_val);
      result.log.push_back(TrainLogRow{step, fold, lr, epoch_mse, val_mse});
      if (progress) progress(fold, epoch, step, epoch_mse, val_mse);
    }
    result.folds.push_back(FoldMetrics{fold, epoch_mse, val_mse});
  }
  result.steps = step;
  return result;
}

Matrix ThetaMatrix(const Dataset& dataset, const std::vector<int>& rows) {
  Matrix m(Eigen::Index(rows.size()), ProblemParameters::kSize);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& t = dataset.samples.at(std::size_t(rows[i])).theta;
    for (int j = 0; j < ProblemParameters::kSize; ++j) m(Eigen::Index(i), j) = t[j];
  }
  return m;
}

Matrix TargetMatrix(const Dataset& dataset, Target target, const std::vector<int>& rows) {
  const int width = target == Target::kConstraints ? dataset.flags() : 1;
  Matrix m(Eigen::Index(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const DatasetSample& s = dataset.samples.at(std::size_t(rows[i]));
    if (target == Target::kConstraints) {
      for (int j = 0; j < width; ++j) m(Eigen::Index(i), j) = s.tau[j];
    } else {
      m(Eigen::Index(i), 0) = s.t_f;
    }
  }
  return m;
}

std::vector<int> AllRows(const Dataset& dataset) {
  std::vector<int> rows(dataset.samples.size());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace pdg::nn
