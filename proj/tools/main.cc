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


#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cli_common.h"
#include "pdg/bench_report.h"
#include "pdg/nn/inference.h"
#include "pdg/result_io.h"
#include "pdg/runtime.h"
#include "pdg/sampler.h"

namespace pdg::cli {
namespace {

// ---------------------------------------------------------------- sample

struct SampleOptions {
  Common common;
  ThetaFlags theta;
  LineSearchFlags line_search;
  std::string out;
  int count = 1000;
  std::string mode = "box";
  double radius_angle_deg = 10.0;
  double radius_position = 500.0;
  double radius_velocity = 100.0;
  bool wide_ranges = false;
  int workers = DefaultWorkers();
  double verify = 0.0;
};

int RunSample(const SampleOptions& o) {
  const MissionConfig mission = LoadMission(o.common);
  SamplingSpec spec;
  if (o.wide_ranges) {
    spec = WideRangeSpec(o.count, o.common.seed);
  } else {
    spec.theta0 = o.theta.ToParameters();
    spec.radius_angle = DegToRad(o.radius_angle_deg);
    spec.radius_position = o.radius_position;
    spec.radius_velocity = o.radius_velocity;
    spec.count = o.count;
    spec.seed = o.common.seed;
    spec.mode = ParseSamplingMode(o.mode);
  }
  GenerateOptions gen;
  gen.workers = o.workers;
  std::atomic<int> last_pct{-1};
  gen.progress = [&](int done, int total) {
    const int pct = 100 * done / std::max(total, 1);
    if (pct / 10 > last_pct.load() / 10) {
      last_pct = pct;
      std::fprintf(stderr, "sample: %d/%d\n", done, total);
    }
  };
  const Dataset ds = GenerateDataset(mission, spec, o.line_search.config, gen);
  WriteDataset(ds, std::filesystem::path(o.out));
  std::printf("stored %d of %d (yield %.4f, numerical failures %d) -> %s\n", ds.header.stored,
              ds.header.attempted, ds.header.yield, ds.header.numerical_failures, o.out.c_str());

  nlohmann::json m = Manifest("sample", o.common, mission);
  m["outputs"].push_back(o.out);
  m["sampling"] = {{"mode", ds.header.mode},
                   {"count", o.count},
                   {"radius_angle_deg", RadToDeg(ds.header.radius_angle)},
                   {"radius_position", ds.header.radius_position},
                   {"radius_velocity", ds.header.radius_velocity},
                   {"workers", o.workers}};
  m["result"] = {{"stored", ds.header.stored}, {"attempted", ds.header.attempted},
                 {"yield", ds.header.yield}};
  if (o.verify > 0.0 && !ds.samples.empty()) {
    const VerificationReport v = VerifySubsample(mission, ds, o.verify, o.common.seed);
    std::printf("re-verified %d samples: %d passed\n", v.checked, v.passed);
    m["verification"] = {{"checked", v.checked}, {"passed", v.passed},
                         {"failed_indices", v.failed_indices}};
    if (v.passed != v.checked) {
      WriteManifest(m, o.common, o.out);
      throw std::runtime_error("dataset re-verification failed");
    }
  }
  WriteManifest(m, o.common, o.out);
  if (ds.samples.empty()) {
    std::fprintf(stderr, "sample: no feasible parameter vectors were found\n");
    return kInfeasible;
  }
  return kOk;
}

// ----------------------------------------------------------------- train

struct TrainOptions {
  Common common;
  std::string dataset;
  std::string target;
  std::string out;
  std::string metrics;
  std::string log;
  double train_fraction = 0.8;
  // Zero (or negative dropout) keeps the per-target default.
  int d_model = 0;
  int heads = 0;
  int layers = 0;
  int d_ff = 0;
  double dropout = -1.0;
  std::string tokens = "per_scalar";
  int batch = 0;
  double lr = 0.0;
  std::string schedule;
  int warmup = 0;
  int folds = 2;
  int epochs = 1;
};

int RunTrain(const TrainOptions& o) {
  const MissionConfig mission = LoadMission(o.common);
  const Dataset ds = ReadDataset(std::filesystem::path(o.dataset), &mission);
  const nn::Target target = nn::ParseTarget(o.target);
  const bool constraints = target == nn::Target::kConstraints;

  nn::TransformerConfig mc;
  mc.d_model = constraints ? 384 : 64;
  mc.n_heads = constraints ? 2 : 1;
  mc.n_layers = constraints ? 4 : 2;
  mc.dropout = 0.1;
  if (o.d_model > 0) mc.d_model = o.d_model;
  if (o.heads > 0) mc.n_heads = o.heads;
  if (o.layers > 0) mc.n_layers = o.layers;
  if (o.d_ff > 0) mc.d_ff = o.d_ff;
  if (o.dropout >= 0.0) mc.dropout = o.dropout;
  mc.tokens = nn::ParseTokenMode(o.tokens);

  nn::TrainConfig tc;
  tc.batch_size = constraints ? 128 : 320;
  tc.base_lr = constraints ? 1e-3 : 1e-2;
  tc.schedule = constraints ? nn::Schedule::kConstant : nn::Schedule::kWarmup;
  if (o.batch > 0) tc.batch_size = o.batch;
  if (o.lr > 0.0) tc.base_lr = o.lr;
  if (!o.schedule.empty()) tc.schedule = nn::ParseSchedule(o.schedule);
  if (o.warmup > 0) tc.warmup_steps = o.warmup;
  tc.k_folds = o.folds;
  tc.epochs = o.epochs;
  tc.seed = o.common.seed;

  const Split split = TrainTestSplit(int(ds.samples.size()), o.train_fraction, o.common.seed);
  std::fprintf(stderr, "train: %s model, %zu train+val rows, %zu test rows\n", o.target.c_str(),
               split.train.size(), split.test.size());
  const nn::TrainOutcome result = nn::TrainOnDataset(
      ds, split.train, target, mc, tc, [](int fold, int epoch, int step, double tr, double va) {
        std::fprintf(stderr, "  fold %d epoch %d step %d train_mse %.6g val_mse %.6g\n", fold,
                     epoch, step, tr, va);
      });
  const nn::TestMetrics test = nn::EvaluateModel(result.model, ds, split.test);

  nn::SaveModel(result.model, std::filesystem::path(o.out));
  const std::string metrics = o.metrics.empty() ? o.out + ".metrics.csv" : o.metrics;
  const std::string log = o.log.empty() ? o.out + ".log.csv" : o.log;
  {
    std::ostringstream csv;
    csv << HashComment(mission);
    csv << "set,fold,n,mse,binary_accuracy,baseline_accuracy,label_variance\n";
    char buf[256];
    for (const nn::FoldMetrics& f : result.folds) {
      std::snprintf(buf, sizeof(buf), "validation,%d,,%.9g,,,\n", f.fold, f.val_mse);
      csv << buf;
    }
    std::snprintf(buf, sizeof(buf), "test,,%zu,%.9g,%.9g,%.9g,%.9g\n", split.test.size(),
                  test.mse, test.binary_accuracy, test.baseline_accuracy, test.label_variance);
    csv << buf;
    WriteText(metrics, csv.str());
    std::ostringstream lcsv;
    nn::WriteTrainLog(result.log, lcsv);
    WriteText(log, lcsv.str());
  }
  if (constraints) {
    std::printf("test: mse %.6g, binary accuracy %.4f (all-zeros baseline %.4f)\n", test.mse,
                test.binary_accuracy, test.baseline_accuracy);
  } else {
    std::printf("test: mse %.6g s^2 (label variance %.6g s^2)\n", test.mse, test.label_variance);
  }

  nlohmann::json m = Manifest("train", o.common, mission);
  m["inputs"] = {o.dataset};
  m["outputs"] = {o.out, metrics, log};
  m["target"] = o.target;
  m["model"] = {{"d_model", mc.d_model}, {"heads", mc.n_heads}, {"layers", mc.n_layers},
                {"dropout", mc.dropout}, {"tokens", nn::ToString(mc.tokens)},
                {"parameters", result.model.net.ParameterCount()}};
  m["training"] = {{"batch_size", tc.batch_size}, {"base_lr", tc.base_lr},
                   {"schedule", nn::ToString(tc.schedule)}, {"warmup_steps", tc.warmup_steps},
                   {"k_folds", tc.k_folds}, {"epochs", tc.epochs},
                   {"train_fraction", o.train_fraction}, {"steps", result.steps}};
  m["test"] = {{"rows", split.test.size()}, {"mse", test.mse},
               {"binary_accuracy", test.binary_accuracy},
               {"baseline_accuracy", test.baseline_accuracy},
               {"label_variance", test.label_variance}};
  WriteManifest(m, o.common, o.out);
  return kOk;
}

// ----------------------------------------------------------------- solve

struct SolveOptions {
  Common common;
  ThetaFlags theta;
  LineSearchFlags line_search;
  double t_f = 0.0;
  int workers = 1;
  std::string trajectory;
  std::string summary;
};

void EmitSolution(const SolveResult& r, const MissionConfig& mission, const std::string& csv_path,
                  const std::string& json_text, const std::string& json_path) {
  if (!csv_path.empty() && r.optimal()) {
    std::ostringstream csv;
    csv << HashComment(mission);
    WriteTrajectoryCsv(r, csv);
    WriteText(csv_path, csv.str());
  }
  if (json_path.empty()) {
    std::cout << json_text << "\n";
  } else {
    WriteText(json_path, json_text + "\n");
  }
}

int RunSolve(SolveOptions o) {
  const MissionConfig mission = LoadMission(o.common);
  const ProblemParameters theta = o.theta.ToParameters();
  o.line_search.config.workers = o.workers;
  const SolveResult r = o.t_f > 0.0 ? FixedTimeSolve(mission, theta, o.t_f)
                                    : FullSolve(mission, theta, o.line_search.config);
  nlohmann::json summary = nlohmann::json::parse(SolveSummaryJson(r, mission, theta));
  nlohmann::json m = Manifest("solve", o.common, mission);
  if (!o.trajectory.empty()) m["outputs"].push_back(o.trajectory);
  if (!o.summary.empty()) m["outputs"].push_back(o.summary);
  summary["manifest"] = m;
  EmitSolution(r, mission, o.trajectory, summary.dump(2), o.summary);
  if (!r.optimal()) {
    std::fprintf(stderr, "solve: %s (%s)\n", ToString(r.status), r.diagnostics.c_str());
    return r.status == SolveStatus::kInfeasible ? kInfeasible : kError;
  }
  return kOk;
}

// ------------------------------------------------------------------ tpdg

struct PredictorFlags {
  std::string constraints_model;
  std::string time_model;
  std::string feasibility = "residual";
  double threshold = 0.5;
  double margin = 1.0;

  void Add(CLI::App* cmd) {
    cmd->add_option("--constraints-model", constraints_model, "Trained tight-constraint model");
    cmd->add_option("--time-model", time_model, "Trained final-time model");
    cmd->add_option("--feasibility", feasibility, "Feasibility check: residual | resolve")
        ->capture_default_str();
    cmd->add_option("--threshold", threshold, "Flag threshold on model outputs")
        ->capture_default_str();
    cmd->add_option("--t-f-margin", margin, "Multiplier on the predicted final time")
        ->capture_default_str();
  }

  // Both models are mandatory; there is no silent fallback to the full solve.
  std::pair<nn::ModelBundle, nn::ModelBundle> Load(const std::string& command) const {
    if (constraints_model.empty() || time_model.empty()) {
      throw UsageError(command + " needs both --constraints-model and --time-model");
    }
    for (const std::string& p : {constraints_model, time_model}) {
      if (!std::filesystem::exists(p)) throw UsageError("model file not found: " + p);
    }
    return {nn::LoadModel(std::filesystem::path(constraints_model)),
            nn::LoadModel(std::filesystem::path(time_model))};
  }

  TpdgOptions Options(const LineSearchConfig& ls) const {
    TpdgOptions t;
    t.line_search = ls;
    t.feasibility = ParseFeasibilityMode(feasibility);
    t.predict.threshold = threshold;
    t.predict.t_f_margin = margin;
    return t;
  }
};

struct TpdgCmdOptions {
  Common common;
  ThetaFlags theta;
  LineSearchFlags line_search;
  PredictorFlags predictor;
  std::string trajectory;
  std::string summary;
};

int RunTpdgCmd(const TpdgCmdOptions& o) {
  const MissionConfig mission = LoadMission(o.common);
  const auto models = o.predictor.Load("tpdg");
  const nn::ModelBundle& constraints = models.first;
  const nn::ModelBundle& time = models.second;
  const ProblemParameters theta = o.theta.ToParameters();
  const TpdgOutcome out = RunTpdg(mission, theta, constraints, time,
                                  o.predictor.Options(o.line_search.config));
  nlohmann::json j = nlohmann::json::parse(OutcomeJson(out, mission, theta));
  nlohmann::json m = Manifest("tpdg", o.common, mission);
  m["inputs"] = {o.predictor.constraints_model, o.predictor.time_model};
  if (!o.trajectory.empty()) m["outputs"].push_back(o.trajectory);
  if (!o.summary.empty()) m["outputs"].push_back(o.summary);
  j["manifest"] = m;
  EmitSolution(out.solution, mission, o.trajectory, j.dump(2), o.summary);
  if (out.path == PathTaken::kFullInfeasible) {
    std::fprintf(stderr, "tpdg: no feasible trajectory (%s)\n", ToString(out.solution.status));
    return out.solution.status == SolveStatus::kInfeasible ? kInfeasible : kError;
  }
  return kOk;
}

// ----------------------------------------------------------------- bench

struct BenchOptions {
  Common common;
  LineSearchFlags line_search;
  PredictorFlags predictor;
  std::string dataset;
  std::string out;
  std::string cases;
  double train_fraction = 0.8;
  int count = 0;
  int workers = DefaultWorkers();
};

int RunBench(const BenchOptions& o) {
  const MissionConfig mission = LoadMission(o.common);
  const auto models = o.predictor.Load("bench");
  const nn::ModelBundle& constraints = models.first;
  const nn::ModelBundle& time = models.second;
  nn::CheckCompatible(constraints, nn::Target::kConstraints, mission);
  nn::CheckCompatible(time, nn::Target::kTime, mission);
  const Dataset ds = ReadDataset(std::filesystem::path(o.dataset), &mission);
  std::vector<int> rows =
      TrainTestSplit(int(ds.samples.size()), o.train_fraction, o.common.seed).test;
  if (o.count > 0 && int(rows.size()) > o.count) rows.resize(std::size_t(o.count));
  if (rows.empty()) throw UsageError("bench: the held-out set is empty");

  const TpdgOptions options = o.predictor.Options(o.line_search.config);
  nn::PredictOptions predict = options.predict;
  predict.t_lo = options.line_search.t_lo;
  std::vector<BenchCase> cases(rows.size());
  std::atomic<int> next{0}, done{0};
  auto work = [&] {
    for (int i = next++; i < int(rows.size()); i = next++) {
      const ProblemParameters theta =
          ProblemParameters::FromVector(ds.samples[std::size_t(rows[std::size_t(i)])].theta);
      nn::PredictOptions p = predict;
      p.t_hi = options.line_search.t_hi > 0.0 ? options.line_search.t_hi
                                              : FuelExhaustionTime(mission, theta);
      cases[std::size_t(i)] = RunBenchCase(
          mission, theta,
          [&](const ProblemParameters& q) {
            return nn::PredictStrategy(constraints, time, mission, q, p);
          },
          options);
      const int d = ++done;
      if (d % 10 == 0 || d == int(rows.size())) {
        std::fprintf(stderr, "bench: %d/%zu\n", d, rows.size());
      }
    }
  };
  const int workers = std::max(1, std::min(o.workers, int(rows.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  const BenchReport report = BuildBenchReport(cases);
  std::ostringstream csv;
  csv << HashComment(mission);
  report.WriteCsv(csv);
  WriteText(o.out, csv.str());
  if (!o.cases.empty()) {
    std::ostringstream c;
    c << HashComment(mission);
    c << "row,full_status,full_ms,full_cost,full_t_f,tpdg_path,tpdg_ms,tpdg_cost,tpdg_t_f,"
         "verified,reduced_gap\n";
    char buf[512];
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const BenchCase& b = cases[i];
      std::snprintf(buf, sizeof(buf), "%d,%s,%.6g,%.10g,%.6g,%s,%.6g,%.10g,%.6g,%d,%.6g\n",
                    rows[i], ToString(b.full.status), b.full.wall_time_ms, b.full.cost,
                    b.full.t_f, ToString(b.tpdg.path), b.tpdg.timings.total_ms,
                    b.tpdg.solution.cost, b.tpdg.solution.t_f, int(b.tpdg_verified),
                    b.reduced_gap);
      c << buf;
    }
    WriteText(o.cases, c.str());
  }
  std::cout << report.Summary();

  nlohmann::json m = Manifest("bench", o.common, mission);
  m["inputs"] = {o.dataset, o.predictor.constraints_model, o.predictor.time_model};
  m["outputs"] = {o.out};
  if (!o.cases.empty()) m["outputs"].push_back(o.cases);
  m["cases"] = report.cases;
  m["workers"] = workers;
  m["feasibility_mode"] = o.predictor.feasibility;
  m["speedup"] = report.speedup;
  WriteManifest(m, o.common, o.out);
  return kOk;
}

// ----------------------------------------------------- export-embeddings

struct ExportOptions {
  Common common;
  std::string model;
  std::string dataset;
  std::string out;
};

int RunExport(const ExportOptions& o) {
  const MissionConfig mission = LoadMission(o.common);
  if (!std::filesystem::exists(o.model)) throw UsageError("model file not found: " + o.model);
  const nn::ModelBundle model = nn::LoadModel(std::filesystem::path(o.model));
  nn::CheckCompatible(model, model.target, mission);
  const Dataset ds = ReadDataset(std::filesystem::path(o.dataset), &mission);
  std::ostringstream csv;
  csv << HashComment(mission);
  nn::ExportEmbeddings(model, ds, csv);
  WriteText(o.out, csv.str());
  nlohmann::json m = Manifest("export-embeddings", o.common, mission);
  m["inputs"] = {o.model, o.dataset};
  m["outputs"] = {o.out};
  m["rows"] = ds.samples.size();
  WriteManifest(m, o.common, o.out);
  return kOk;
}

}  // namespace
}  // namespace pdg::cli

int main(int argc, char** argv) {
  using namespace pdg::cli;
  RecordArguments(argc, argv);

  CLI::App app{"Parametric powered-descent guidance: datasets, training, solves and benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PDG_VERSION);

  SampleOptions sample;
  CLI::App* s = app.add_subcommand("sample", "Sample parameter vectors and label them");
  AddCommon(s, &sample.common);
  AddThetaFlags(s, &sample.theta);
  AddLineSearchFlags(s, &sample.line_search);
  s->add_option("--out", sample.out, "Dataset CSV")->required();
  s->add_option("--count", sample.count, "Parameter vectors to draw")->capture_default_str();
  s->add_option("--mode", sample.mode, "box | ball")->capture_default_str();
  s->add_option("--radius-angle-deg", sample.radius_angle_deg)->capture_default_str();
  s->add_option("--radius-position", sample.radius_position, "[m]")->capture_default_str();
  s->add_option("--radius-velocity", sample.radius_velocity, "[m/s]")->capture_default_str();
  s->add_flag("--wide-ranges", sample.wide_ranges,
              "Sample fixed wide per-axis ranges instead of using the radii");
  s->add_option("--workers", sample.workers)->capture_default_str();
  s->add_option("--verify", sample.verify, "Fraction of stored rows to re-solve and check")
      ->check(CLI::Range(0.0, 1.0));

  TrainOptions train;
  CLI::App* t = app.add_subcommand("train", "Train a tight-constraint or final-time model");
  AddCommon(t, &train.common);
  t->add_option("--dataset", train.dataset)->required()->check(CLI::ExistingFile);
  t->add_option("--target", train.target, "constraints | time")
      ->required()
      ->check(CLI::IsMember({"constraints", "time"}));
  t->add_option("--out", train.out, "Model file")->required();
  t->add_option("--metrics", train.metrics, "Metrics CSV (default: <out>.metrics.csv)");
  t->add_option("--log", train.log, "Training log CSV (default: <out>.log.csv)");
  t->add_option("--train-fraction", train.train_fraction)->capture_default_str();
  t->add_option("--d-model", train.d_model, "Default: 384 (constraints), 64 (time)");
  t->add_option("--heads", train.heads, "Default: 2 (constraints), 1 (time)");
  t->add_option("--layers", train.layers, "Default: 4 (constraints), 2 (time)");
  t->add_option("--d-ff", train.d_ff, "Feed-forward width (default: 4 d_model)");
  t->add_option("--dropout", train.dropout, "Default: 0.1");
  t->add_option("--tokens", train.tokens, "per_scalar | single")
      ->capture_default_str()
      ->check(CLI::IsMember({"per_scalar", "single"}));
  t->add_option("--batch", train.batch, "Default: 128 (constraints), 320 (time)");
  t->add_option("--lr", train.lr, "Default: 1e-3 (constraints), 1e-2 (time)");
  t->add_option("--schedule", train.schedule, "constant | warmup");
  t->add_option("--warmup", train.warmup, "Warm-up steps (default: 4000)");
  t->add_option("--folds", train.folds)->capture_default_str();
  t->add_option("--epochs", train.epochs, "Epochs per fold")->capture_default_str();

  SolveOptions solve;
  CLI::App* so = app.add_subcommand("solve", "Full free-final-time solve for one parameter vector");
  AddCommon(so, &solve.common);
  AddThetaFlags(so, &solve.theta);
  AddLineSearchFlags(so, &solve.line_search);
  so->add_option("--t-f", solve.t_f, "Solve at this fixed final time instead [s]");
  so->add_option("--workers", solve.workers, "Parallel grid evaluation")->capture_default_str();
  so->add_option("--trajectory", solve.trajectory, "Trajectory CSV");
  so->add_option("--summary", solve.summary, "Summary JSON (default: stdout)");

  TpdgCmdOptions tp;
  CLI::App* tc = app.add_subcommand("tpdg", "Predict, solve reduced, check, fall back if needed");
  AddCommon(tc, &tp.common);
  AddThetaFlags(tc, &tp.theta);
  AddLineSearchFlags(tc, &tp.line_search);
  tp.predictor.Add(tc);
  tc->add_option("--trajectory", tp.trajectory, "Trajectory CSV");
  tc->add_option("--summary", tp.summary, "Outcome JSON (default: stdout)");

  BenchOptions bench;
  CLI::App* b = app.add_subcommand("bench", "Paired full-solve vs. tpdg timing on held-out rows");
  AddCommon(b, &bench.common);
  AddLineSearchFlags(b, &bench.line_search);
  bench.predictor.Add(b);
  b->add_option("--dataset", bench.dataset)->required()->check(CLI::ExistingFile);
  b->add_option("--out", bench.out, "Report CSV")->required();
  b->add_option("--cases", bench.cases, "Per-case CSV");
  b->add_option("--train-fraction", bench.train_fraction, "Must match training")
      ->capture_default_str();
  b->add_option("--count", bench.count, "Use at most this many held-out rows (0 = all)");
  b->add_option("--workers", bench.workers)->capture_default_str();

  ExportOptions ex;
  CLI::App* e = app.add_subcommand("export-embeddings", "Pooled encoder output per dataset row");
  AddCommon(e, &ex.common);
  e->add_option("--model", ex.model)->required();
  e->add_option("--dataset", ex.dataset)->required()->check(CLI::ExistingFile);
  e->add_option("--out", ex.out, "Embeddings CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return RunSample(sample);
    if (*t) return RunTrain(train);
    if (*so) return RunSolve(solve);
    if (*tc) return RunTpdgCmd(tp);
    if (*b) return RunBench(bench);
    if (*e) return RunExport(ex);
  } catch (const UsageError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kError;
  }
  return kError;
}
