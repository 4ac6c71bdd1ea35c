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


#include "pdg/sampler.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace pdg {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
// Open-interval margins for the angle domains and the altitude floor.
constexpr double kAngleMargin = 1e-6;
constexpr double kMinAltitude = 1.0;

AxisRange Domain(int coordinate) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (coordinate) {
    case 0: return {0.0, kHalfPi - kAngleMargin};
    case 1: return {kAngleMargin, kHalfPi};
    case 2: return {kAngleMargin, kHalfPi - kAngleMargin};
    case 5: return {kMinAltitude, inf};
    default: return {-inf, inf};
  }
}

double Radius(const SamplingSpec& spec, int coordinate) {
  if (coordinate < 3) return spec.radius_angle;
  if (coordinate < 6) return spec.radius_position;
  return spec.radius_velocity;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ParseDouble(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::runtime_error("dataset: cannot parse " + what + " value '" + text + "'");
  }
  return v;
}

std::uint64_t UniformIndex(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection to avoid modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[UniformIndex(rng, i)]);
  }
}

}  // namespace

const char* ToString(SamplingMode mode) {
  return mode == SamplingMode::kBox ? "box" : "ball";
}

SamplingMode ParseSamplingMode(const std::string& text) {
  if (text == "box") return SamplingMode::kBox;
  if (text == "ball") return SamplingMode::kBall;
  throw DomainError("mode", "expected 'box' or 'ball', got '" + text + "'");
}

void SamplingSpec::Validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw DomainError(field, what);
  };
  require(std::isfinite(radius_angle) && radius_angle >= 0.0, "radius_angle", "must be >= 0");
  require(std::isfinite(radius_position) && radius_position >= 0.0, "radius_position",
          "must be >= 0");
  require(std::isfinite(radius_velocity) && radius_velocity >= 0.0, "radius_velocity",
          "must be >= 0");
  require(count >= 1, "count", "must be >= 1");
  if (ranges) {
    for (const AxisRange& r : *ranges) {
      require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi, "ranges",
              "each range needs finite lo <= hi");
    }
  }
}

SamplingSpec WideRangeSpec(int count, std::uint64_t seed) {
  SamplingSpec spec;
  spec.count = count;
  spec.seed = seed;
  spec.ranges = std::array<AxisRange, ProblemParameters::kSize>{{
      {DegToRad(0.0), DegToRad(20.0)},
      {DegToRad(70.0), DegToRad(90.0)},
      {DegToRad(50.0), DegToRad(70.0)},
      {1500.0, 2500.0},
      {1500.0, 2500.0},
      {500.0, 1500.0},
      {-115.0, 85.0},
      {-115.0, 85.0},
      {-101.7, 70.0},
  }};
  return spec;
}

std::mt19937_64 SampleStream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                    std::uint32_t(index >> 32), 0x70646775u};
  return std::mt19937_64(seq);
}

double UniformUnit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

AxisRange SampleBounds(const SamplingSpec& spec, int coordinate) {
  const AxisRange domain = Domain(coordinate);
  AxisRange r;
  if (spec.ranges) {
    r = (*spec.ranges)[coordinate];
  } else {
    const double centre = spec.theta0.ToVector()[coordinate];
    const double radius = Radius(spec, coordinate);
    r = {centre - radius, centre + radius};
  }
  return {std::clamp(r.lo, domain.lo, domain.hi), std::clamp(r.hi, domain.lo, domain.hi)};
}

ProblemParameters SampleTheta(const SamplingSpec& spec, std::mt19937_64& rng) {
  ProblemParameters::Vector v{};
  const ProblemParameters::Vector centre = spec.theta0.ToVector();

  if (spec.mode == SamplingMode::kBox || spec.ranges) {
    for (int i = 0; i < ProblemParameters::kSize; ++i) {
      AxisRange r;
      if (spec.ranges) {
        r = (*spec.ranges)[i];
      } else {
        r = {centre[i] - Radius(spec, i), centre[i] + Radius(spec, i)};
      }
      v[i] = r.lo + (r.hi - r.lo) * UniformUnit(rng);
    }
  } else {
    // Each group of three is drawn uniformly from its ball by rejection.
    for (int g = 0; g < 3; ++g) {
      const double radius = Radius(spec, 3 * g);
      double p[3];
      double norm2;
      do {
        norm2 = 0.0;
        for (double& x : p) {
          x = 2.0 * UniformUnit(rng) - 1.0;
          norm2 += x * x;
        }
      } while (norm2 > 1.0);
      for (int j = 0; j < 3; ++j) v[3 * g + j] = centre[3 * g + j] + radius * p[j];
    }
  }

  for (int i = 0; i < ProblemParameters::kSize; ++i) {
    const AxisRange d = Domain(i);
    v[i] = std::clamp(v[i], d.lo, d.hi);
  }
  return ProblemParameters::FromVector(v);
}

ProblemParameters SampleTheta(const SamplingSpec& spec, std::uint64_t index) {
  std::mt19937_64 rng = SampleStream(spec.seed, index);
  return SampleTheta(spec, rng);
}

Dataset GenerateDataset(const MissionConfig& mission, const SamplingSpec& spec,
                        const LineSearchConfig& ls, const GenerateOptions& options) {
  mission.Validate();
  spec.Validate();
  ls.Validate();

  struct Label {
    bool stored = false;
    bool numerical_failure = false;
    DatasetSample sample;
  };
  std::vector<Label> labels(spec.count);
  LineSearchConfig inner = ls;
  inner.workers = 1;

  std::atomic<int> next{0};
  std::atomic<int> done{0};
  auto work = [&] {
    for (int i = next++; i < spec.count; i = next++) {
      const ProblemParameters theta = SampleTheta(spec, std::uint64_t(i));
      const SolveResult full = FullSolve(mission, theta, inner);
      Label& label = labels[i];
      if (full.optimal()) {
        const Strategy s = OracleStrategy(mission, theta, full);
        label.stored = true;
        label.sample = DatasetSample{theta.ToVector(), s.tau, s.t_f_star};
      } else if (full.status == SolveStatus::kNumericalFailure) {
        label.numerical_failure = true;
      }
      const int finished = ++done;
      if (options.progress) options.progress(finished, spec.count);
    }
  };
  const int workers = std::max(1, std::min(options.workers, spec.count));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  Dataset ds;
  ds.header.nodes = mission.nodes;
  ds.header.mission_hash = mission.Hash();
  ds.header.mode = spec.ranges ? "ranges" : ToString(spec.mode);
  ds.header.radius_angle = spec.radius_angle;
  ds.header.radius_position = spec.radius_position;
  ds.header.radius_velocity = spec.radius_velocity;
  ds.header.seed = spec.seed;
  ds.header.attempted = spec.count;
  for (Label& label : labels) {
    if (label.stored) ds.samples.push_back(std::move(label.sample));
    if (label.numerical_failure) ++ds.header.numerical_failures;
  }
  ds.header.stored = int(ds.samples.size());
  ds.header.yield = double(ds.header.stored) / double(ds.header.attempted);
  if (ds.samples.empty()) {
    std::cerr << "warning: no feasible samples out of " << spec.count << " attempted\n";
  }
  return ds;
}

void WriteDataset(const Dataset& ds, std::ostream& out) {
  const DatasetHeader& h = ds.header;
  out << "# layout_version=" << h.layout_version << '\n'
      << "# nodes=" << h.nodes << '\n'
      << "# mission_hash=" << h.mission_hash << '\n'
      << "# mode=" << h.mode << '\n'
      << "# radius_angle=" << FormatDouble(h.radius_angle) << '\n'
      << "# radius_position=" << FormatDouble(h.radius_position) << '\n'
      << "# radius_velocity=" << FormatDouble(h.radius_velocity) << '\n'
      << "# seed=" << h.seed << '\n'
      << "# attempted=" << h.attempted << '\n'
      << "# stored=" << h.stored << '\n'
      << "# numerical_failures=" << h.numerical_failures << '\n'
      << "# yield=" << FormatDouble(h.yield) << '\n';
  for (const char* name : ProblemParameters::Names()) out << name << ',';
  const int flags = ds.flags();
  for (int f = 0; f < flags; ++f) out << "tau_" << f << ',';
  out << "t_f\n";
  for (const DatasetSample& s : ds.samples) {
    if (int(s.tau.size()) != flags) {
      throw std::invalid_argument("WriteDataset: sample has wrong flag count");
    }
    for (double v : s.theta) out << FormatDouble(v) << ',';
    for (std::uint8_t b : s.tau) out << (b ? '1' : '0') << ',';
    out << FormatDouble(s.t_f) << '\n';
  }
}

void WriteDataset(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  WriteDataset(ds, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Dataset ReadDataset(std::istream& in, const MissionConfig* expected) {
  Dataset ds;
  DatasetHeader& h = ds.header;
  std::string line;
  bool have_columns = false;
  bool have_layout = false;
  while (!have_columns && std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "layout_version") {
        h.layout_version = value;
        have_layout = true;
      } else if (key == "nodes") {
        h.nodes = int(ParseDouble(value, key));
      } else if (key == "mission_hash") {
        h.mission_hash = value;
      } else if (key == "mode") {
        h.mode = value;
      } else if (key == "radius_angle") {
        h.radius_angle = ParseDouble(value, key);
      } else if (key == "radius_position") {
        h.radius_position = ParseDouble(value, key);
      } else if (key == "radius_velocity") {
        h.radius_velocity = ParseDouble(value, key);
      } else if (key == "seed") {
        h.seed = std::stoull(value);
      } else if (key == "attempted") {
        h.attempted = int(ParseDouble(value, key));
      } else if (key == "stored") {
        h.stored = int(ParseDouble(value, key));
      } else if (key == "numerical_failures") {
        h.numerical_failures = int(ParseDouble(value, key));
      } else if (key == "yield") {
        h.yield = ParseDouble(value, key);
      }
    } else {
      have_columns = true;
    }
  }
  if (!have_layout || !have_columns) throw DatasetVersionError("dataset: missing header");
  if (h.layout_version != kLayoutVersion) {
    throw DatasetVersionError("dataset: layout version '" + h.layout_version +
                              "' does not match '" + kLayoutVersion + "'");
  }
  if (h.nodes < 2) throw DatasetVersionError("dataset: invalid node count");
  if (expected) {
    if (h.nodes != expected->nodes) {
      throw DatasetVersionError("dataset: node count " + std::to_string(h.nodes) +
                                " does not match configuration (" +
                                std::to_string(expected->nodes) + ")");
    }
    if (h.mission_hash != expected->Hash()) {
      throw DatasetVersionError("dataset: mission hash " + h.mission_hash +
                                " does not match configuration (" + expected->Hash() + ")");
    }
  }

  const int flags = ds.flags();
  const std::size_t width = ProblemParameters::kSize + flags + 1;
  {
    std::size_t columns = std::count(line.begin(), line.end(), ',') + 1;
    if (columns != width) {
      throw DatasetVersionError("dataset: expected " + std::to_string(width) + " columns, found " +
                                std::to_string(columns));
    }
  }
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    DatasetSample s;
    s.tau.resize(flags);
    std::size_t start = 0;
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t end = c + 1 < width ? line.find(',', start) : line.size();
      if (end == std::string::npos) {
        throw std::runtime_error("dataset: row " + std::to_string(row) + " is too short");
      }
      const std::string cell = line.substr(start, end - start);
      if (c < std::size_t(ProblemParameters::kSize)) {
        s.theta[c] = ParseDouble(cell, "theta");
      } else if (c < width - 1) {
        if (cell != "0" && cell != "1") {
          throw std::runtime_error("dataset: row " + std::to_string(row) + " has a non-binary flag");
        }
        s.tau[c - ProblemParameters::kSize] = cell == "1";
      } else {
        s.t_f = ParseDouble(cell, "t_f");
        if (end != line.size()) {
          throw std::runtime_error("dataset: row " + std::to_string(row) + " is too long");
        }
      }
      start = end + 1;
    }
    ds.samples.push_back(std::move(s));
  }
  if (int(ds.samples.size()) != h.stored) {
    throw std::runtime_error("dataset: header says " + std::to_string(h.stored) +
                             " samples, file has " + std::to_string(ds.samples.size()));
  }
  return ds;
}

Dataset ReadDataset(const std::filesystem::path& path, const MissionConfig* expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ReadDataset(in, expected);
}

Split TrainTestSplit(int size, double train_fraction, std::uint64_t seed) {
  if (size < 0 || !(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("TrainTestSplit: need size >= 0 and fraction in (0, 1)");
  }
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  std::mt19937_64 rng = SampleStream(seed, 0x5b117ull);
  Shuffle(idx, rng);
  const int n_train = int(std::lround(train_fraction * size));
  Split split;
  split.train.assign(idx.begin(), idx.begin() + n_train);
  split.test.assign(idx.begin() + n_train, idx.end());
  return split;
}

VerificationReport VerifySubsample(const MissionConfig& mission, const Dataset& dataset,
                                   double fraction, std::uint64_t seed) {
  VerificationReport report;
  const int n = int(dataset.samples.size());
  if (n == 0) return report;
  const int k = std::clamp(int(std::ceil(fraction * n)), 1, n);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng = SampleStream(seed, 0x7e71f1ull);
  Shuffle(idx, rng);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());

  for (int i : idx) {
    const DatasetSample& s = dataset.samples[i];
    const ProblemParameters theta = ProblemParameters::FromVector(s.theta);
    const SolveResult r = ReducedSolve(mission, theta, Strategy{s.tau, s.t_f});
    bool ok = false;
    if (r.optimal()) {
      ok = CheckFeasibility(BuildSocp(mission, theta, s.t_f), r).feasible;
    }
    ++report.checked;
    if (ok) {
      ++report.passed;
    } else {
      report.failed_indices.push_back(i);
    }
  }
  return report;
}

}  // namespace pdg
