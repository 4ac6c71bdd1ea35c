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


#ifndef PDG_SAMPLER_H_
#define PDG_SAMPLER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdg/mission.h"
#include "pdg/solver.h"

namespace pdg {

enum class SamplingMode { kBox, kBall };

const char* ToString(SamplingMode mode);
SamplingMode ParseSamplingMode(const std::string& text);

struct AxisRange {
  double lo;
  double hi;
};

struct SamplingSpec {
  ProblemParameters theta0 = ReferenceTheta();
  double radius_angle = DegToRad(10.0);  // rad
  double radius_position = 500.0;        // m
  double radius_velocity = 100.0;        // m/s
  int count = 1000;
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::kBox;
  // Explicit per-coordinate intervals (canonical order) replacing the radii.
  std::optional<std::array<AxisRange, ProblemParameters::kSize>> ranges;

  void Validate() const;
};

// Interval sampling over fixed wide per-axis ranges. The vertical-velocity
// range is asymmetric about the seed.
SamplingSpec WideRangeSpec(int count, std::uint64_t seed);

// Generator for sample `index`, independent of every other index.
std::mt19937_64 SampleStream(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0, 1) from the top 53 bits of one draw.
double UniformUnit(std::mt19937_64& rng);

ProblemParameters SampleTheta(const SamplingSpec& spec, std::mt19937_64& rng);
ProblemParameters SampleTheta(const SamplingSpec& spec, std::uint64_t index);

// Bounds a sampled coordinate can take after clipping, per canonical index.
AxisRange SampleBounds(const SamplingSpec& spec, int coordinate);

struct DatasetSample {
  ProblemParameters::Vector theta{};
  std::vector<std::uint8_t> tau;
  double t_f = 0.0;
};

struct DatasetHeader {
  std::string layout_version = kLayoutVersion;
  int nodes = 0;
  std::string mission_hash;
  std::string mode = "box";
  double radius_angle = 0.0;
  double radius_position = 0.0;
  double radius_velocity = 0.0;
  std::uint64_t seed = 0;
  int attempted = 0;
  int stored = 0;
  int numerical_failures = 0;
  double yield = 0.0;
};

struct Dataset {
  DatasetHeader header;
  std::vector<DatasetSample> samples;

  int flags() const { return 8 * header.nodes - 3; }
};

class DatasetVersionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerateOptions {
  int workers = 1;
  // Called after each labeled sample with (done, total); from worker threads.
  std::function<void(int, int)> progress;
};

Dataset GenerateDataset(const MissionConfig& mission, const SamplingSpec& spec,
                        const LineSearchConfig& ls, const GenerateOptions& options = {});

void WriteDataset(const Dataset& dataset, std::ostream& out);
void WriteDataset(const Dataset& dataset, const std::filesystem::path& path);

// When `expected` is given, the header must match its layout, node count and
// hash; otherwise DatasetVersionError.
Dataset ReadDataset(std::istream& in, const MissionConfig* expected = nullptr);
Dataset ReadDataset(const std::filesystem::path& path, const MissionConfig* expected = nullptr);

// Deterministic train/test partition: shuffled indices, first part for training.
struct Split {
  std::vector<int> train;
  std::vector<int> test;
};
Split TrainTestSplit(int size, double train_fraction, std::uint64_t seed);

// Re-solves a random subset of stored samples at their stored strategy and
// checks the result against the full problem at the stored t_f.
struct VerificationReport {
  int checked = 0;
  int passed = 0;
  std::vector<int> failed_indices;
};
VerificationReport VerifySubsample(const MissionConfig& mission, const Dataset& dataset,
                                   double fraction, std::uint64_t seed);

}  // namespace pdg

#endif  // PDG_SAMPLER_H_
