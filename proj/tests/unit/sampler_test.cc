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

#include <algorithm>
#include <set>
#include <sstream>

#include "pdg/sampler.h"
#include "test_support.h"

namespace pdg {
namespace {

using testing_support::DefaultMission;

TEST(SampleTheta, ZeroRadiiReturnsSeed) {
  SamplingSpec spec;
  spec.radius_angle = spec.radius_position = spec.radius_velocity = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    EXPECT_EQ(SampleTheta(spec, i).ToVector(), ReferenceTheta().ToVector());
  }
}

TEST(SampleTheta, BoxStaysInsideTableRanges) {
  SamplingSpec spec;
  spec.seed = 5;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const auto v = SampleTheta(spec, i).ToVector();
    EXPECT_GE(v[0], 0.0);
    EXPECT_LE(v[0], DegToRad(20.0) + 1e-15);
    for (int j : {3, 4}) {
      EXPECT_GE(v[j], 1500.0);
      EXPECT_LE(v[j], 2500.0);
    }
    for (int j = 0; j < ProblemParameters::kSize; ++j) {
      const AxisRange b = SampleBounds(spec, j);
      EXPECT_GE(v[j], b.lo);
      EXPECT_LE(v[j], b.hi);
    }
  }
}

TEST(SampleTheta, BoxCoversItsRange) {
  SamplingSpec spec;
  double lo = INFINITY, hi = -INFINITY;
  for (std::uint64_t i = 0; i < 5000; ++i) {
    const double x = SampleTheta(spec, i).r0().x();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  EXPECT_LT(lo, 1510.0);
  EXPECT_GT(hi, 2490.0);
}

TEST(SampleTheta, WideRangePresetRanges) {
  const SamplingSpec spec = WideRangeSpec(10, 1);
  const AxisRange vz = SampleBounds(spec, 8);
  EXPECT_DOUBLE_EQ(vz.lo, -101.7);
  EXPECT_DOUBLE_EQ(vz.hi, 70.0);
  EXPECT_DOUBLE_EQ(SampleBounds(spec, 5).lo, 500.0);
  EXPECT_NEAR(RadToDeg(SampleBounds(spec, 1).hi), 90.0, 1e-9);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto v = SampleTheta(spec, i).ToVector();
    for (int j = 0; j < ProblemParameters::kSize; ++j) {
      EXPECT_GE(v[j], SampleBounds(spec, j).lo);
      EXPECT_LE(v[j], SampleBounds(spec, j).hi);
    }
  }
}

TEST(SampleTheta, BallModeStaysInsideBalls) {
  SamplingSpec spec;
  spec.mode = SamplingMode::kBall;
  const auto c = spec.theta0.ToVector();
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const auto v = SampleTheta(spec, i).ToVector();
    const Vec3 dr = Vec3(v[3], v[4], v[5]) - Vec3(c[3], c[4], c[5]);
    const Vec3 dv = Vec3(v[6], v[7], v[8]) - Vec3(c[6], c[7], c[8]);
    EXPECT_LE(dr.norm(), spec.radius_position * (1 + 1e-12));
    EXPECT_LE(dv.norm(), spec.radius_velocity * (1 + 1e-12));
  }
}

TEST(SampleTheta, StreamsAreIndependentOfOrder) {
  SamplingSpec spec;
  spec.seed = 9;
  const auto forward = SampleTheta(spec, std::uint64_t(41)).ToVector();
  for (std::uint64_t i = 100; i > 0; --i) SampleTheta(spec, i);
  EXPECT_EQ(SampleTheta(spec, std::uint64_t(41)).ToVector(), forward);
  EXPECT_NE(SampleTheta(spec, std::uint64_t(42)).ToVector(), forward);
}

TEST(SampleTheta, UniformUnitRange) {
  std::mt19937_64 rng(1);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = UniformUnit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(SamplingSpec, Validation) {
  SamplingSpec spec;
  spec.radius_angle = -1;
  EXPECT_THROW(spec.Validate(), DomainError);
  spec = SamplingSpec{};
  spec.count = 0;
  EXPECT_THROW(spec.Validate(), DomainError);
  EXPECT_EQ(ParseSamplingMode("ball"), SamplingMode::kBall);
  EXPECT_THROW(ParseSamplingMode("sphere"), DomainError);
}

Dataset Synthetic(int rows, int nodes = 50) {
  Dataset ds;
  ds.header.nodes = nodes;
  ds.header.mission_hash = DefaultMission().Hash();
  ds.header.attempted = rows + 1;
  ds.header.stored = rows;
  ds.header.yield = double(rows) / (rows + 1);
  ds.header.seed = 4;
  std::mt19937_64 rng(2);
  SamplingSpec spec;
  for (int i = 0; i < rows; ++i) {
    DatasetSample s;
    s.theta = SampleTheta(spec, rng).ToVector();
    s.tau.resize(8 * nodes - 3);
    for (auto& b : s.tau) b = rng() & 1;
    s.t_f = 40.0 + UniformUnit(rng) * 30.0;
    ds.samples.push_back(s);
  }
  return ds;
}

TEST(DatasetIo, RoundTripIsLossless) {
  const Dataset ds = Synthetic(12);
  std::stringstream buf;
  WriteDataset(ds, buf);
  const std::string text = buf.str();
  const Dataset back = ReadDataset(buf, &DefaultMission());
  ASSERT_EQ(back.samples.size(), ds.samples.size());
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].theta, ds.samples[i].theta);
    EXPECT_EQ(back.samples[i].tau, ds.samples[i].tau);
    EXPECT_EQ(back.samples[i].t_f, ds.samples[i].t_f);
  }
  EXPECT_EQ(back.header.yield, ds.header.yield);
  std::stringstream again;
  WriteDataset(back, again);
  EXPECT_EQ(again.str(), text);
}

TEST(DatasetIo, FourHundredSevenColumns) {
  std::stringstream buf;
  WriteDataset(Synthetic(3), buf);
  std::string line;
  while (std::getline(buf, line) && line.rfind("#", 0) == 0) {
  }
  EXPECT_EQ(std::count(line.begin(), line.end(), ',') + 1, 407);
  std::getline(buf, line);
  EXPECT_EQ(std::count(line.begin(), line.end(), ',') + 1, 407);
}

TEST(DatasetIo, LayoutVersionMismatchIsRejected) {
  Dataset ds = Synthetic(2);
  ds.header.layout_version = "lcvx-layout-v2";
  std::stringstream buf;
  WriteDataset(ds, buf);
  EXPECT_THROW(ReadDataset(buf), DatasetVersionError);
}

TEST(DatasetIo, MissionMismatchIsRejected) {
  std::stringstream buf;
  WriteDataset(Synthetic(2), buf);
  MissionConfig other;
  other.nodes = 30;
  EXPECT_THROW(ReadDataset(buf, &other), DatasetVersionError);
  std::stringstream buf2;
  WriteDataset(Synthetic(2), buf2);
  MissionConfig heavier;
  heavier.vehicle.m_wet = 2000;
  EXPECT_THROW(ReadDataset(buf2, &heavier), DatasetVersionError);
}

TEST(DatasetIo, CorruptRowsAreRejected) {
  std::stringstream buf;
  WriteDataset(Synthetic(2), buf);
  std::string text = buf.str();
  const auto pos = text.find(",0,");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 3, ",2,");
  std::stringstream bad(text);
  EXPECT_THROW(ReadDataset(bad), std::runtime_error);
}

TEST(TrainTestSplit, DeterministicDisjointAndComplete) {
  const Split a = TrainTestSplit(100, 0.8, 3), b = TrainTestSplit(100, 0.8, 3);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.train.size(), 80u);
  EXPECT_EQ(a.test.size(), 20u);
  std::set<int> all(a.train.begin(), a.train.end());
  all.insert(a.test.begin(), a.test.end());
  EXPECT_EQ(all.size(), 100u);
  EXPECT_NE(TrainTestSplit(100, 0.8, 4).train, a.train);
}

SamplingSpec SmallSpec(int count, std::uint64_t seed) {
  SamplingSpec spec;
  spec.radius_angle = DegToRad(2.0);
  spec.radius_position = 100.0;
  spec.radius_velocity = 10.0;
  spec.count = count;
  spec.seed = seed;
  return spec;
}

TEST(GenerateDataset, ZeroRadiiGiveIdenticalRows) {
  SamplingSpec spec = SmallSpec(2, 1);
  spec.radius_angle = spec.radius_position = spec.radius_velocity = 0.0;
  const Dataset ds = GenerateDataset(DefaultMission(), spec, LineSearchConfig{});
  ASSERT_EQ(ds.samples.size(), 2u);
  EXPECT_EQ(ds.samples[0].theta, ds.samples[1].theta);
  EXPECT_EQ(ds.samples[0].tau, ds.samples[1].tau);
  EXPECT_EQ(ds.samples[0].t_f, ds.samples[1].t_f);
  EXPECT_DOUBLE_EQ(ds.header.yield, 1.0);
}

TEST(GenerateDataset, SeededRunsAreByteIdenticalAndParallelSafe) {
  const SamplingSpec spec = SmallSpec(4, 21);
  const Dataset a = GenerateDataset(DefaultMission(), spec, LineSearchConfig{});
  const Dataset b = GenerateDataset(DefaultMission(), spec, LineSearchConfig{});
  GenerateOptions parallel;
  parallel.workers = 2;
  const Dataset c = GenerateDataset(DefaultMission(), spec, LineSearchConfig{}, parallel);
  std::stringstream sa, sb, sc;
  WriteDataset(a, sa);
  WriteDataset(b, sb);
  WriteDataset(c, sc);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str(), sc.str());
  EXPECT_GT(a.header.yield, 0.0);
  EXPECT_LE(a.header.yield, 1.0);
  EXPECT_EQ(a.header.yield, double(a.header.stored) / a.header.attempted);

  const VerificationReport v = VerifySubsample(DefaultMission(), a, 1.0, 3);
  EXPECT_EQ(v.checked, int(a.samples.size()));
  EXPECT_EQ(v.passed, v.checked);
}

TEST(GenerateDataset, InfeasibleSeedGivesEmptyDataset) {
  SamplingSpec spec = SmallSpec(1, 1);
  spec.radius_angle = spec.radius_position = spec.radius_velocity = 0.0;
  spec.theta0 = MakeTheta(DegToRad(10), DegToRad(20), DegToRad(60), Vec3(2000, 2000, 1000),
                          Vec3(-15, -15, -30));
  const Dataset ds = GenerateDataset(DefaultMission(), spec, LineSearchConfig{});
  EXPECT_TRUE(ds.samples.empty());
  EXPECT_EQ(ds.header.yield, 0.0);
}

}  // namespace
}  // namespace pdg
