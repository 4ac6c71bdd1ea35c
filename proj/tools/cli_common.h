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


#ifndef PDG_TOOLS_CLI_COMMON_H_
#define PDG_TOOLS_CLI_COMMON_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdg/mission.h"
#include "pdg/solver.h"

namespace pdg::cli {

enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kUsage = 2,
  kInfeasible = 3,
};

// Raised by commands for bad inputs that CLI11 cannot catch on its own
// (missing model files, mismatched datasets).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Options every subcommand shares.
struct Common {
  std::string config;
  std::uint64_t seed = 0;
  std::string manifest;
};

void AddCommon(CLI::App* cmd, Common* common);

// Mission from --config, or the built-in defaults.
MissionConfig LoadMission(const Common& common);

// Parameter vector given on the command line; angles in degrees.
struct ThetaFlags {
  double phi_deg = 10.0;
  double gamma_gs_deg = 80.0;
  double gamma_p_deg = 60.0;
  std::array<double, 3> r0{2000.0, 2000.0, 1000.0};
  std::array<double, 3> v0{-15.0, -15.0, -30.0};

  ProblemParameters ToParameters() const;
};

void AddThetaFlags(CLI::App* cmd, ThetaFlags* theta);

struct LineSearchFlags {
  LineSearchConfig config;
};

void AddLineSearchFlags(CLI::App* cmd, LineSearchFlags* flags);

int DefaultWorkers();

// Run manifest: tool version, command line, mission hash, seeds and outputs.
nlohmann::json Manifest(const std::string& command, const Common& common,
                        const MissionConfig& mission);

// Writes the manifest next to `primary` (primary + ".manifest.json") unless
// --manifest names another path.
void WriteManifest(const nlohmann::json& manifest, const Common& common,
                   const std::filesystem::path& primary);

void WriteText(const std::filesystem::path& path, const std::string& text);

// "# mission_hash=<hash>" prefix for CSV outputs.
std::string HashComment(const MissionConfig& mission);

// The command line as typed, for manifests.
void RecordArguments(int argc, char** argv);

}  // namespace pdg::cli

#endif  // PDG_TOOLS_CLI_COMMON_H_
