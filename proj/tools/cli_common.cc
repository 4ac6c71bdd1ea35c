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


#include "cli_common.h"

#include <fstream>
#include <thread>

#include "pdg/lcvx.h"
#include "pdg/nn/model_io.h"

#ifndef PDG_VERSION
#define PDG_VERSION "0.0.0"
#endif

namespace pdg::cli {
namespace {

std::vector<std::string>& Arguments() {
  static std::vector<std::string> args;
  return args;
}

}  // namespace

void RecordArguments(int argc, char** argv) {
  Arguments().assign(argv, argv + argc);
}

void AddCommon(CLI::App* cmd, Common* common) {
  cmd->add_option("--config", common->config, "Mission configuration file (key = value)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", common->seed, "Random seed")->capture_default_str();
  cmd->add_option("--manifest", common->manifest,
                  "Run manifest path (default: <output>.manifest.json)");
}

MissionConfig LoadMission(const Common& common) {
  if (common.config.empty()) return MissionConfig{};
  return LoadMissionConfig(common.config);
}

ProblemParameters ThetaFlags::ToParameters() const {
  return MakeTheta(DegToRad(phi_deg), DegToRad(gamma_gs_deg), DegToRad(gamma_p_deg),
                   Vec3(r0[0], r0[1], r0[2]), Vec3(v0[0], v0[1], v0[2]));
}

void AddThetaFlags(CLI::App* cmd, ThetaFlags* theta) {
  cmd->add_option("--phi-deg", theta->phi_deg, "Engine cant angle [deg]")->capture_default_str();
  cmd->add_option("--gamma-gs-deg", theta->gamma_gs_deg, "Glideslope angle from vertical [deg]")
      ->capture_default_str();
  cmd->add_option("--gamma-p-deg", theta->gamma_p_deg, "Thrust pointing limit [deg]")
      ->capture_default_str();
  cmd->add_option("--r0", theta->r0, "Initial position x y z [m]")->expected(3);
  cmd->add_option("--v0", theta->v0, "Initial velocity x y z [m/s]")->expected(3);
}

void AddLineSearchFlags(CLI::App* cmd, LineSearchFlags* flags) {
  LineSearchConfig& c = flags->config;
  cmd->add_option("--t-lo", c.t_lo, "Lower final-time bound [s]")->capture_default_str();
  cmd->add_option("--t-hi", c.t_hi, "Upper final-time bound [s]; 0 = fuel exhaustion")
      ->capture_default_str();
  cmd->add_option("--grid", c.coarse_grid, "Coarse grid points")->capture_default_str();
  cmd->add_option("--refine-tol", c.refine_tol, "Golden-section tolerance [s]")
      ->capture_default_str();
}

int DefaultWorkers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

nlohmann::json Manifest(const std::string& command, const Common& common,
                        const MissionConfig& mission) {
  nlohmann::json j;
  j["tool"] = "pdg";
  j["version"] = PDG_VERSION;
  j["command"] = command;
  j["arguments"] = Arguments();
  j["mission_hash"] = mission.Hash();
  j["mission_config"] = common.config.empty() ? nlohmann::json(nullptr)
                                              : nlohmann::json(common.config);
  j["layout_version"] = kLayoutVersion;
  j["model_format_version"] = nn::kModelFormatVersion;
  j["seed"] = common.seed;
  j["outputs"] = nlohmann::json::array();
  return j;
}

void WriteManifest(const nlohmann::json& manifest, const Common& common,
                   const std::filesystem::path& primary) {
  const std::filesystem::path path =
      common.manifest.empty() ? std::filesystem::path(primary.string() + ".manifest.json")
                              : std::filesystem::path(common.manifest);
  WriteText(path, manifest.dump(2) + "\n");
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string HashComment(const MissionConfig& mission) {
  return "# mission_hash=" + mission.Hash() + "\n";
}

}  // namespace pdg::cli
