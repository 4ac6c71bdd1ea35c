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


#include "pdg/mission.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <Eigen/Dense>

namespace pdg {
namespace {

std::string FormatDouble(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void Require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw DomainError(field, what);
}

Eigen::Matrix3d Skew(const Vec3& w) {
  Eigen::Matrix3d m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

}  // namespace

void PlanetConfig::Validate() const {
  Require(sidereal_period > 0.0, "sidereal_period", "must be positive");
  Require(gravity.norm() > 0.0, "gravity", "must be non-zero");
  Require(g_e > 0.0, "g_e", "must be positive");
}

void VehicleConfig::Validate() const {
  Require(m_dry > 0.0, "m_dry", "must be positive");
  Require(m_dry < m_wet, "m_wet", "must exceed m_dry");
  Require(thrust_min_single > 0.0, "thrust_min_single", "must be positive");
  Require(thrust_min_single < thrust_max_single, "thrust_max_single",
          "must exceed thrust_min_single");
  Require(n_eng >= 1, "n_eng", "must be at least 1");
  Require(v_max > 0.0, "v_max", "must be positive");
  Require(alpha > 0.0, "alpha", "must be positive");
}

Vec3 MissionConfig::omega() const {
  if (omega_override) return *omega_override;
  return OmegaVector(planet);
}

void MissionConfig::Validate() const {
  planet.Validate();
  vehicle.Validate();
  Require(nodes >= 2, "nodes", "must be at least 2");
  Require(glideslope_faces >= 3, "glideslope_faces", "must be at least 3");
  Require(solver.max_iterations >= 1, "solver_max_iterations", "must be positive");
  Require(solver.feastol > 0.0 && solver.abstol > 0.0 && solver.reltol > 0.0,
          "solver_tolerance", "must be positive");
}

namespace {

// Ordered (key, getter, setter) table shared by ToText and the parser so both
// stay in sync.
struct Field {
  const char* key;
  std::function<double(const MissionConfig&)> get;
  std::function<void(MissionConfig&, double)> set;
};

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      {"gravity_x", [](const MissionConfig& m) { return m.planet.gravity.x(); },
       [](MissionConfig& m, double v) { m.planet.gravity.x() = v; }},
      {"gravity_y", [](const MissionConfig& m) { return m.planet.gravity.y(); },
       [](MissionConfig& m, double v) { m.planet.gravity.y() = v; }},
      {"gravity_z", [](const MissionConfig& m) { return m.planet.gravity.z(); },
       [](MissionConfig& m, double v) { m.planet.gravity.z() = v; }},
      {"sidereal_period", [](const MissionConfig& m) { return m.planet.sidereal_period; },
       [](MissionConfig& m, double v) { m.planet.sidereal_period = v; }},
      {"latitude_deg", [](const MissionConfig& m) { return RadToDeg(m.planet.latitude); },
       [](MissionConfig& m, double v) { m.planet.latitude = DegToRad(v); }},
      {"g_e", [](const MissionConfig& m) { return m.planet.g_e; },
       [](MissionConfig& m, double v) { m.planet.g_e = v; }},
      {"m_dry", [](const MissionConfig& m) { return m.vehicle.m_dry; },
       [](MissionConfig& m, double v) { m.vehicle.m_dry = v; }},
      {"m_wet", [](const MissionConfig& m) { return m.vehicle.m_wet; },
       [](MissionConfig& m, double v) { m.vehicle.m_wet = v; }},
      {"isp", [](const MissionConfig& m) { return m.vehicle.isp; },
       [](MissionConfig& m, double v) { m.vehicle.isp = v; }},
      {"n_eng", [](const MissionConfig& m) { return double(m.vehicle.n_eng); },
       [](MissionConfig& m, double v) { m.vehicle.n_eng = int(std::lround(v)); }},
      {"thrust_min_single", [](const MissionConfig& m) { return m.vehicle.thrust_min_single; },
       [](MissionConfig& m, double v) { m.vehicle.thrust_min_single = v; }},
      {"thrust_max_single", [](const MissionConfig& m) { return m.vehicle.thrust_max_single; },
       [](MissionConfig& m, double v) { m.vehicle.thrust_max_single = v; }},
      {"thrust_max_physical", [](const MissionConfig& m) { return m.vehicle.thrust_max_physical; },
       [](MissionConfig& m, double v) { m.vehicle.thrust_max_physical = v; }},
      {"v_max", [](const MissionConfig& m) { return m.vehicle.v_max; },
       [](MissionConfig& m, double v) { m.vehicle.v_max = v; }},
      {"alpha", [](const MissionConfig& m) { return m.vehicle.alpha; },
       [](MissionConfig& m, double v) { m.vehicle.alpha = v; }},
      {"nodes", [](const MissionConfig& m) { return double(m.nodes); },
       [](MissionConfig& m, double v) { m.nodes = int(std::lround(v)); }},
      {"glideslope_faces", [](const MissionConfig& m) { return double(m.glideslope_faces); },
       [](MissionConfig& m, double v) { m.glideslope_faces = int(std::lround(v)); }},
      {"solver_max_iterations", [](const MissionConfig& m) { return double(m.solver.max_iterations); },
       [](MissionConfig& m, double v) { m.solver.max_iterations = int(std::lround(v)); }},
      {"solver_feastol", [](const MissionConfig& m) { return m.solver.feastol; },
       [](MissionConfig& m, double v) { m.solver.feastol = v; }},
      {"solver_abstol", [](const MissionConfig& m) { return m.solver.abstol; },
       [](MissionConfig& m, double v) { m.solver.abstol = v; }},
      {"solver_reltol", [](const MissionConfig& m) { return m.solver.reltol; },
       [](MissionConfig& m, double v) { m.solver.reltol = v; }},
  };
  return fields;
}

}  // namespace

std::string MissionConfig::ToText() const {
  std::ostringstream os;
  for (const auto& f : Fields()) os << f.key << '=' << FormatDouble(f.get(*this)) << '\n';
  if (omega_override) {
    os << "omega_x=" << FormatDouble(omega_override->x()) << '\n'
       << "omega_y=" << FormatDouble(omega_override->y()) << '\n'
       << "omega_z=" << FormatDouble(omega_override->z()) << '\n';
  }
  return os.str();
}

std::string MissionConfig::Hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : ToText()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

MissionConfig ParseMissionConfig(const std::string& text) {
  MissionConfig mission;
  std::map<std::string, const Field*> by_key;
  for (const auto& f : Fields()) by_key[f.key] = &f;

  std::optional<Vec3> omega;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("line " + std::to_string(line_no), "expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DomainError(key, "not a number: '" + value + "'");
    }
    if (key == "omega_x" || key == "omega_y" || key == "omega_z") {
      if (!omega) omega = Vec3::Zero();
      (*omega)[key.back() - 'x'] = v;
      continue;
    }
    auto it = by_key.find(key);
    if (it == by_key.end()) throw DomainError(key, "unknown mission key");
    it->second->set(mission, v);
  }
  mission.omega_override = omega;
  mission.Validate();
  return mission;
}

MissionConfig LoadMissionConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mission config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseMissionConfig(buffer.str());
}

void SaveMissionConfig(const MissionConfig& mission, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# mission configuration (angles in degrees)\n" << mission.ToText();
}

ProblemParameters::ProblemParameters(double phi, double gamma_gs, double gamma_p,
                                     const Vec3& r0, const Vec3& v0)
    : phi_(phi), gamma_gs_(gamma_gs), gamma_p_(gamma_p), r0_(r0), v0_(v0) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  Require(std::isfinite(phi) && phi >= 0.0 && phi < kHalfPi, "phi", "must lie in [0, 90) deg");
  Require(std::isfinite(gamma_gs) && gamma_gs > 0.0 && gamma_gs <= kHalfPi, "gamma_gs",
          "must lie in (0, 90] deg");
  Require(std::isfinite(gamma_p) && gamma_p > 0.0 && gamma_p < kHalfPi, "gamma_p",
          "must lie in (0, 90) deg");
  Require(r0.allFinite() && v0.allFinite(), "r0/v0", "must be finite");
  Require(r0.z() > 0.0, "r0_z", "initial altitude must be positive");
}

ProblemParameters ProblemParameters::FromVector(const Vector& v) {
  return ProblemParameters(v[0], v[1], v[2], Vec3(v[3], v[4], v[5]), Vec3(v[6], v[7], v[8]));
}

ProblemParameters::Vector ProblemParameters::ToVector() const {
  return {phi_, gamma_gs_, gamma_p_, r0_.x(), r0_.y(), r0_.z(), v0_.x(), v0_.y(), v0_.z()};
}

const std::array<const char*, ProblemParameters::kSize>& ProblemParameters::Names() {
  static const std::array<const char*, kSize> names = {
      "phi", "gamma_gs", "gamma_p", "r0x", "r0y", "r0z", "v0x", "v0y", "v0z"};
  return names;
}

ProblemParameters MakeTheta(double phi, double gamma_gs, double gamma_p, const Vec3& r0,
                            const Vec3& v0) {
  return ProblemParameters(phi, gamma_gs, gamma_p, r0, v0);
}

ProblemParameters ReferenceTheta() {
  return MakeTheta(DegToRad(10.0), DegToRad(80.0), DegToRad(60.0), Vec3(2000.0, 2000.0, 1000.0),
                   Vec3(-15.0, -15.0, -30.0));
}

Vec3 OmegaVector(const PlanetConfig& planet) {
  const double rate = 2.0 * std::numbers::pi / planet.sidereal_period;
  // East-north-up: the spin axis lies in the north/up plane.
  return rate * Vec3(0.0, std::cos(planet.latitude), std::sin(planet.latitude));
}

ThrustBounds EffectiveThrustBounds(const VehicleConfig& vehicle, double phi) {
  const double c = std::cos(phi);
  return {vehicle.n_eng * vehicle.thrust_min_single * c,
          vehicle.n_eng * vehicle.thrust_max_single * c};
}

AssumptionReport ValidateLcvxAssumptions(const MissionConfig& mission,
                                         const ProblemParameters& params) {
  AssumptionReport report;
  const Vec3 w = mission.omega();
  const Eigen::Matrix3d wx = Skew(w);

  Eigen::Matrix<double, 6, 6> a = Eigen::Matrix<double, 6, 6>::Zero();
  a.block<3, 3>(0, 3).setIdentity();
  a.block<3, 3>(3, 0) = -wx * wx;
  a.block<3, 3>(3, 3) = -2.0 * wx;
  Eigen::Matrix<double, 6, 3> b = Eigen::Matrix<double, 6, 3>::Zero();
  b.block<3, 3>(3, 0).setIdentity();

  Eigen::Matrix<double, 6, 18> ctrb;
  Eigen::Matrix<double, 6, 3> block = b;
  for (int i = 0; i < 6; ++i) {
    ctrb.block<6, 3>(0, 3 * i) = block;
    block = a * block;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 6, 18>> lu(ctrb);
  report.controllability_rank = int(lu.rank());
  report.controllable = report.controllability_rank == 6;

  const double scale = std::max(w.norm(), 1e-300);
  report.rotation_off_vertical = w.cross(Vec3::UnitZ()).norm() > 1e-12 * scale;

  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double lo = kHalfPi - params.gamma_p() - params.gamma_gs();
  const double hi = kHalfPi + params.gamma_p() - params.gamma_gs();
  // cos is unimodal on [-pi, pi] with its peak at zero.
  report.max_cos_theta = std::cos(std::clamp(0.0, lo, hi));
  report.min_cos_theta = std::min(std::cos(lo), std::cos(hi));

  const ThrustBounds rho = EffectiveThrustBounds(mission.vehicle, params.phi());
  const double g = mission.planet.gravity.norm();
  const double sin_gs = std::sin(params.gamma_gs());
  report.lower_thrust_condition =
      rho.rho_min * report.max_cos_theta < mission.vehicle.m_dry * g * sin_gs;
  report.upper_thrust_condition =
      rho.rho_max * report.min_cos_theta > mission.vehicle.m_wet * g * sin_gs;
  return report;
}

}  // namespace pdg
