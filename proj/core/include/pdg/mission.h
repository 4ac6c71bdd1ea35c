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


#ifndef PDG_MISSION_H_
#define PDG_MISSION_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace pdg {

using Vec3 = Eigen::Vector3d;

constexpr double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double RadToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Raised when a configuration or parameter value is outside its domain. The
// offending field name is kept so callers can report it.
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct PlanetConfig {
  Vec3 gravity{0.0, 0.0, -3.7114};   // m/s^2
  double sidereal_period = 88642.44;  // s
  double latitude = DegToRad(30.0);   // rad
  double g_e = 9.807;                 // m/s^2

  void Validate() const;
};

struct VehicleConfig {
  double m_dry = 1505.0;               // kg
  double m_wet = 1905.0;               // kg
  double isp = 225.0;                  // s
  int n_eng = 6;
  double thrust_min_single = 930.0;    // N, T1
  double thrust_max_single = 2480.0;   // N, T2
  double thrust_max_physical = 3100.0; // N, informational
  double v_max = 138.89;               // m/s
  double alpha = 0.0005;               // s/m

  void Validate() const;
};

// Interior-point termination settings; carried in the mission file so that
// solver behaviour is part of the hashed configuration.
struct SolverSettings {
  int max_iterations = 80;
  double feastol = 1e-8;
  double abstol = 1e-10;
  double reltol = 1e-10;
};

struct MissionConfig {
  PlanetConfig planet;
  VehicleConfig vehicle;
  int nodes = 50;
  int glideslope_faces = 4;
  SolverSettings solver;
  // Replaces the latitude-derived spin vector when set.
  std::optional<Vec3> omega_override;

  Vec3 omega() const;
  Vec3 r_f() const { return Vec3::Zero(); }
  Vec3 v_f() const { return Vec3::Zero(); }

  void Validate() const;

  // Canonical key=value text; the hash below is computed over it.
  std::string ToText() const;
  // 16 hex digits, FNV-1a over ToText().
  std::string Hash() const;
};

MissionConfig ParseMissionConfig(const std::string& text);
MissionConfig LoadMissionConfig(const std::filesystem::path& path);
void SaveMissionConfig(const MissionConfig& mission, const std::filesystem::path& path);

// Parametric problem data: engine angle, glideslope angle, pointing angle,
// initial position and initial velocity. Angles are radians.
class ProblemParameters {
 public:
  static constexpr int kSize = 9;
  using Vector = std::array<double, kSize>;

  ProblemParameters(double phi, double gamma_gs, double gamma_p, const Vec3& r0,
                    const Vec3& v0);

  // Inverse of ToVector(); validates.
  static ProblemParameters FromVector(const Vector& values);

  double phi() const { return phi_; }
  double gamma_gs() const { return gamma_gs_; }
  double gamma_p() const { return gamma_p_; }
  const Vec3& r0() const { return r0_; }
  const Vec3& v0() const { return v0_; }

  // [phi, gamma_gs, gamma_p, r0x, r0y, r0z, v0x, v0y, v0z]
  Vector ToVector() const;

  static const std::array<const char*, kSize>& Names();

 private:
  double phi_;
  double gamma_gs_;
  double gamma_p_;
  Vec3 r0_;
  Vec3 v0_;
};

ProblemParameters MakeTheta(double phi, double gamma_gs, double gamma_p,
                            const Vec3& r0, const Vec3& v0);

// Seed trajectory of the sampled dataset (10, 80, 60 deg; 2000/2000/1000 m;
// -15/-15/-30 m/s).
ProblemParameters ReferenceTheta();

// Spin vector in the east-north-up landing frame.
Vec3 OmegaVector(const PlanetConfig& planet);

struct ThrustBounds {
  double rho_min;  // N
  double rho_max;  // N
};

ThrustBounds EffectiveThrustBounds(const VehicleConfig& vehicle, double phi);

struct AssumptionReport {
  int controllability_rank = 0;
  bool controllable = false;              // 1
  bool rotation_off_vertical = false;     // 2
  double min_cos_theta = 0.0;
  double max_cos_theta = 0.0;
  bool lower_thrust_condition = false;    // 4a
  bool upper_thrust_condition = false;    // 4b
  // 3 and 5 depend on the optimal trajectory and are checked after a solve.
  std::string trajectory_dependent = "assumptions 3 and 5: trajectory-dependent, checked post-solve";

  bool pre_solve_ok() const {
    return controllable && rotation_off_vertical && lower_thrust_condition &&
           upper_thrust_condition;
  }
};

AssumptionReport ValidateLcvxAssumptions(const MissionConfig& mission,
                                         const ProblemParameters& params);

}  // namespace pdg

#endif  // PDG_MISSION_H_
