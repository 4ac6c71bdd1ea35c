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


#ifndef PDG_LCVX_H_
#define PDG_LCVX_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdg/cone_program.h"
#include "pdg/mission.h"

namespace pdg {

// Bumped whenever the flag ordering below changes; stored in dataset and
// model headers.
inline constexpr const char* kLayoutVersion = "lcvx-layout-v1";

// Inequality families of the convexified problem, in flag order.
enum class Family : int {
  kThrustLower = 0,  // mu_min (1 - dz + dz^2/2) <= xi
  kThrustUpper,      // xi <= mu_max (1 - dz)
  kThrustNorm,       // |u| <= xi
  kPointing,         // u_z >= xi cos(gamma_p)
  kGlideslope,       // H r <= h
  kMaxVelocity,      // |v| <= v_max
  kMassLower,        // z >= z0(t)
  kMassUpper,        // z <= ln(m_wet - alpha rho_min t)
  kDryMass,          // z(t_f) >= ln(m_dry)
};
inline constexpr int kNumFamilies = 9;

const char* FamilyName(Family family);

struct FlagSlot {
  Family family;
  int node;
};

// Canonical strategy-vector layout: 8N-3 flags. Thrust, norm and pointing
// families cover every node; glideslope, velocity and both mass-envelope
// families cover nodes 1..N-1; the dry-mass flag sits at the final node.
class ConstraintIndex {
 public:
  explicit ConstraintIndex(int nodes);

  int nodes() const { return nodes_; }
  int size() const { return int(slots_.size()); }
  const FlagSlot& slot(int flag) const { return slots_.at(flag); }
  // -1 when the family has no flag at that node.
  int Flag(Family family, int node) const;
  int FamilyOffset(Family family) const { return offsets_[int(family)]; }
  int FamilyCount(Family family) const { return counts_[int(family)]; }
  int FirstNode(Family family) const;

  // flag_id,family,node
  void WriteCsv(std::ostream& out) const;

 private:
  int nodes_;
  std::vector<FlagSlot> slots_;
  std::array<int, kNumFamilies> offsets_{};
  std::array<int, kNumFamilies> counts_{};
};

ConstraintIndex ConstraintLayout(int nodes);

// Nominal constraint bookkeeping (dynamics and boundary groups, plus nine
// inequality groups per node): 12N+5 for the full problem, 3N+5 with every
// inequality removed. Not a row count of the assembled program.
struct NominalCounts {
  int full;
  int dynamics_and_boundary;
};
NominalCounts NominalConstraintCounts(int nodes);

class FuelExhaustionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MassEnvelopePoint {
  double z0;      // ln kg
  double mu_min;  // N/kg
  double mu_max;  // N/kg
};

// Throws FuelExhaustionError when m_wet - alpha rho_max t is not positive.
MassEnvelopePoint MassEnvelope(const MissionConfig& mission, const ProblemParameters& params,
                               double t);

// Upper log-mass bound ln(m_wet - alpha rho_min t).
double MassUpperBound(const MissionConfig& mission, const ProblemParameters& params, double t);

struct GlideslopeHalfspaces {
  Eigen::Matrix<double, Eigen::Dynamic, 3> H;
  Eigen::VectorXd h;
};

// Inscribed polyhedral approximation of the cone of half-angle gamma_gs
// about the local vertical: face i is
//   cos(pi/k) (cos psi_i, sin psi_i) . r_xy <= tan(gamma_gs) r_z,
// multiplied through by cos(gamma_gs) so that gamma_gs = 90 deg is the
// half-space r_z >= 0.
GlideslopeHalfspaces GlideslopeMatrix(double gamma_gs, int faces);

// Per-node decision variables; 11 scalars per node: r(3) v(3) z u(3) xi.
class Trajectory {
 public:
  static constexpr int kStride = 11;

  Trajectory() = default;
  explicit Trajectory(int nodes) : values_(Eigen::VectorXd::Zero(kStride * nodes)) {}
  explicit Trajectory(Eigen::VectorXd values);

  int nodes() const { return int(values_.size()) / kStride; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  auto r(int k) { return values_.segment<3>(kStride * k); }
  auto r(int k) const { return values_.segment<3>(kStride * k); }
  auto v(int k) { return values_.segment<3>(kStride * k + 3); }
  auto v(int k) const { return values_.segment<3>(kStride * k + 3); }
  double& z(int k) { return values_(kStride * k + 6); }
  double z(int k) const { return values_(kStride * k + 6); }
  auto u(int k) { return values_.segment<3>(kStride * k + 7); }
  auto u(int k) const { return values_.segment<3>(kStride * k + 7); }
  double& xi(int k) { return values_(kStride * k + 10); }
  double xi(int k) const { return values_(kStride * k + 10); }

  static int RIndex(int k) { return kStride * k; }
  static int VIndex(int k) { return kStride * k + 3; }
  static int ZIndex(int k) { return kStride * k + 6; }
  static int UIndex(int k) { return kStride * k + 7; }
  static int XiIndex(int k) { return kStride * k + 10; }

 private:
  Eigen::VectorXd values_;
};

struct Strategy {
  std::vector<std::uint8_t> tau;
  double t_f_star = 0.0;

  // Throws std::invalid_argument unless tau has 8N-3 entries and t_f_star > 0.
  void Validate(int nodes) const;
  int ActiveCount() const;
};

enum class ConeKind { kLinear, kSecondOrder };

// Scalar rows expanded from one (family, node) flag: G_local x + s = h with s
// in R_+^rows or in one second-order cone.
struct ConstraintBlock {
  int flag;
  ConeKind kind;
  int rows;
  std::vector<Eigen::Triplet<double>> entries;  // (local row, variable, value)
  Eigen::VectorXd h;
};

struct EqualityRow {
  enum class Kind { kDynamics, kBoundary } kind;
  int node;  // interval start for dynamics; node for boundary
  std::vector<std::pair<int, double>> entries;
  double rhs;
};

struct ConstraintCounts {
  int equality_rows = 0;
  int inequality_rows = 0;
  int enforced_flags = 0;
};

// First-order-hold discretization of the convexified landing problem at a
// fixed final time.
class DiscretizedSocp {
 public:
  const MissionConfig& mission() const { return mission_; }
  const ProblemParameters& params() const { return params_; }
  int nodes() const { return nodes_; }
  double t_f() const { return t_f_; }
  double dt() const { return dt_; }
  double time(int k) const { return k * dt_; }
  int num_variables() const { return Trajectory::kStride * nodes_; }
  const ConstraintIndex& layout() const { return layout_; }
  const ThrustBounds& thrust_bounds() const { return rho_; }
  const GlideslopeHalfspaces& glideslope() const { return glideslope_; }
  const Eigen::VectorXd& cost() const { return cost_; }
  const std::vector<EqualityRow>& equalities() const { return equalities_; }
  const std::vector<ConstraintBlock>& blocks() const { return blocks_; }
  const std::vector<std::uint8_t>& enforced() const { return enforced_; }
  bool is_enforced(int flag) const { return enforced_[flag] != 0; }
  const MassEnvelopePoint& envelope(int k) const { return envelope_[k]; }
  double mass_upper(int k) const { return mass_upper_[k]; }

  // Exact transition over one interval: x+ = phi x + b_minus w + b_plus w+ + offset
  // with x = (r, v, z) and w = (u, xi).
  const Eigen::Matrix<double, 7, 7>& phi() const { return phi_; }
  const Eigen::Matrix<double, 7, 4>& b_minus() const { return b_minus_; }
  const Eigen::Matrix<double, 7, 4>& b_plus() const { return b_plus_; }
  const Eigen::Matrix<double, 7, 1>& offset() const { return offset_; }

  ConstraintCounts counts() const;

  // Assembles the enforced constraints: linear rows first, then cones.
  ConeProgram ToConeProgram() const;

 private:
  friend DiscretizedSocp BuildSocp(const MissionConfig&, const ProblemParameters&, double);
  friend DiscretizedSocp ReduceProblem(const DiscretizedSocp&, const Strategy&);

  DiscretizedSocp(const MissionConfig& mission, const ProblemParameters& params)
      : mission_(mission), params_(params), layout_(mission.nodes) {}

  MissionConfig mission_;
  ProblemParameters params_;
  int nodes_ = 0;
  double t_f_ = 0.0;
  double dt_ = 0.0;
  ConstraintIndex layout_;
  ThrustBounds rho_{};
  GlideslopeHalfspaces glideslope_;
  std::vector<MassEnvelopePoint> envelope_;
  std::vector<double> mass_upper_;
  Eigen::VectorXd cost_;
  Eigen::Matrix<double, 7, 7> phi_;
  Eigen::Matrix<double, 7, 4> b_minus_, b_plus_;
  Eigen::Matrix<double, 7, 1> offset_;
  std::vector<EqualityRow> equalities_;
  std::vector<ConstraintBlock> blocks_;  // one per flag, in flag order
  std::vector<std::uint8_t> enforced_;
};

// Throws std::invalid_argument for t_f <= 0 and FuelExhaustionError when the
// horizon exceeds the maximum burn time.
DiscretizedSocp BuildSocp(const MissionConfig& mission, const ProblemParameters& params,
                          double t_f);

// Keeps dynamics and boundary rows, and the inequality blocks whose flag is
// set; rebuilt at strategy.t_f_star when it differs from the input horizon.
DiscretizedSocp ReduceProblem(const DiscretizedSocp& socp, const Strategy& strategy);

// Signed slack of one flag at a trajectory (>= 0 when satisfied) and the
// magnitude used to make it dimensionless.
struct FlagSlack {
  double slack;
  double scale;
  double relative() const { return slack / scale; }
};
FlagSlack EvaluateFlag(const DiscretizedSocp& socp, const Trajectory& trajectory, int flag);

// Flag f is set iff its relative slack is <= tol (violations count as tight).
std::vector<std::uint8_t> ExtractTightConstraints(const DiscretizedSocp& socp,
                                                  const Trajectory& trajectory, double tol);

inline constexpr double kTightTolerance = 1e-4;
inline constexpr double kFeasibilityTolerance = 1e-5;
inline constexpr double kEqualityTolerance = 1e-6;

struct FeasibilityReport {
  bool feasible = false;
  double worst_violation = 0.0;
  std::array<double, kNumFamilies> family_violation{};
  double equality_violation = 0.0;
  std::string worst;  // family name or "equality"

  std::vector<std::string> ViolatedFamilies(double tol) const;
};

// Evaluates every equality and every inequality of socp (regardless of which
// flags are enforced) at the candidate.
FeasibilityReport CheckFeasibility(const DiscretizedSocp& socp, const Trajectory& candidate,
                                   double tol = kFeasibilityTolerance,
                                   double tol_eq = kEqualityTolerance);

// Post-solve view of the trajectory-dependent assumptions: the glideslope is
// only instantaneously active (no two consecutive tight glideslope nodes) and
// the velocity bound activates a discrete number of times.
struct PostSolveAssumptions {
  int longest_glideslope_run = 0;
  int velocity_activations = 0;
  int longest_velocity_run = 0;
  bool glideslope_instantaneous = true;
};
PostSolveAssumptions CheckPostSolveAssumptions(const ConstraintIndex& layout,
                                               const std::vector<std::uint8_t>& tau);

}  // namespace pdg

#endif  // PDG_LCVX_H_
