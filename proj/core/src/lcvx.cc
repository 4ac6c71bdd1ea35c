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


#include "pdg/lcvx.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace pdg {

const char* FamilyName(Family family) {
  switch (family) {
    case Family::kThrustLower: return "thrust_lower";
    case Family::kThrustUpper: return "thrust_upper";
    case Family::kThrustNorm: return "thrust_norm";
    case Family::kPointing: return "pointing";
    case Family::kGlideslope: return "glideslope";
    case Family::kMaxVelocity: return "max_velocity";
    case Family::kMassLower: return "mass_lower";
    case Family::kMassUpper: return "mass_upper";
    case Family::kDryMass: return "dry_mass";
  }
  return "unknown";
}

ConstraintIndex::ConstraintIndex(int nodes) : nodes_(nodes) {
  if (nodes < 2) throw std::invalid_argument("ConstraintIndex: nodes must be >= 2");
  for (int f = 0; f < kNumFamilies; ++f) {
    const auto family = Family(f);
    offsets_[f] = int(slots_.size());
    int first = 0, last = nodes - 1;
    if (family == Family::kGlideslope || family == Family::kMaxVelocity ||
        family == Family::kMassLower || family == Family::kMassUpper) {
      first = 1;
    } else if (family == Family::kDryMass) {
      first = nodes - 1;
    }
    for (int k = first; k <= last; ++k) slots_.push_back({family, k});
    counts_[f] = int(slots_.size()) - offsets_[f];
  }
}

int ConstraintIndex::FirstNode(Family family) const {
  return slots_[offsets_[int(family)]].node;
}

int ConstraintIndex::Flag(Family family, int node) const {
  const int first = FirstNode(family);
  const int i = node - first;
  if (i < 0 || i >= counts_[int(family)]) return -1;
  return offsets_[int(family)] + i;
}

void ConstraintIndex::WriteCsv(std::ostream& out) const {
  out << "flag_id,family,node\n";
  for (int i = 0; i < size(); ++i) {
    out << i << ',' << FamilyName(slots_[i].family) << ',' << slots_[i].node << '\n';
  }
}

ConstraintIndex ConstraintLayout(int nodes) { return ConstraintIndex(nodes); }

NominalCounts NominalConstraintCounts(int nodes) {
  return {12 * nodes + 5, 3 * nodes + 5};
}

MassEnvelopePoint MassEnvelope(const MissionConfig& mission, const ProblemParameters& params,
                               double t) {
  const ThrustBounds rho = EffectiveThrustBounds(mission.vehicle, params.phi());
  const double mass = mission.vehicle.m_wet - mission.vehicle.alpha * rho.rho_max * t;
  if (!(mass > 0.0)) {
    throw FuelExhaustionError("horizon " + std::to_string(t) +
                              " s exceeds the maximum-thrust burn time");
  }
  const double z0 = std::log(mass);
  const double inv = std::exp(-z0);
  return {z0, rho.rho_min * inv, rho.rho_max * inv};
}

double MassUpperBound(const MissionConfig& mission, const ProblemParameters& params, double t) {
  const ThrustBounds rho = EffectiveThrustBounds(mission.vehicle, params.phi());
  const double mass = mission.vehicle.m_wet - mission.vehicle.alpha * rho.rho_min * t;
  if (!(mass > 0.0)) {
    throw FuelExhaustionError("horizon " + std::to_string(t) +
                              " s exceeds the minimum-thrust burn time");
  }
  return std::log(mass);
}

GlideslopeHalfspaces GlideslopeMatrix(double gamma_gs, int faces) {
  if (!(gamma_gs > 0.0 && gamma_gs <= std::numbers::pi / 2.0)) {
    throw DomainError("gamma_gs", "must lie in (0, 90] deg");
  }
  if (faces < 3) throw DomainError("glideslope_faces", "must be at least 3");
  GlideslopeHalfspaces gs;
  gs.H.resize(faces, 3);
  gs.h = Eigen::VectorXd::Zero(faces);
  const double inscribe = std::cos(std::numbers::pi / faces);
  const double c = std::cos(gamma_gs);
  const double s = std::sin(gamma_gs);
  for (int i = 0; i < faces; ++i) {
    const double psi = 2.0 * std::numbers::pi * i / faces;
    gs.H(i, 0) = c * std::cos(psi);
    gs.H(i, 1) = c * std::sin(psi);
    gs.H(i, 2) = -inscribe * s;
  }
  return gs;
}

Trajectory::Trajectory(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() % kStride != 0) {
    throw std::invalid_argument("Trajectory: length is not a multiple of 11");
  }
}

void Strategy::Validate(int nodes) const {
  if (int(tau.size()) != 8 * nodes - 3) {
    throw std::invalid_argument("Strategy: expected " + std::to_string(8 * nodes - 3) +
                                " flags, got " + std::to_string(tau.size()));
  }
  if (!(t_f_star > 0.0)) throw std::invalid_argument("Strategy: t_f_star must be positive");
}

int Strategy::ActiveCount() const {
  return int(std::count_if(tau.begin(), tau.end(), [](std::uint8_t f) { return f != 0; }));
}

namespace {

Eigen::Matrix3d Skew(const Vec3& w) {
  Eigen::Matrix3d m;
  m << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), w.x(), 0.0;
  return m;
}

void Discretize(const MissionConfig& mission, double dt, Eigen::Matrix<double, 7, 7>& phi,
                Eigen::Matrix<double, 7, 4>& b_minus, Eigen::Matrix<double, 7, 4>& b_plus,
                Eigen::Matrix<double, 7, 1>& offset) {
  const Eigen::Matrix3d wx = Skew(mission.omega());
  // Augmented state (x[7], w[4], w_dot[4], 1).
  Eigen::Matrix<double, 16, 16> m = Eigen::Matrix<double, 16, 16>::Zero();
  m.block<3, 3>(0, 3).setIdentity();
  m.block<3, 3>(3, 0) = -wx * wx;
  m.block<3, 3>(3, 3) = -2.0 * wx;
  m.block<3, 3>(3, 7).setIdentity();            // u
  m(6, 10) = -mission.vehicle.alpha;            // xi
  m.block<3, 1>(3, 15) = mission.planet.gravity;
  m.block<4, 4>(7, 11).setIdentity();           // w' = w_dot
  const Eigen::Matrix<double, 16, 16> e = (m * dt).exp();

  phi = e.block<7, 7>(0, 0);
  const Eigen::Matrix<double, 7, 4> e_w = e.block<7, 4>(0, 7);
  const Eigen::Matrix<double, 7, 4> e_rate = e.block<7, 4>(0, 11);
  b_plus = e_rate / dt;
  b_minus = e_w - b_plus;
  offset = e.block<7, 1>(0, 15);
}

void AddLinear(ConstraintBlock& block, int row, std::initializer_list<std::pair<int, double>> terms,
               double rhs) {
  for (auto [col, v] : terms) block.entries.emplace_back(row, col, v);
  block.h(row) = rhs;
}

ConstraintBlock MakeBlock(const DiscretizedSocp& socp, int flag) {
  const FlagSlot slot = socp.layout().slot(flag);
  const int k = slot.node;
  const auto& env = socp.envelope(k);
  const int z = Trajectory::ZIndex(k);
  const int xi = Trajectory::XiIndex(k);
  const int u = Trajectory::UIndex(k);
  const int r = Trajectory::RIndex(k);
  const int v = Trajectory::VIndex(k);

  ConstraintBlock b{flag, ConeKind::kLinear, 1, {}, Eigen::VectorXd::Zero(1)};
  switch (slot.family) {
    case Family::kThrustLower: {
      // Rotated-cone form of mu (1 - dz + dz^2/2) <= xi, dz = z - z0, scaled by mu/2:
      //   | (mu dz, xi + mu dz - 3mu/2) | <= xi + mu dz - mu/2.
      const double mu = env.mu_min;
      b.kind = ConeKind::kSecondOrder;
      b.rows = 3;
      b.h.resize(3);
      AddLinear(b, 0, {{xi, -1.0}, {z, -mu}}, -mu * env.z0 - 0.5 * mu);
      AddLinear(b, 1, {{z, -mu}}, -mu * env.z0);
      AddLinear(b, 2, {{xi, -1.0}, {z, -mu}}, -mu * env.z0 - 1.5 * mu);
      break;
    }
    case Family::kThrustUpper:
      AddLinear(b, 0, {{xi, 1.0}, {z, env.mu_max}}, env.mu_max * (1.0 + env.z0));
      break;
    case Family::kThrustNorm:
      b.kind = ConeKind::kSecondOrder;
      b.rows = 4;
      b.h = Eigen::VectorXd::Zero(4);
      b.entries.emplace_back(0, xi, -1.0);
      for (int i = 0; i < 3; ++i) b.entries.emplace_back(1 + i, u + i, -1.0);
      break;
    case Family::kPointing:
      AddLinear(b, 0, {{xi, std::cos(socp.params().gamma_p())}, {u + 2, -1.0}}, 0.0);
      break;
    case Family::kGlideslope: {
      const auto& gs = socp.glideslope();
      b.rows = int(gs.H.rows());
      b.h = gs.h;
      for (int i = 0; i < b.rows; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (gs.H(i, j) != 0.0) b.entries.emplace_back(i, r + j, gs.H(i, j));
        }
      }
      break;
    }
    case Family::kMaxVelocity:
      b.kind = ConeKind::kSecondOrder;
      b.rows = 4;
      b.h = Eigen::VectorXd::Zero(4);
      b.h(0) = socp.mission().vehicle.v_max;
      for (int i = 0; i < 3; ++i) b.entries.emplace_back(1 + i, v + i, -1.0);
      break;
    case Family::kMassLower:
      AddLinear(b, 0, {{z, -1.0}}, -env.z0);
      break;
    case Family::kMassUpper:
      AddLinear(b, 0, {{z, 1.0}}, socp.mass_upper(k));
      break;
    case Family::kDryMass:
      AddLinear(b, 0, {{z, -1.0}}, -std::log(socp.mission().vehicle.m_dry));
      break;
  }
  return b;
}

}  // namespace

DiscretizedSocp BuildSocp(const MissionConfig& mission, const ProblemParameters& params,
                          double t_f) {
  if (!(t_f > 0.0) || !std::isfinite(t_f)) {
    throw std::invalid_argument("BuildSocp: t_f must be positive and finite");
  }
  mission.Validate();
  DiscretizedSocp socp(mission, params);
  const int n = mission.nodes;
  socp.nodes_ = n;
  socp.t_f_ = t_f;
  socp.dt_ = t_f / (n - 1);
  socp.rho_ = EffectiveThrustBounds(mission.vehicle, params.phi());
  socp.glideslope_ = GlideslopeMatrix(params.gamma_gs(), mission.glideslope_faces);
  for (int k = 0; k < n; ++k) {
    socp.envelope_.push_back(MassEnvelope(mission, params, socp.time(k)));
    socp.mass_upper_.push_back(MassUpperBound(mission, params, socp.time(k)));
  }

  // Trapezoidal weights on xi.
  socp.cost_ = Eigen::VectorXd::Zero(socp.num_variables());
  for (int k = 0; k < n; ++k) {
    socp.cost_(Trajectory::XiIndex(k)) = (k == 0 || k == n - 1) ? 0.5 * socp.dt_ : socp.dt_;
  }

  Discretize(mission, socp.dt_, socp.phi_, socp.b_minus_, socp.b_plus_, socp.offset_);

  // Dynamics: x_{k+1} - phi x_k - B- w_k - B+ w_{k+1} = offset.
  auto state_index = [](int k, int i) {
    return i < 6 ? Trajectory::RIndex(k) + i : Trajectory::ZIndex(k);
  };
  auto input_index = [](int k, int j) {
    return j < 3 ? Trajectory::UIndex(k) + j : Trajectory::XiIndex(k);
  };
  for (int k = 0; k + 1 < n; ++k) {
    for (int i = 0; i < 7; ++i) {
      EqualityRow row{EqualityRow::Kind::kDynamics, k, {}, socp.offset_(i)};
      row.entries.emplace_back(state_index(k + 1, i), 1.0);
      for (int j = 0; j < 7; ++j) {
        if (socp.phi_(i, j) != 0.0) row.entries.emplace_back(state_index(k, j), -socp.phi_(i, j));
      }
      for (int j = 0; j < 4; ++j) {
        if (socp.b_minus_(i, j) != 0.0) {
          row.entries.emplace_back(input_index(k, j), -socp.b_minus_(i, j));
        }
        if (socp.b_plus_(i, j) != 0.0) {
          row.entries.emplace_back(input_index(k + 1, j), -socp.b_plus_(i, j));
        }
      }
      socp.equalities_.push_back(std::move(row));
    }
  }
  auto boundary = [&](int k, int index, double value) {
    socp.equalities_.push_back({EqualityRow::Kind::kBoundary, k, {{index, 1.0}}, value});
  };
  for (int i = 0; i < 3; ++i) boundary(0, Trajectory::RIndex(0) + i, params.r0()(i));
  for (int i = 0; i < 3; ++i) boundary(0, Trajectory::VIndex(0) + i, params.v0()(i));
  boundary(0, Trajectory::ZIndex(0), std::log(mission.vehicle.m_wet));
  for (int i = 0; i < 3; ++i) boundary(n - 1, Trajectory::RIndex(n - 1) + i, mission.r_f()(i));
  for (int i = 0; i < 3; ++i) boundary(n - 1, Trajectory::VIndex(n - 1) + i, mission.v_f()(i));

  for (int f = 0; f < socp.layout_.size(); ++f) socp.blocks_.push_back(MakeBlock(socp, f));
  socp.enforced_.assign(socp.layout_.size(), 1);
  return socp;
}

DiscretizedSocp ReduceProblem(const DiscretizedSocp& socp, const Strategy& strategy) {
  strategy.Validate(socp.nodes());
  DiscretizedSocp reduced = strategy.t_f_star == socp.t_f()
                                ? socp
                                : BuildSocp(socp.mission(), socp.params(), strategy.t_f_star);
  for (std::size_t f = 0; f < strategy.tau.size(); ++f) {
    reduced.enforced_[f] = strategy.tau[f] != 0 ? 1 : 0;
  }
  return reduced;
}

ConstraintCounts DiscretizedSocp::counts() const {
  ConstraintCounts c;
  c.equality_rows = int(equalities_.size());
  for (const auto& b : blocks_) {
    if (!is_enforced(b.flag)) continue;
    c.inequality_rows += b.rows;
    ++c.enforced_flags;
  }
  return c;
}

ConeProgram DiscretizedSocp::ToConeProgram() const {
  ConeProgram p;
  const int nv = num_variables();
  p.c = cost_;

  std::vector<Eigen::Triplet<double>> a;
  p.b.resize(int(equalities_.size()));
  for (int i = 0; i < int(equalities_.size()); ++i) {
    for (auto [col, v] : equalities_[i].entries) a.emplace_back(i, col, v);
    p.b(i) = equalities_[i].rhs;
  }
  p.A.resize(int(equalities_.size()), nv);
  p.A.setFromTriplets(a.begin(), a.end());

  std::vector<Eigen::Triplet<double>> g;
  std::vector<double> h;
  auto append = [&](const ConstraintBlock& b) {
    const int base = int(h.size());
    for (const auto& t : b.entries) g.emplace_back(base + t.row(), t.col(), t.value());
    for (int i = 0; i < b.rows; ++i) h.push_back(b.h(i));
  };
  for (const auto& b : blocks_) {
    if (is_enforced(b.flag) && b.kind == ConeKind::kLinear) {
      append(b);
      p.cones.linear += b.rows;
    }
  }
  for (const auto& b : blocks_) {
    if (is_enforced(b.flag) && b.kind == ConeKind::kSecondOrder) {
      append(b);
      p.cones.soc.push_back(b.rows);
    }
  }
  p.G.resize(int(h.size()), nv);
  p.G.setFromTriplets(g.begin(), g.end());
  p.h = Eigen::Map<const Eigen::VectorXd>(h.data(), Eigen::Index(h.size()));
  return p;
}

FlagSlack EvaluateFlag(const DiscretizedSocp& socp, const Trajectory& x, int flag) {
  const FlagSlot slot = socp.layout().slot(flag);
  const int k = slot.node;
  const auto& env = socp.envelope(k);
  auto scaled = [](double slack, double magnitude) {
    return FlagSlack{slack, std::max(1.0, std::abs(magnitude))};
  };
  switch (slot.family) {
    case Family::kThrustLower: {
      const double dz = x.z(k) - env.z0;
      const double bound = env.mu_min * (1.0 - dz + 0.5 * dz * dz);
      return scaled(x.xi(k) - bound, bound);
    }
    case Family::kThrustUpper: {
      const double bound = env.mu_max * (1.0 - (x.z(k) - env.z0));
      return scaled(bound - x.xi(k), bound);
    }
    case Family::kThrustNorm:
      return scaled(x.xi(k) - x.u(k).norm(), x.xi(k));
    case Family::kPointing: {
      const double bound = x.xi(k) * std::cos(socp.params().gamma_p());
      return scaled(x.u(k).z() - bound, bound);
    }
    case Family::kGlideslope: {
      const auto& gs = socp.glideslope();
      const Eigen::VectorXd hr = gs.H * x.r(k);
      const Eigen::VectorXd slack = gs.h - hr;
      return scaled(slack.minCoeff(), hr.cwiseAbs().maxCoeff());
    }
    case Family::kMaxVelocity:
      return scaled(socp.mission().vehicle.v_max - x.v(k).norm(), socp.mission().vehicle.v_max);
    case Family::kMassLower:
      return scaled(x.z(k) - env.z0, env.z0);
    case Family::kMassUpper:
      return scaled(socp.mass_upper(k) - x.z(k), socp.mass_upper(k));
    case Family::kDryMass: {
      const double bound = std::log(socp.mission().vehicle.m_dry);
      return scaled(x.z(k) - bound, bound);
    }
  }
  return {0.0, 1.0};
}

std::vector<std::uint8_t> ExtractTightConstraints(const DiscretizedSocp& socp,
                                                  const Trajectory& trajectory, double tol) {
  if (trajectory.nodes() != socp.nodes()) {
    throw std::invalid_argument("ExtractTightConstraints: trajectory/problem size mismatch");
  }
  std::vector<std::uint8_t> tau(socp.layout().size());
  for (int f = 0; f < socp.layout().size(); ++f) {
    tau[f] = EvaluateFlag(socp, trajectory, f).relative() <= tol ? 1 : 0;
  }
  return tau;
}

std::vector<std::string> FeasibilityReport::ViolatedFamilies(double tol) const {
  std::vector<std::string> out;
  for (int f = 0; f < kNumFamilies; ++f) {
    if (family_violation[f] > tol) out.emplace_back(FamilyName(Family(f)));
  }
  return out;
}

FeasibilityReport CheckFeasibility(const DiscretizedSocp& socp, const Trajectory& candidate,
                                   double tol, double tol_eq) {
  if (candidate.values().size() != socp.num_variables()) {
    throw std::invalid_argument("CheckFeasibility: candidate has " +
                                std::to_string(candidate.values().size()) +
                                " variables, problem has " +
                                std::to_string(socp.num_variables()));
  }
  FeasibilityReport report;
  const Eigen::VectorXd& x = candidate.values();
  for (const auto& row : socp.equalities()) {
    double lhs = 0.0, magnitude = std::abs(row.rhs);
    for (auto [col, v] : row.entries) {
      lhs += v * x(col);
      magnitude = std::max(magnitude, std::abs(v * x(col)));
    }
    const double violation = std::abs(lhs - row.rhs) / std::max(1.0, magnitude);
    report.equality_violation = std::max(report.equality_violation, violation);
  }
  for (int f = 0; f < socp.layout().size(); ++f) {
    const FlagSlack s = EvaluateFlag(socp, candidate, f);
    const double violation = std::max(0.0, -s.relative());
    auto& slot = report.family_violation[int(socp.layout().slot(f).family)];
    slot = std::max(slot, violation);
  }

  bool ok = report.equality_violation <= tol_eq;
  report.worst = "equality";
  // Equalities and inequalities have separate tolerances; normalize both to
  // "fraction of tolerance" to pick the worst.
  double worst_ratio = report.equality_violation / tol_eq;
  report.worst_violation = report.equality_violation;
  for (int f = 0; f < kNumFamilies; ++f) {
    const double v = report.family_violation[f];
    if (v > tol) ok = false;
    if (v / tol > worst_ratio) {
      worst_ratio = v / tol;
      report.worst_violation = v;
      report.worst = FamilyName(Family(f));
    }
  }
  report.feasible = ok;
  return report;
}

PostSolveAssumptions CheckPostSolveAssumptions(const ConstraintIndex& layout,
                                               const std::vector<std::uint8_t>& tau) {
  PostSolveAssumptions out;
  auto runs = [&](Family family, int& longest, int& count) {
    int run = 0;
    for (int i = 0; i < layout.FamilyCount(family); ++i) {
      if (tau[layout.FamilyOffset(family) + i]) {
        if (run == 0) ++count;
        longest = std::max(longest, ++run);
      } else {
        run = 0;
      }
    }
  };
  int glide_count = 0;
  runs(Family::kGlideslope, out.longest_glideslope_run, glide_count);
  runs(Family::kMaxVelocity, out.longest_velocity_run, out.velocity_activations);
  out.glideslope_instantaneous = out.longest_glideslope_run <= 1;
  return out;
}

}  // namespace pdg
