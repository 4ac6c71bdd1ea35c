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


#include "pdg/result_io.h"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace pdg {

void WriteTrajectoryCsv(const SolveResult& result, std::ostream& out) {
  out << "node,t,r_x,r_y,r_z,v_x,v_y,v_z,log_mass,mass,u_x,u_y,u_z,sigma,thrust\n";
  const Trajectory& tr = result.trajectory;
  const int n = tr.nodes();
  if (n < 2) return;
  const double dt = result.t_f / double(n - 1);
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), ",%.10g", v);
    out << buf;
  };
  for (int k = 0; k < n; ++k) {
    out << k;
    put(k * dt);
    for (int i = 0; i < 3; ++i) put(tr.r(k)(i));
    for (int i = 0; i < 3; ++i) put(tr.v(k)(i));
    const double mass = std::exp(tr.z(k));
    put(tr.z(k));
    put(mass);
    for (int i = 0; i < 3; ++i) put(tr.u(k)(i));
    put(tr.xi(k));
    put(tr.u(k).norm() * mass);
    out << '\n';
  }
}

std::string SolveSummaryJson(const SolveResult& r, const MissionConfig& mission,
                             const ProblemParameters& params) {
  auto number = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  nlohmann::json j;
  j["status"] = ToString(r.status);
  j["cost"] = number(r.cost);
  j["t_f"] = number(r.t_f);
  j["wall_time_ms"] = r.wall_time_ms;
  j["iterations"] = r.iterations;
  j["conic_solves"] = r.conic_solves;
  j["diagnostics"] = r.diagnostics;
  j["mission_hash"] = mission.Hash();
  const auto v = params.ToVector();
  j["theta"] = {{"phi_deg", RadToDeg(v[0])},     {"gamma_gs_deg", RadToDeg(v[1])},
                {"gamma_p_deg", RadToDeg(v[2])}, {"r0", {v[3], v[4], v[5]}},
                {"v0", {v[6], v[7], v[8]}}};
  if (r.optimal() && r.trajectory.nodes() > 0) {
    const double m_final = std::exp(r.trajectory.z(r.trajectory.nodes() - 1));
    j["final_mass"] = m_final;
    j["fuel_used"] = mission.vehicle.m_wet - m_final;
  }
  return j.dump(2);
}

}  // namespace pdg
