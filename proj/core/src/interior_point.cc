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


#include "pdg/interior_point.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/SparseCholesky>

namespace pdg {

const char* ToString(ConeStatus status) {
  switch (status) {
    case ConeStatus::kOptimal: return "optimal";
    case ConeStatus::kPrimalInfeasible: return "primal_infeasible";
    case ConeStatus::kDualInfeasible: return "dual_infeasible";
    case ConeStatus::kMaxIterations: return "max_iterations";
    case ConeStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

using Eigen::VectorXd;

// Ruiz equilibration of [A; G]. Rows belonging to one second-order cone share
// a factor so the cone is preserved.
struct Equilibration {
  VectorXd col;    // D: x = D x~
  VectorXd row_a;  // E_A
  VectorXd row_g;  // E_G
};

Equilibration Equilibrate(const ConeProgram& p, SparseMatrix& a, SparseMatrix& g, bool enabled) {
  const int n = p.num_variables();
  Equilibration e{VectorXd::Ones(n), VectorXd::Ones(p.A.rows()), VectorXd::Ones(p.G.rows())};
  a = p.A;
  g = p.G;
  if (!enabled) return e;

  constexpr int kPasses = 12;
  constexpr double kMin = 1e-4, kMax = 1e4;
  for (int pass = 0; pass < kPasses; ++pass) {
    VectorXd col_max = VectorXd::Zero(n);
    VectorXd a_max = VectorXd::Zero(a.rows());
    VectorXd g_max = VectorXd::Zero(g.rows());
    for (int j = 0; j < n; ++j) {
      for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
        col_max(j) = std::max(col_max(j), std::abs(it.value()));
        a_max(it.row()) = std::max(a_max(it.row()), std::abs(it.value()));
      }
      for (SparseMatrix::InnerIterator it(g, j); it; ++it) {
        col_max(j) = std::max(col_max(j), std::abs(it.value()));
        g_max(it.row()) = std::max(g_max(it.row()), std::abs(it.value()));
      }
    }
    int off = p.cones.linear;
    for (int d : p.cones.soc) {
      const double m = g_max.segment(off, d).maxCoeff();
      g_max.segment(off, d).setConstant(m);
      off += d;
    }
    auto factor = [&](double v) {
      return v > 0.0 ? std::clamp(1.0 / std::sqrt(v), kMin, kMax) : 1.0;
    };
    VectorXd dc(n), da(a.rows()), dg(g.rows());
    for (int j = 0; j < n; ++j) dc(j) = factor(col_max(j));
    for (int i = 0; i < a.rows(); ++i) da(i) = factor(a_max(i));
    for (int i = 0; i < g.rows(); ++i) dg(i) = factor(g_max(i));
    a = da.asDiagonal() * a * dc.asDiagonal();
    g = dg.asDiagonal() * g * dc.asDiagonal();
    e.col = e.col.cwiseProduct(dc);
    e.row_a = e.row_a.cwiseProduct(da);
    e.row_g = e.row_g.cwiseProduct(dg);
  }
  return e;
}

class KktSystem {
 public:
  KktSystem(const SparseMatrix& a, const SparseMatrix& g, const ConeDims& dims, double reg)
      : n_(int(a.cols())), p_(int(a.rows())), m_(int(g.rows())), dims_(dims), reg_(reg) {
    const int size = n_ + p_ + m_;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(a.nonZeros() + g.nonZeros() + size + 16 * dims.soc.size());
    for (int j = 0; j < n_; ++j) t.emplace_back(j, j, reg);
    for (int j = 0; j < n_; ++j) {
      for (SparseMatrix::InnerIterator it(a, j); it; ++it) t.emplace_back(n_ + it.row(), j, it.value());
      for (SparseMatrix::InnerIterator it(g, j); it; ++it) {
        t.emplace_back(n_ + p_ + it.row(), j, it.value());
      }
    }
    for (int i = 0; i < p_; ++i) t.emplace_back(n_ + i, n_ + i, -reg);
    const int z0 = n_ + p_;
    for (int i = 0; i < dims.linear; ++i) t.emplace_back(z0 + i, z0 + i, -1.0);
    int off = dims.linear;
    for (int d : dims.soc) {
      for (int c = 0; c < d; ++c) {
        for (int r = c; r < d; ++r) t.emplace_back(z0 + off + r, z0 + off + c, r == c ? -1.0 : 0.0);
      }
      off += d;
    }
    k_.resize(size, size);
    k_.setFromTriplets(t.begin(), t.end());
    k_.makeCompressed();

    // Value slots of the scaling block, in the order they are written.
    for (int i = 0; i < dims.linear; ++i) slots_.push_back(Slot(z0 + i, z0 + i));
    off = dims.linear;
    for (int d : dims.soc) {
      for (int c = 0; c < d; ++c) {
        for (int r = c; r < d; ++r) slots_.push_back(Slot(z0 + off + r, z0 + off + c));
      }
      off += d;
    }
    for (int i = 0; i < n_ + p_; ++i) reg_slots_.push_back(Slot(i, i));
    reg_diag_ = VectorXd::Zero(size);
    reg_diag_.head(n_).setConstant(reg);
    reg_diag_.segment(n_, p_).setConstant(-reg);
    ldlt_.analyzePattern(k_);
  }

  // Sets the (3,3) block to -W'W and factorizes, raising the static
  // regularization while the factorization breaks down.
  bool Factor(const cone::NtScaling& w) {
    SetScaling(w);
    for (double reg = reg_; reg <= 1e-4; reg *= 100.0) {
      SetRegularization(reg);
      ldlt_.factorize(k_);
      if (ldlt_.info() == Eigen::Success) return true;
    }
    return false;
  }

 private:
  void SetRegularization(double reg) {
    double* values = k_.valuePtr();
    for (int i = 0; i < n_; ++i) values[reg_slots_[i]] = reg;
    for (int i = 0; i < p_; ++i) values[reg_slots_[n_ + i]] = -reg;
    reg_diag_.head(n_).setConstant(reg);
    reg_diag_.segment(n_, p_).setConstant(-reg);
  }

  void SetScaling(const cone::NtScaling& w) {
    double* values = k_.valuePtr();
    std::size_t s = 0;
    for (int i = 0; i < dims_.linear; ++i) values[slots_[s++]] = -w.linear(i) * w.linear(i);
    for (std::size_t k = 0; k < dims_.soc.size(); ++k) {
      const int d = dims_.soc[k];
      const Eigen::MatrixXd wtw = w.soc[k].transpose() * w.soc[k];
      for (int c = 0; c < d; ++c) {
        for (int r = c; r < d; ++r) values[slots_[s++]] = -wtw(r, c);
      }
    }
  }

 public:

  VectorXd Solve(const VectorXd& rhs, int refinement_steps) const {
    VectorXd x = ldlt_.solve(rhs);
    const double rhs_norm = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
    double last = std::numeric_limits<double>::infinity();
    for (int i = 0; i < refinement_steps; ++i) {
      VectorXd r = rhs - (k_.selfadjointView<Eigen::Lower>() * x - reg_diag_.cwiseProduct(x));
      const double err = r.lpNorm<Eigen::Infinity>();
      if (err <= 1e-12 * rhs_norm || err > 0.5 * last) break;
      last = err;
      x += ldlt_.solve(r);
    }
    return x;
  }

 private:
  int Slot(int row, int col) const {
    const int* inner = k_.innerIndexPtr();
    const int begin = k_.outerIndexPtr()[col];
    const int end = k_.outerIndexPtr()[col + 1];
    const int* it = std::lower_bound(inner + begin, inner + end, row);
    return int(it - inner);
  }

  int n_, p_, m_;
  ConeDims dims_;
  double reg_;
  SparseMatrix k_;
  std::vector<int> slots_;
  std::vector<int> reg_slots_;
  VectorXd reg_diag_;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
};

}  // namespace

ConeSolution SolveConeProgram(const ConeProgram& problem, const InteriorPointSettings& settings) {
  problem.Validate();
  const ConeDims& dims = problem.cones;
  const int n = problem.num_variables();
  const int p = int(problem.A.rows());
  const int m = int(problem.G.rows());
  const int degree = dims.degree();

  SparseMatrix a, g;
  const Equilibration eq = Equilibrate(problem, a, g, settings.equilibrate);
  const VectorXd c = eq.col.cwiseProduct(problem.c);
  const VectorXd b = eq.row_a.cwiseProduct(problem.b);
  const VectorXd h = eq.row_g.cwiseProduct(problem.h);
  const SparseMatrix at = a.transpose();
  const SparseMatrix gt = g.transpose();

  const double norm_b = std::max(1.0, problem.b.norm());
  const double norm_h = std::max(1.0, problem.h.norm());
  const double norm_c = std::max(1.0, problem.c.norm());

  ConeSolution out;
  KktSystem kkt(a, g, dims, settings.regularization);
  const VectorXd e = cone::Identity(dims);

  auto split = [&](const VectorXd& v, VectorXd& vx, VectorXd& vy, VectorXd& vz) {
    vx = v.head(n);
    vy = v.segment(n, p);
    vz = v.tail(m);
  };
  auto stack = [&](const VectorXd& vx, const VectorXd& vy, const VectorXd& vz) {
    VectorXd v(n + p + m);
    v << vx, vy, vz;
    return v;
  };

  // Initial point from two least-squares problems with W = I.
  cone::NtScaling identity;
  identity.linear = VectorXd::Ones(dims.linear);
  for (int d : dims.soc) {
    identity.soc.push_back(Eigen::MatrixXd::Identity(d, d));
    identity.soc_inverse.push_back(Eigen::MatrixXd::Identity(d, d));
  }
  if (!kkt.Factor(identity)) {
    out.status = ConeStatus::kNumericalFailure;
    out.message = "KKT factorization failed at initialization";
    return out;
  }
  VectorXd x, y, z, s, tmp_x, tmp_y, tmp_z;
  split(kkt.Solve(stack(VectorXd::Zero(n), b, h), settings.refinement_steps), x, tmp_y, tmp_z);
  s = -tmp_z;
  split(kkt.Solve(stack(-c, VectorXd::Zero(p), VectorXd::Zero(m)), settings.refinement_steps),
        tmp_x, y, z);
  {
    const double alpha_s = cone::MaxEigenvalueShift(dims, s);
    if (alpha_s >= -1e-8 * std::max(1.0, s.norm())) s += (1.0 + std::max(alpha_s, 0.0)) * e;
    const double alpha_z = cone::MaxEigenvalueShift(dims, z);
    if (alpha_z >= -1e-8 * std::max(1.0, z.norm())) z += (1.0 + std::max(alpha_z, 0.0)) * e;
  }
  double tau = 1.0, kappa = 1.0;

  // Unscaled quantities for termination tests.
  auto unscale = [&](double t, VectorXd& xu, VectorXd& yu, VectorXd& zu, VectorXd& su) {
    xu = eq.col.cwiseProduct(x) / t;
    yu = eq.row_a.cwiseProduct(y) / t;
    zu = eq.row_g.cwiseProduct(z) / t;
    su = s.cwiseQuotient(eq.row_g) / t;
  };

  // Best iterate seen, returned at reduced accuracy when progress stops.
  struct Snapshot {
    double merit = std::numeric_limits<double>::infinity();
    bool inaccurate_ok = false;
    VectorXd x, y, z, s;
    double pcost = 0.0, dcost = 0.0, pres = 0.0, dres = 0.0, gap = 0.0;
  } best;
  auto stop = [&](ConeStatus status, const std::string& why) {
    if (best.inaccurate_ok) {
      out.status = ConeStatus::kOptimal;
      out.x = best.x;
      out.y = best.y;
      out.z = best.z;
      out.s = best.s;
      out.primal_cost = best.pcost;
      out.dual_cost = best.dcost;
      out.primal_residual = best.pres;
      out.dual_residual = best.dres;
      out.gap = best.gap;
      out.message = "optimal (reduced accuracy)";
    } else {
      out.status = status;
      out.message = why;
    }
    return out;
  };
  for (int iter = 0;; ++iter) {
    out.iterations = iter;

    VectorXd xu, yu, zu, su;
    unscale(tau, xu, yu, zu, su);
    const double pcost = problem.c.dot(xu);
    const double dcost = -problem.h.dot(zu) - problem.b.dot(yu);
    const double pres = std::max((problem.A * xu - problem.b).norm() / norm_b,
                                 (problem.G * xu + su - problem.h).norm() / norm_h);
    const double dres =
        (problem.A.transpose() * yu + problem.G.transpose() * zu + problem.c).norm() / norm_c;
    const double gap = su.dot(zu);
    double relgap = std::numeric_limits<double>::infinity();
    if (pcost < 0.0) relgap = gap / -pcost;
    else if (dcost > 0.0) relgap = gap / dcost;

    out.primal_cost = pcost;
    out.dual_cost = dcost;
    out.primal_residual = pres;
    out.dual_residual = dres;
    out.gap = gap;

    // Worst tolerance ratio of this iterate; <= 1 means converged.
    const double merit = std::max({pres / settings.feastol, dres / settings.feastol,
                                   std::min(gap / settings.abstol, relgap / settings.reltol)});
    const bool inaccurate_ok =
        pres <= settings.inaccurate_feastol && dres <= settings.inaccurate_feastol &&
        (gap <= settings.inaccurate_gaptol || relgap <= settings.inaccurate_gaptol);
    if (merit < best.merit) {
      best = Snapshot{merit, inaccurate_ok, xu, yu, zu, su, pcost, dcost, pres, dres, gap};
    }

    if (merit <= 1.0) {
      out.status = ConeStatus::kOptimal;
      out.x = xu;
      out.y = yu;
      out.z = zu;
      out.s = su;
      out.message = "optimal";
      return out;
    }

    // Infeasibility certificates use the unnormalized iterates.
    {
      const VectorXd y1 = eq.row_a.cwiseProduct(y);
      const VectorXd z1 = eq.row_g.cwiseProduct(z);
      const double hz_by = problem.h.dot(z1) + problem.b.dot(y1);
      if (hz_by < 0.0) {
        const double pinf =
            (problem.A.transpose() * y1 + problem.G.transpose() * z1).norm() / norm_c / -hz_by;
        if (pinf <= settings.feastol) {
          out.status = ConeStatus::kPrimalInfeasible;
          out.message = "primal infeasibility certificate";
          out.y = y1 / -hz_by;
          out.z = z1 / -hz_by;
          return out;
        }
      }
      const VectorXd x1 = eq.col.cwiseProduct(x);
      const VectorXd s1 = s.cwiseQuotient(eq.row_g);
      const double cx = problem.c.dot(x1);
      if (cx < 0.0) {
        const double dinf = std::max((problem.A * x1).norm() / norm_b,
                                     (problem.G * x1 + s1).norm() / norm_h) / -cx;
        if (dinf <= settings.feastol) {
          out.status = ConeStatus::kDualInfeasible;
          out.message = "dual infeasibility certificate";
          return out;
        }
      }
    }

    if (iter >= settings.max_iterations) {
      stop(ConeStatus::kMaxIterations, "iteration limit reached");
      if (out.status != ConeStatus::kOptimal) {
        out.x = xu;
        out.y = yu;
        out.z = zu;
        out.s = su;
      }
      return out;
    }

    // Residuals of the homogeneous embedding.
    const VectorXd r1 = at * y + gt * z + c * tau;
    const VectorXd r2 = -(a * x) + b * tau;
    const VectorXd r3 = -(g * x) - s + h * tau;
    const double r4 = -c.dot(x) - b.dot(y) - h.dot(z) - kappa;
    const double mu = (s.dot(z) + tau * kappa) / (degree + 1);

    const cone::NtScaling w = cone::ComputeNtScaling(dims, s, z);
    const VectorXd lambda = w.Apply(dims, z);
    if (!kkt.Factor(w)) return stop(ConeStatus::kNumericalFailure, "KKT factorization failed");

    VectorXd qx, qy, qz;
    split(kkt.Solve(stack(c, -b, -h), settings.refinement_steps), qx, qy, qz);
    const double q_dot = c.dot(qx) + b.dot(qy) + h.dot(qz);

    struct Direction {
      VectorXd dx, dy, dz, ds;
      double dtau = 0.0, dkappa = 0.0;
    };
    auto solve_direction = [&](double eta, const VectorXd& rc, double rt) {
      Direction d;
      const VectorXd w_rc = w.Apply(dims, cone::InverseProduct(dims, lambda, rc));  // W' = W
      VectorXd px, py, pz;
      split(kkt.Solve(stack(-eta * r1, eta * r2, eta * r3 - w_rc), settings.refinement_steps), px,
            py, pz);
      const double num = -eta * r4 + rt / tau + c.dot(px) + b.dot(py) + h.dot(pz);
      d.dtau = num / (q_dot + kappa / tau);
      d.dx = px - qx * d.dtau;
      d.dy = py - qy * d.dtau;
      d.dz = pz - qz * d.dtau;
      d.ds = w_rc - w.Apply(dims, w.Apply(dims, d.dz));
      d.dkappa = (rt - kappa * d.dtau) / tau;
      return d;
    };
    auto max_step = [&](const Direction& d) {
      double alpha = std::min(cone::MaxStep(dims, s, d.ds), cone::MaxStep(dims, z, d.dz));
      if (d.dtau < 0.0) alpha = std::min(alpha, -tau / d.dtau);
      if (d.dkappa < 0.0) alpha = std::min(alpha, -kappa / d.dkappa);
      return alpha;
    };

    // Predictor.
    const VectorXd lambda_sq = cone::Product(dims, lambda, lambda);
    const Direction aff = solve_direction(1.0, -lambda_sq, -tau * kappa);
    const double alpha_aff = std::min(1.0, max_step(aff));
    const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3), 0.0, 1.0);

    // Corrector.
    const VectorXd ds_scaled = w.ApplyInverse(dims, aff.ds);
    const VectorXd dz_scaled = w.Apply(dims, aff.dz);
    const VectorXd rc = -lambda_sq - cone::Product(dims, ds_scaled, dz_scaled) + sigma * mu * e;
    const double rt = -tau * kappa - aff.dtau * aff.dkappa + sigma * mu;
    const Direction dir = solve_direction(1.0 - sigma, rc, rt);
    const double alpha_max = max_step(dir);
    const double alpha = std::min(1.0, settings.step_fraction * alpha_max);

    if (!std::isfinite(alpha) || alpha < 1e-10 || !dir.dx.allFinite()) {
      std::ostringstream msg;
      msg << "stalled at iteration " << iter << " (step " << alpha << ")";
      return stop(ConeStatus::kNumericalFailure, msg.str());
    }

    x += alpha * dir.dx;
    y += alpha * dir.dy;
    z += alpha * dir.dz;
    s += alpha * dir.ds;
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;
  }
}

}  // namespace pdg
