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


#include "pdg/cone_program.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pdg {

int ConeDims::rows() const { return linear + std::accumulate(soc.begin(), soc.end(), 0); }

int ConeDims::degree() const { return linear + int(soc.size()); }

void ConeProgram::Validate() const {
  const auto n = c.size();
  if (A.cols() != n || G.cols() != n) throw std::invalid_argument("ConeProgram: column mismatch");
  if (A.rows() != b.size()) throw std::invalid_argument("ConeProgram: A/b mismatch");
  if (G.rows() != h.size()) throw std::invalid_argument("ConeProgram: G/h mismatch");
  if (cones.rows() != G.rows()) throw std::invalid_argument("ConeProgram: cone dims mismatch");
  for (int d : cones.soc) {
    if (d < 2) throw std::invalid_argument("ConeProgram: second-order cone of dimension < 2");
  }
}

namespace cone {
namespace {

double SocDet(const Eigen::Ref<const Eigen::VectorXd>& x) {
  return x(0) * x(0) - x.tail(x.size() - 1).squaredNorm();
}

// Smallest positive root of a*t^2 + 2*b*t + c (c > 0), +inf if none.
double SmallestPositiveRoot(double a, double b, double c) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (std::abs(a) < 1e-300) {
    return b < 0.0 ? -c / (2.0 * b) : kInf;
  }
  const double disc = b * b - a * c;
  if (disc < 0.0) return kInf;
  const double sq = std::sqrt(disc);
  const double q = -(b + std::copysign(sq, b));
  double best = kInf;
  for (double r : {q / a, q != 0.0 ? c / q : kInf}) {
    if (r > 0.0) best = std::min(best, r);
  }
  return best;
}

}  // namespace

Eigen::VectorXd Product(const ConeDims& dims, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  Eigen::VectorXd w(u.size());
  w.head(dims.linear) = u.head(dims.linear).cwiseProduct(v.head(dims.linear));
  int off = dims.linear;
  for (int d : dims.soc) {
    const auto us = u.segment(off, d);
    const auto vs = v.segment(off, d);
    w(off) = us.dot(vs);
    w.segment(off + 1, d - 1) = us(0) * vs.tail(d - 1) + vs(0) * us.tail(d - 1);
    off += d;
  }
  return w;
}

Eigen::VectorXd InverseProduct(const ConeDims& dims, const Eigen::VectorXd& lambda,
                               const Eigen::VectorXd& r) {
  Eigen::VectorXd x(r.size());
  x.head(dims.linear) = r.head(dims.linear).cwiseQuotient(lambda.head(dims.linear));
  int off = dims.linear;
  for (int d : dims.soc) {
    const auto l = lambda.segment(off, d);
    const auto rs = r.segment(off, d);
    const double det = SocDet(l);
    const double x0 = (l(0) * rs(0) - l.tail(d - 1).dot(rs.tail(d - 1))) / det;
    x(off) = x0;
    x.segment(off + 1, d - 1) = (rs.tail(d - 1) - x0 * l.tail(d - 1)) / l(0);
    off += d;
  }
  return x;
}

Eigen::VectorXd Identity(const ConeDims& dims) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dims.rows());
  e.head(dims.linear).setOnes();
  int off = dims.linear;
  for (int d : dims.soc) {
    e(off) = 1.0;
    off += d;
  }
  return e;
}

double MaxEigenvalueShift(const ConeDims& dims, const Eigen::VectorXd& x) {
  double shift = -std::numeric_limits<double>::infinity();
  if (dims.linear > 0) shift = -x.head(dims.linear).minCoeff();
  int off = dims.linear;
  for (int d : dims.soc) {
    shift = std::max(shift, x.segment(off + 1, d - 1).norm() - x(off));
    off += d;
  }
  return shift;
}

double MaxStep(const ConeDims& dims, const Eigen::VectorXd& x, const Eigen::VectorXd& d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dims.linear; ++i) {
    if (d(i) < 0.0) alpha = std::min(alpha, -x(i) / d(i));
  }
  int off = dims.linear;
  for (int k : dims.soc) {
    const auto xs = x.segment(off, k);
    const auto ds = d.segment(off, k);
    const double a = SocDet(ds);
    const double b = xs(0) * ds(0) - xs.tail(k - 1).dot(ds.tail(k - 1));
    const double c = std::max(SocDet(xs), 0.0);
    alpha = std::min(alpha, SmallestPositiveRoot(a, b, c));
    // The linear part of the cone boundary (x0 + alpha d0 >= 0).
    if (ds(0) < 0.0) alpha = std::min(alpha, -xs(0) / ds(0));
    off += k;
  }
  return alpha;
}

NtScaling ComputeNtScaling(const ConeDims& dims, const Eigen::VectorXd& s,
                           const Eigen::VectorXd& z) {
  NtScaling w;
  w.linear = s.head(dims.linear).cwiseQuotient(z.head(dims.linear)).cwiseSqrt();
  int off = dims.linear;
  for (int d : dims.soc) {
    const Eigen::VectorXd ss = s.segment(off, d);
    const Eigen::VectorXd zs = z.segment(off, d);
    const double s_det = std::max(SocDet(ss), 1e-300);
    const double z_det = std::max(SocDet(zs), 1e-300);
    const Eigen::VectorXd s_bar = ss / std::sqrt(s_det);
    const Eigen::VectorXd z_bar = zs / std::sqrt(z_det);
    const double gamma = std::sqrt(std::max((1.0 + s_bar.dot(z_bar)) / 2.0, 1e-300));
    Eigen::VectorXd w_bar = s_bar;
    w_bar(0) += z_bar(0);
    w_bar.tail(d - 1) -= z_bar.tail(d - 1);
    w_bar /= 2.0 * gamma;
    const double beta = std::pow(s_det / z_det, 0.25);

    // Hyperbolic rotation H(w) and its inverse H(Jw).
    auto hyperbolic = [d](double w0, const Eigen::VectorXd& w1) {
      Eigen::MatrixXd m(d, d);
      m(0, 0) = w0;
      m.block(0, 1, 1, d - 1) = w1.transpose();
      m.block(1, 0, d - 1, 1) = w1;
      m.block(1, 1, d - 1, d - 1) =
          Eigen::MatrixXd::Identity(d - 1, d - 1) + w1 * w1.transpose() / (1.0 + w0);
      return m;
    };
    const Eigen::VectorXd w1 = w_bar.tail(d - 1);
    w.soc.push_back(beta * hyperbolic(w_bar(0), w1));
    w.soc_inverse.push_back(hyperbolic(w_bar(0), -w1) / beta);
    off += d;
  }
  return w;
}

Eigen::VectorXd NtScaling::Apply(const ConeDims& dims, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out(v.size());
  out.head(dims.linear) = linear.cwiseProduct(v.head(dims.linear));
  int off = dims.linear;
  for (std::size_t i = 0; i < dims.soc.size(); ++i) {
    const int d = dims.soc[i];
    out.segment(off, d) = soc[i] * v.segment(off, d);
    off += d;
  }
  return out;
}

Eigen::VectorXd NtScaling::ApplyInverse(const ConeDims& dims, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out(v.size());
  out.head(dims.linear) = v.head(dims.linear).cwiseQuotient(linear);
  int off = dims.linear;
  for (std::size_t i = 0; i < dims.soc.size(); ++i) {
    const int d = dims.soc[i];
    out.segment(off, d) = soc_inverse[i] * v.segment(off, d);
    off += d;
  }
  return out;
}

}  // namespace cone
}  // namespace pdg
