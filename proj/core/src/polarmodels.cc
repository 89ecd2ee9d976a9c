/*
 * Copyright 2026 The netpass Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "netpass/polarmodels.h"

#include "netpass/errors.h"

namespace netpass {
namespace {

void CheckTau(double tau) {
  if (!(tau > 0.0)) {
    throw ParameterError("time constant tau must be positive, got " +
                         std::to_string(tau));
  }
}

std::vector<std::string> PortLabels(const std::vector<int>& ids,
                                    const char* first, const char* second) {
  std::vector<std::string> out;
  for (int id : ids) out.push_back(first + std::to_string(id));
  for (int id : ids) out.push_back(second + std::to_string(id));
  return out;
}

// Bus ids from a Y_DQ input label list ("vD:<id>" ...).
std::vector<int> IdsFromLabels(const std::vector<std::string>& labels) {
  std::vector<int> ids;
  for (size_t k = 0; k < labels.size() / 2; ++k) {
    const auto colon = labels[k].find(':');
    ids.push_back(colon == std::string::npos
                      ? static_cast<int>(k)
                      : std::stoi(labels[k].substr(colon + 1)));
  }
  return ids;
}

std::vector<int> BusIdsOf(const StateSpace& j) {
  return IdsFromLabels(j.input_labels);
}

// Appends integrator states in front of selected input channels:
// input u_k becomes x_int + tau * w_k for the channels in `mask`.
StateSpace AppendIntegrators(const StateSpace& j, const std::vector<bool>& mask,
                             double tau,
                             const std::vector<std::string>& new_inputs) {
  j.Validate();
  const int nx = j.num_states();
  const int nu = j.num_inputs();
  std::vector<int> chans;
  for (int k = 0; k < nu; ++k) {
    if (mask[k]) chans.push_back(k);
  }
  const int ni = static_cast<int>(chans.size());

  // Selection S (nu x ni): u = S x_int + diag-scaled w.
  Eigen::MatrixXd sel = Eigen::MatrixXd::Zero(nu, ni);
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(nu);
  for (int k = 0; k < ni; ++k) {
    sel(chans[k], k) = 1.0;
    scale(chans[k]) = tau;
  }

  StateSpace out;
  out.a = Eigen::MatrixXd::Zero(nx + ni, nx + ni);
  out.a.topLeftCorner(nx, nx) = j.a;
  out.a.topRightCorner(nx, ni) = j.b * sel;
  out.b = Eigen::MatrixXd::Zero(nx + ni, nu);
  out.b.topRows(nx) = j.b * scale.asDiagonal();
  out.b.bottomRows(ni) = sel.transpose();
  out.c = Eigen::MatrixXd::Zero(j.num_outputs(), nx + ni);
  out.c.leftCols(nx) = j.c;
  out.c.rightCols(ni) = j.d * sel;
  out.d = j.d * scale.asDiagonal();
  out.input_labels = new_inputs;
  out.output_labels = j.output_labels;
  out.state_meta = j.state_meta;
  for (int k = 0; k < ni; ++k) {
    const std::string label =
        chans[k] < static_cast<int>(j.input_labels.size())
            ? j.input_labels[chans[k]]
            : std::to_string(chans[k]);
    out.state_meta.push_back({StateKind::kIntegrator, 0.0, "int." + label});
  }
  out.Validate();
  return out;
}

}  // namespace

InterfaceMatrices BuildInterfaceMatrices(const OperatingPoint& op) {
  const int n = op.size();
  InterfaceMatrices m;
  m.e = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.f = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const double vd = op.vd(i);
    const double vq = op.vq(i);
    if (!(vd * vd + vq * vq > 0.0)) {
      throw DegenerateOperatingPointError(
          "bus " + std::to_string(op.bus_ids[i]) +
          " has |V| = 0; the polar interface is undefined");
    }
    const double id = op.id(i);
    const double iq = op.iq(i);
    const int d = i;
    const int q = n + i;
    m.e(d, d) = vd;
    m.e(d, q) = vq;
    m.e(q, d) = -vq;
    m.e(q, q) = vd;
    m.c(d, d) = id;
    m.c(d, q) = iq;
    m.c(q, d) = iq;
    m.c(q, q) = -id;
    m.f(d, d) = vq;
    m.f(d, q) = vd;
    m.f(q, d) = -vd;
    m.f(q, q) = vq;
  }
  return m;
}

StateSpace BuildJofS(const StateSpace& ydq, const OperatingPoint& op) {
  ydq.Validate();
  if (ydq.num_inputs() != 2 * op.size() || ydq.num_outputs() != 2 * op.size()) {
    throw DimensionError("Y_DQ ports do not match the operating point");
  }
  const InterfaceMatrices m = BuildInterfaceMatrices(op);
  StateSpace j;
  j.a = ydq.a;
  j.b = ydq.b * m.f;
  j.c = m.e * ydq.c;
  j.d = (m.e * ydq.d + m.c) * m.f;
  j.input_labels = PortLabels(op.bus_ids, "phi:", "Vn:");
  j.output_labels = PortLabels(op.bus_ids, "P:", "Q:");
  j.state_meta = ydq.state_meta;
  j.Validate();
  return j;
}

StateSpace BuildJdp(const StateSpace& j, double tau) {
  CheckTau(tau);
  const int n = j.num_inputs() / 2;
  std::vector<bool> mask(2 * n, false);
  for (int k = 0; k < n; ++k) mask[k] = true;
  return AppendIntegrators(j, mask, tau, PortLabels(BusIdsOf(j), "w:", "Vn:"));
}

StateSpace BuildJdf(const StateSpace& j, double tau) {
  CheckTau(tau);
  const int n = j.num_inputs() / 2;
  std::vector<bool> mask(2 * n, true);
  return AppendIntegrators(j, mask, tau, PortLabels(BusIdsOf(j), "w:", "Vd:"));
}

RationalLF::RationalLF(LowFrequencyKind kind, Eigen::MatrixXd jlf, double tau)
    : kind_(kind), jlf_(std::move(jlf)), tau_(tau) {
  CheckTau(tau_);
  if (jlf_.rows() != jlf_.cols() || jlf_.rows() % 2 != 0) {
    throw DimensionError("low-frequency Jacobian must be 2n x 2n");
  }
}

Eigen::MatrixXcd RationalLF::Eval(std::complex<double> s) const {
  if (s == std::complex<double>(0.0, 0.0)) {
    throw PoleError(
        "low-frequency model evaluated at its pole s = 0; use the residue");
  }
  const std::complex<double> g = (1.0 + s * tau_) / s;
  Eigen::MatrixXcd out = jlf_.cast<std::complex<double>>();
  if (kind_ == LowFrequencyKind::kNdf) return out * g;
  const Eigen::Index n = jlf_.rows() / 2;
  out.leftCols(n) *= g;
  return out;
}

RationalLF BuildNp(const JacobianLF& jlf, double tau) {
  return RationalLF(LowFrequencyKind::kNp, jlf.Full(), tau);
}

RationalLF BuildNdf(const JacobianLF& jlf, double tau) {
  return RationalLF(LowFrequencyKind::kNdf, jlf.Full(), tau);
}

Eigen::MatrixXd ResidueAtOrigin(const RationalLF& model) {
  Eigen::MatrixXd r = model.jlf();
  if (model.kind() == LowFrequencyKind::kNp) {
    r.rightCols(r.cols() / 2).setZero();
  }
  return r;
}

}  // namespace netpass
