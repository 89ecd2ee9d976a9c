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

#include "netpass/powerflow.h"

#include <cmath>
#include <sstream>

#include "netpass/errors.h"

namespace netpass {
namespace {

using cd = std::complex<double>;

enum class BusType { kSlack, kPV, kPQ };

struct BusSpec {
  BusType type = BusType::kPQ;
  double p = 0.0;
  double q = 0.0;
  double vset = 1.0;
  bool has_injection = false;
};

std::vector<BusSpec> CollectSpecs(const NetworkCase& net) {
  std::vector<BusSpec> specs(net.buses.size());
  for (const Injection& inj : net.injections) {
    BusSpec& s = specs[net.BusIndex(inj.bus)];
    s.p += inj.p;
    s.q += inj.q;
    if (inj.p != 0.0 || inj.q != 0.0 || inj.kind != InjectionKind::kPQ) {
      s.has_injection = true;
    }
    if (inj.kind == InjectionKind::kSlack) {
      s.type = BusType::kSlack;
      s.vset = inj.vset;
    } else if (inj.kind == InjectionKind::kPV && s.type != BusType::kSlack) {
      s.type = BusType::kPV;
      s.vset = inj.vset;
    }
  }
  return specs;
}

// Polar Jacobian blocks with diagonal terms built from the injections `s`.
// With M = diag(V) conj(Y) diag(conj V):
//   dS/dphi = j (diag(S) - M),  dS/dV_n = M + diag(S).
JacobianLF PolarJacobian(std::vector<int> bus_ids, const Eigen::MatrixXcd& y,
                         const Eigen::VectorXcd& v, const Eigen::VectorXcd& s) {
  const Eigen::MatrixXcd m =
      v.asDiagonal() * y.conjugate() * v.conjugate().asDiagonal();
  Eigen::MatrixXcd ds_dphi = -m;
  ds_dphi.diagonal() += s;
  ds_dphi *= cd(0.0, 1.0);
  Eigen::MatrixXcd ds_dvn = m;
  ds_dvn.diagonal() += s;

  JacobianLF j;
  j.bus_ids = std::move(bus_ids);
  j.j11 = ds_dphi.real();
  j.j12 = ds_dvn.real();
  j.j21 = ds_dphi.imag();
  j.j22 = ds_dvn.imag();
  return j;
}

std::vector<int> BusIds(const NetworkCase& net) {
  std::vector<int> ids;
  for (const Bus& b : net.buses) ids.push_back(b.id);
  return ids;
}

void CheckOperatingPoint(const NetworkCase& net, const OperatingPoint& op) {
  if (op.size() != net.num_buses() || op.bus_ids != BusIds(net)) {
    throw DimensionError("operating point bus list does not match the case");
  }
  for (int i = 0; i < op.size(); ++i) {
    if (!(op.vmag(i) > 0.0)) {
      throw DegenerateOperatingPointError(
          "bus " + std::to_string(op.bus_ids[i]) + " has |V| = 0");
    }
  }
}

}  // namespace

Eigen::VectorXcd OperatingPoint::Voltage() const {
  Eigen::VectorXcd v(size());
  for (int i = 0; i < size(); ++i) v(i) = cd(vq(i), vd(i));
  return v;
}

Eigen::VectorXcd OperatingPoint::Current() const {
  Eigen::VectorXcd c(size());
  for (int i = 0; i < size(); ++i) c(i) = cd(iq(i), id(i));
  return c;
}

Eigen::MatrixXcd BuildYbus(const NetworkCase& net) {
  const int n = net.num_buses();
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  for (const Branch& br : net.branches) {
    const int f = net.BusIndex(br.from);
    const int t = net.BusIndex(br.to);
    const cd ys = 1.0 / cd(br.r, br.x);
    const double a = br.ratio;
    y(f, f) += ys / (a * a) + cd(0.0, 0.5 * br.b_line);
    y(t, t) += ys + cd(0.0, 0.5 * br.b_line);
    y(f, t) -= ys / a;
    y(t, f) -= ys / a;
  }
  for (int i = 0; i < n; ++i) {
    y(i, i) += cd(net.buses[i].shunt_g, net.buses[i].shunt_b);
  }
  return y;
}

Eigen::MatrixXd RealAdmittance(const Eigen::MatrixXcd& ybus) {
  const Eigen::Index n = ybus.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out << ybus.real(), ybus.imag(), -ybus.imag(), ybus.real();
  return out;
}

Eigen::VectorXd NodalPowers(const Eigen::MatrixXcd& ybus,
                            const Eigen::VectorXd& vmag,
                            const Eigen::VectorXd& angle) {
  const Eigen::Index n = vmag.size();
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = std::polar(vmag(i), angle(i));
  const Eigen::VectorXcd s =
      v.cwiseProduct((ybus * v).conjugate());
  Eigen::VectorXd out(2 * n);
  out << s.real(), s.imag();
  return out;
}

OperatingPoint OperatingPointFromVoltages(const NetworkCase& net,
                                          const Eigen::VectorXcd& v) {
  const int n = net.num_buses();
  if (v.size() != n) {
    throw DimensionError("voltage vector length differs from bus count");
  }
  const Eigen::VectorXcd cur = BuildYbus(net) * v;
  OperatingPoint op;
  op.bus_ids = BusIds(net);
  op.vd = v.imag();
  op.vq = v.real();
  op.id = cur.imag();
  op.iq = cur.real();
  op.vmag = v.cwiseAbs();
  op.angle.resize(n);
  for (int i = 0; i < n; ++i) op.angle(i) = std::arg(v(i));
  op.p = op.vd.cwiseProduct(op.id) + op.vq.cwiseProduct(op.iq);
  op.q = op.vd.cwiseProduct(op.iq) - op.vq.cwiseProduct(op.id);
  return op;
}

OperatingPoint SolvePowerflow(const NetworkCase& net,
                              const PowerflowOptions& options) {
  ValidateCase(net);
  const int n = net.num_buses();
  const std::vector<BusSpec> specs = CollectSpecs(net);
  const Eigen::MatrixXcd y = BuildYbus(net);

  std::vector<int> angle_idx;  // non-slack buses
  std::vector<int> mag_idx;    // PQ buses
  Eigen::VectorXd vmag = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd angle = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd p_spec(n), q_spec(n);
  for (int i = 0; i < n; ++i) {
    p_spec(i) = specs[i].p;
    q_spec(i) = specs[i].q;
    if (specs[i].type != BusType::kPQ) vmag(i) = specs[i].vset;
    if (specs[i].type != BusType::kSlack) angle_idx.push_back(i);
    if (specs[i].type == BusType::kPQ) mag_idx.push_back(i);
  }
  const int na = static_cast<int>(angle_idx.size());
  const int nm = static_cast<int>(mag_idx.size());

  auto mismatch_vector = [&]() {
    const Eigen::VectorXd pq = NodalPowers(y, vmag, angle);
    Eigen::VectorXd f(na + nm);
    for (int k = 0; k < na; ++k) {
      f(k) = pq(angle_idx[k]) - p_spec(angle_idx[k]);
    }
    for (int k = 0; k < nm; ++k) {
      f(na + k) = pq(n + mag_idx[k]) - q_spec(mag_idx[k]);
    }
    return f;
  };

  int iter = 0;
  Eigen::VectorXd f = mismatch_vector();
  double norm = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  while (norm >= options.tolerance) {
    if (!std::isfinite(norm) || iter >= options.max_iterations) {
      std::ostringstream msg;
      msg << "power flow did not converge after " << iter
          << " iterations (max mismatch " << norm << " pu)";
      throw ConvergenceError(msg.str(), iter, norm);
    }
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::polar(vmag(i), angle(i));
    const Eigen::VectorXcd s = v.cwiseProduct((y * v).conjugate());
    const Eigen::MatrixXd full = PolarJacobian({}, y, v, s).Full();
    Eigen::MatrixXd jr(na + nm, na + nm);
    std::vector<int> rows;
    for (int k : angle_idx) rows.push_back(k);
    for (int k : mag_idx) rows.push_back(n + k);
    for (int r = 0; r < na + nm; ++r) {
      for (int c = 0; c < na + nm; ++c) jr(r, c) = full(rows[r], rows[c]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jr);
    if (!lu.isInvertible()) {
      throw SingularityError("power-flow Jacobian is singular at iteration " +
                             std::to_string(iter));
    }
    const Eigen::VectorXd dx = lu.solve(-f);
    for (int k = 0; k < na; ++k) angle(angle_idx[k]) += dx(k);
    for (int k = 0; k < nm; ++k) vmag(mag_idx[k]) *= 1.0 + dx(na + k);
    ++iter;
    f = mismatch_vector();
    norm = f.cwiseAbs().maxCoeff();
  }

  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = std::polar(vmag(i), angle(i));
  OperatingPoint op = OperatingPointFromVoltages(net, v);
  op.vmag = vmag;
  op.angle = angle;
  for (int i = 0; i < n; ++i) {
    if (!specs[i].has_injection) {
      op.id(i) = 0.0;
      op.iq(i) = 0.0;
      op.p(i) = 0.0;
      op.q(i) = 0.0;
    }
  }
  op.iterations = iter;
  op.mismatch = norm;
  return op;
}

Eigen::MatrixXd JacobianLF::Full() const {
  const Eigen::Index n = j11.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out << j11, j12, j21, j22;
  return out;
}

Eigen::MatrixXd JacobianLF::Symmetrized() const {
  const Eigen::MatrixXd f = Full();
  return f + f.transpose();
}

JacobianLF JacobianLF::FromFull(std::vector<int> bus_ids,
                                const Eigen::MatrixXd& full) {
  const Eigen::Index n = full.rows() / 2;
  if (full.rows() != 2 * n || full.cols() != 2 * n ||
      static_cast<Eigen::Index>(bus_ids.size()) != n) {
    throw DimensionError("Jacobian must be 2n x 2n for n buses");
  }
  JacobianLF j;
  j.bus_ids = std::move(bus_ids);
  j.j11 = full.topLeftCorner(n, n);
  j.j12 = full.topRightCorner(n, n);
  j.j21 = full.bottomLeftCorner(n, n);
  j.j22 = full.bottomRightCorner(n, n);
  return j;
}

JacobianLF BuildJlfAnalytic(const NetworkCase& net, const OperatingPoint& op) {
  CheckOperatingPoint(net, op);
  const Eigen::MatrixXcd y = BuildYbus(net);
  const Eigen::VectorXcd v = op.Voltage();
  const Eigen::VectorXcd s_net = v.cwiseProduct((y * v).conjugate());
  Eigen::VectorXcd s_op(op.size());
  for (int i = 0; i < op.size(); ++i) s_op(i) = cd(op.p(i), op.q(i));
  const double worst = (s_net - s_op).cwiseAbs().maxCoeff();
  if (worst > 1e-6) {
    std::ostringstream msg;
    msg << "operating point does not solve the network equations (max power "
           "mismatch "
        << worst << " pu)";
    throw ConsistencyError(msg.str());
  }
  return PolarJacobian(op.bus_ids, y, v, s_op);
}

JacobianLF BuildJlfAtHeldPoint(const NetworkCase& net,
                               const OperatingPoint& op) {
  CheckOperatingPoint(net, op);
  const Eigen::VectorXcd v = op.Voltage();
  const Eigen::VectorXcd s = v.cwiseProduct(op.Current().conjugate());
  return PolarJacobian(op.bus_ids, BuildYbus(net), v, s);
}

JacobianLF Decouple(const JacobianLF& j) {
  JacobianLF out = j;
  out.j12.setZero();
  out.j21.setZero();
  return out;
}

JacobianLF ApplyJacobianFlags(const JacobianLF& j, const VariantFlags& flags) {
  return flags.decoupled ? Decouple(j) : j;
}

}  // namespace netpass
