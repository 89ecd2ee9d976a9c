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

#include "netpass/dqstamp.h"

#include <map>

#include "netpass/errors.h"

namespace netpass {

YdqBuilder::YdqBuilder(std::vector<int> bus_ids, double omega0)
    : bus_ids_(std::move(bus_ids)), omega0_(omega0) {
  if (!(omega0_ > 0.0)) throw ParameterError("omega0 must be positive");
  const int n = static_cast<int>(bus_ids_.size());
  conductance_ = Eigen::MatrixXd::Zero(n, n);
}

void YdqBuilder::CheckNode(int node) const {
  if (node != kGround &&
      (node < 0 || node >= static_cast<int>(bus_ids_.size()))) {
    throw DimensionError("node index " + std::to_string(node) +
                         " out of range");
  }
}

void YdqBuilder::AddSeriesBranch(int from, int to, double r, double x,
                                 double ratio, std::string label) {
  CheckNode(from);
  CheckNode(to);
  if (from == to) throw ValidationError("series branch with both ends equal");
  if (r < 0.0 || x < 0.0) {
    throw ValidationError("series branch needs r >= 0 and x >= 0");
  }
  if (!(ratio > 0.0)) throw ValidationError("tap ratio must be positive");
  if (x == 0.0) {
    if (!(r > 0.0)) throw ValidationError("series branch has zero impedance");
    const double g = 1.0 / r;
    // Current r^-1 (v_f / a - v_t), injected as i / a at from and -i at to.
    if (from != kGround) conductance_(from, from) += g / (ratio * ratio);
    if (to != kGround) conductance_(to, to) += g;
    if (from != kGround && to != kGround) {
      conductance_(from, to) -= g / ratio;
      conductance_(to, from) -= g / ratio;
    }
    return;
  }
  inductors_.push_back({from, to, r, x / omega0_, ratio, std::move(label)});
}

void YdqBuilder::AddShuntCapacitor(int bus, double b, double r_series,
                                   std::string label) {
  CheckNode(bus);
  if (bus == kGround) throw ValidationError("capacitor needs a bus");
  if (!(b > 0.0)) throw ValidationError("capacitor susceptance must be > 0");
  if (!(r_series > 0.0)) {
    throw ProprietyError(
        "shunt capacitor without series resistance: the network impedance "
        "is improper and Y_DQ has no state-space realization");
  }
  capacitors_.push_back({bus, b / omega0_, r_series, std::move(label)});
}

void YdqBuilder::AddShuntInductor(int bus, double b_abs, double r,
                                  std::string label) {
  if (!(b_abs > 0.0)) throw ValidationError("reactor susceptance must be > 0");
  AddSeriesBranch(bus, kGround, r, 1.0 / b_abs, 1.0, std::move(label));
}

void YdqBuilder::AddShuntConductance(int bus, double g) {
  CheckNode(bus);
  if (g < 0.0) throw ValidationError("shunt conductance must be >= 0");
  conductance_(bus, bus) += g;
}

StateSpace YdqBuilder::Build() const {
  const int n = static_cast<int>(bus_ids_.size());
  const int nl = static_cast<int>(inductors_.size());
  const int nc = static_cast<int>(capacitors_.size());
  const int nx = 2 * (nl + nc);

  StateSpace ss;
  ss.a = Eigen::MatrixXd::Zero(nx, nx);
  ss.b = Eigen::MatrixXd::Zero(nx, 2 * n);
  ss.c = Eigen::MatrixXd::Zero(2 * n, nx);
  ss.d = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  ss.d.topLeftCorner(n, n) = conductance_;
  ss.d.bottomRightCorner(n, n) = conductance_;

  // Axis offsets: D block rows/cols [0, n), Q block [n, 2n).
  auto port = [n](int node, int axis) { return node + axis * n; };

  int k = 0;
  for (const InductorStamp& e : inductors_) {
    const int sd = k;
    const int sq = k + 1;
    // L di/dt = u - R i + omega0 L J i with J = [[0, -1], [1, 0]].
    ss.a(sd, sd) = -e.r / e.l;
    ss.a(sq, sq) = -e.r / e.l;
    ss.a(sd, sq) = -omega0_;
    ss.a(sq, sd) = omega0_;
    for (int axis = 0; axis < 2; ++axis) {
      const int s = k + axis;
      if (e.from != YdqBuilder::kGround) {
        ss.b(s, port(e.from, axis)) += 1.0 / (e.ratio * e.l);
        ss.c(port(e.from, axis), s) += 1.0 / e.ratio;
      }
      if (e.to != YdqBuilder::kGround) {
        ss.b(s, port(e.to, axis)) -= 1.0 / e.l;
        ss.c(port(e.to, axis), s) -= 1.0;
      }
    }
    const std::string base =
        e.label.empty() ? "L" + std::to_string(k / 2) : e.label;
    ss.state_meta.push_back({StateKind::kInductor, e.l, base + ".iD"});
    ss.state_meta.push_back({StateKind::kInductor, e.l, base + ".iQ"});
    k += 2;
  }
  for (const CapacitorStamp& e : capacitors_) {
    const int sd = k;
    const int sq = k + 1;
    // C dvc/dt = (v - vc) / r + omega0 C J vc.
    const double rc = 1.0 / (e.r * e.c);
    ss.a(sd, sd) = -rc;
    ss.a(sq, sq) = -rc;
    ss.a(sd, sq) = -omega0_;
    ss.a(sq, sd) = omega0_;
    for (int axis = 0; axis < 2; ++axis) {
      const int s = k + axis;
      const int p = port(e.bus, axis);
      ss.b(s, p) += rc;
      ss.c(p, s) -= 1.0 / e.r;
      ss.d(p, p) += 1.0 / e.r;
    }
    const std::string base =
        e.label.empty() ? "C" + std::to_string(k / 2) : e.label;
    ss.state_meta.push_back({StateKind::kCapacitor, e.c, base + ".vD"});
    ss.state_meta.push_back({StateKind::kCapacitor, e.c, base + ".vQ"});
    k += 2;
  }

  for (int axis = 0; axis < 2; ++axis) {
    const char* v = axis == 0 ? "vD:" : "vQ:";
    const char* i = axis == 0 ? "iD:" : "iQ:";
    for (int bus : bus_ids_) {
      ss.input_labels.push_back(v + std::to_string(bus));
      ss.output_labels.push_back(i + std::to_string(bus));
    }
  }
  ss.Validate();
  return ss;
}

StateSpace AssembleYdq(const NetworkCase& net, const ParasiticConfig& par) {
  if (par.r_series_cap < 0.0 || par.g_shunt_bus < 0.0 ||
      par.r_series_branch_min < 0.0) {
    throw ParameterError("parasitic values must be non-negative");
  }
  ValidateCase(net);
  std::vector<int> ids;
  ids.reserve(net.buses.size());
  for (const Bus& b : net.buses) ids.push_back(b.id);
  YdqBuilder builder(ids, net.system.omega0);

  for (const Branch& br : net.branches) {
    builder.AddSeriesBranch(net.BusIndex(br.from), net.BusIndex(br.to),
                            std::max(br.r, par.r_series_branch_min), br.x,
                            br.ratio,
                            "br" + std::to_string(br.from) + "-" +
                                std::to_string(br.to));
  }

  std::vector<double> charging(net.buses.size(), 0.0);
  for (const Branch& br : net.branches) {
    charging[net.BusIndex(br.from)] += 0.5 * br.b_line;
    charging[net.BusIndex(br.to)] += 0.5 * br.b_line;
  }
  for (int i = 0; i < net.num_buses(); ++i) {
    const Bus& bus = net.buses[i];
    double cap = charging[i];
    if (bus.shunt_b > 0.0) cap += bus.shunt_b;
    if (cap > 0.0) {
      if (!(par.r_series_cap > 0.0)) {
        throw ProprietyError(
            "bus " + std::to_string(bus.id) +
            " has shunt capacitance but r_series_cap is 0: the network "
            "impedance is improper, so Y_DQ has no state-space realization");
      }
      builder.AddShuntCapacitor(i, cap, par.r_series_cap,
                                "cap" + std::to_string(bus.id));
    }
    if (bus.shunt_b < 0.0) {
      builder.AddShuntInductor(i, -bus.shunt_b, par.r_series_branch_min,
                               "reactor" + std::to_string(bus.id));
    }
    const double g = bus.shunt_g + par.g_shunt_bus;
    if (g > 0.0) builder.AddShuntConductance(i, g);
  }
  return builder.Build();
}

double StorageEnergy(const Eigen::VectorXd& x,
                     const std::vector<StateMeta>& meta) {
  if (static_cast<size_t>(x.size()) != meta.size()) {
    throw DimensionError("state vector has " + std::to_string(x.size()) +
                         " entries but metadata describes " +
                         std::to_string(meta.size()));
  }
  return 0.5 * (StorageWeights(meta).array() * x.array().square()).sum();
}

Eigen::VectorXd StorageWeights(const std::vector<StateMeta>& meta) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(meta.size()));
  for (size_t i = 0; i < meta.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) =
        meta[i].kind == StateKind::kIntegrator ? 0.0 : meta[i].storage;
  }
  return w;
}

}  // namespace netpass
