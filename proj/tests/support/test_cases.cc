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

#include "test_cases.h"

#include <algorithm>
#include <set>
#include <utility>

#include "netpass/errors.h"

#ifndef NETPASS_FIXTURE_DIR
#define NETPASS_FIXTURE_DIR "fixtures"
#endif

namespace netpass::testing {

std::string FixturePath(const std::string& name) {
  return std::string(NETPASS_FIXTURE_DIR) + "/" + name;
}

NetworkCase Ieee9() { return LoadCase(FixturePath("ieee9.case")); }
NetworkCase TwoBus() { return LoadCase(FixturePath("two_bus.case")); }

NetworkCase RandomCase(std::mt19937_64& rng, const RandomCaseOptions& options) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  std::uniform_int_distribution<int> size_dist(options.min_buses,
                                               options.max_buses);
  for (int attempt = 0; attempt < 100; ++attempt) {
    NetworkCase net;
    const int n = size_dist(rng);
    for (int i = 0; i < n; ++i) {
      Bus b;
      b.id = i + 1;
      if (options.with_shunt_b && unit(rng) < 0.2) b.shunt_b = uniform(0.0, 0.1);
      net.buses.push_back(b);
    }
    std::set<std::pair<int, int>> used;
    auto add_branch = [&](int a, int b) {
      if (a == b || used.count({std::min(a, b), std::max(a, b)})) return;
      used.insert({std::min(a, b), std::max(a, b)});
      Branch br;
      br.from = a + 1;
      br.to = b + 1;
      br.r = uniform(0.005, 0.05);
      br.x = uniform(0.05, 0.25);
      br.b_line = options.with_shunt_b ? uniform(0.02, 0.3) : 0.0;
      if (unit(rng) < 0.2) br.ratio = uniform(0.95, 1.05);
      net.branches.push_back(br);
    };
    for (int i = 1; i < n; ++i) {
      add_branch(i, std::uniform_int_distribution<int>(0, i - 1)(rng));
    }
    const int extra = std::uniform_int_distribution<int>(0, n / 2)(rng);
    for (int k = 0; k < extra; ++k) {
      add_branch(std::uniform_int_distribution<int>(0, n - 1)(rng),
                 std::uniform_int_distribution<int>(0, n - 1)(rng));
    }

    net.injections.push_back(
        {1, InjectionKind::kSlack, 0.0, 0.0, uniform(1.0, 1.05)});
    bool has_load = false;
    for (int i = 1; i < n; ++i) {
      if (unit(rng) < 0.3) {
        net.injections.push_back({i + 1, InjectionKind::kPV,
                                  uniform(0.2, 0.8), 0.0, uniform(0.98, 1.05)});
      } else {
        net.injections.push_back({i + 1, InjectionKind::kPQ,
                                  uniform(-0.6, -0.1), uniform(-0.3, -0.05),
                                  1.0});
        has_load = true;
      }
    }
    if (!has_load) continue;
    try {
      ValidateCase(net);
      const OperatingPoint op = SolvePowerflow(net);
      if (op.vmag.minCoeff() < 0.85) continue;
    } catch (const Error&) {
      continue;
    }
    return net;
  }
  throw std::runtime_error("could not generate a solvable random case");
}

StateSpace SeriesBranchToGround(double r, double l, double omega0) {
  StateSpace ss;
  ss.a.resize(2, 2);
  ss.a << -r / l, -omega0, omega0, -r / l;
  ss.b = Eigen::MatrixXd::Identity(2, 2) / l;
  ss.c = Eigen::MatrixXd::Identity(2, 2);
  ss.d = Eigen::MatrixXd::Zero(2, 2);
  ss.input_labels = {"vD:1", "vQ:1"};
  ss.output_labels = {"iD:1", "iQ:1"};
  ss.state_meta = {{StateKind::kInductor, l, "L.iD"},
                   {StateKind::kInductor, l, "L.iQ"}};
  return ss;
}

StateSpace DoubleIntegrator() {
  StateSpace ss;
  ss.a.resize(2, 2);
  ss.a << 0.0, 1.0, 0.0, 0.0;
  ss.b.resize(2, 1);
  ss.b << 0.0, 1.0;
  ss.c.resize(1, 2);
  ss.c << 1.0, 0.0;
  ss.d = Eigen::MatrixXd::Zero(1, 1);
  ss.state_meta = {{StateKind::kIntegrator, 0.0, "x1"},
                   {StateKind::kIntegrator, 0.0, "x2"}};
  return ss;
}

Eigen::MatrixXd FiniteDifferenceJacobian(const NetworkCase& net,
                                         const OperatingPoint& op,
                                         double step) {
  const int n = op.size();
  const Eigen::MatrixXcd y = BuildYbus(net);
  Eigen::MatrixXd jac(2 * n, 2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    Eigen::VectorXd vm_p = op.vmag, vm_m = op.vmag;
    Eigen::VectorXd an_p = op.angle, an_m = op.angle;
    if (k < n) {
      an_p(k) += step;
      an_m(k) -= step;
    } else {
      // V_n = |V| / |V|_o, so a step in V_n scales |V|.
      vm_p(k - n) *= 1.0 + step;
      vm_m(k - n) *= 1.0 - step;
    }
    jac.col(k) = (NodalPowers(y, vm_p, an_p) - NodalPowers(y, vm_m, an_m)) /
                 (2.0 * step);
  }
  return jac;
}

Eigen::MatrixXd InterfaceTransform(const Eigen::MatrixXd& y_real,
                             const OperatingPoint& op) {
  const int n = op.size();
  Eigen::MatrixXd jac(2 * n, 2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    // Small-signal voltage for a unit step in phi_k or V_n,k:
    //   dvD = vQ dphi + vD dVn,  dvQ = -vD dphi + vQ dVn.
    Eigen::VectorXd dv = Eigen::VectorXd::Zero(2 * n);
    const int bus = k % n;
    if (k < n) {
      dv(bus) = op.vq(bus);
      dv(n + bus) = -op.vd(bus);
    } else {
      dv(bus) = op.vd(bus);
      dv(n + bus) = op.vq(bus);
    }
    const Eigen::VectorXd di = y_real * dv;
    for (int i = 0; i < n; ++i) {
      // P = vD iD + vQ iQ,  Q = vD iQ - vQ iD.
      jac(i, k) = op.vd(i) * di(i) + op.vq(i) * di(n + i) +
                  op.id(i) * dv(i) + op.iq(i) * dv(n + i);
      jac(n + i, k) = op.vd(i) * di(n + i) - op.vq(i) * di(i) +
                      op.iq(i) * dv(i) - op.id(i) * dv(n + i);
    }
  }
  return jac;
}

double RelativeError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1.0);
}

}  // namespace netpass::testing
