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


#ifndef NETPASS_POWERFLOW_H_
#define NETPASS_POWERFLOW_H_

#include <vector>

#include <Eigen/Dense>

#include "netpass/netcase.h"

namespace netpass {

// Quiescent bus quantities. The phasor is V = v_Q + j v_D = |V| e^{j phi},
// so v_D = |V| sin(phi) and v_Q = |V| cos(phi). Currents are injections into
// the network.
struct OperatingPoint {
  std::vector<int> bus_ids;
  Eigen::VectorXd vd, vq;
  Eigen::VectorXd id, iq;
  Eigen::VectorXd vmag, angle;
  Eigen::VectorXd p, q;
  int iterations = 0;
  double mismatch = 0.0;

  int size() const { return static_cast<int>(bus_ids.size()); }
  Eigen::VectorXcd Voltage() const;  // v_Q + j v_D
  Eigen::VectorXcd Current() const;  // i_Q + j i_D
};

struct PowerflowOptions {
  int max_iterations = 50;
  double tolerance = 1e-8;  // max abs power mismatch, pu
};

// Nodal admittance at omega0. Taps divide the from-side voltage; line
// charging is split half to each terminal bus.
Eigen::MatrixXcd BuildYbus(const NetworkCase& net);

// Real form [[G, B], [-B, G]] acting on (v_D, v_Q) stacked D then Q.
Eigen::MatrixXd RealAdmittance(const Eigen::MatrixXcd& ybus);

// [P; Q] injected at every bus for the given polar voltages.
Eigen::VectorXd NodalPowers(const Eigen::MatrixXcd& ybus,
                            const Eigen::VectorXd& vmag,
                            const Eigen::VectorXd& angle);

// Builds a complete operating point from bus voltages (currents from Ybus).
OperatingPoint OperatingPointFromVoltages(const NetworkCase& net,
                                          const Eigen::VectorXcd& v);

// Newton-Raphson from a flat start. Throws ConvergenceError or
// SingularityError.
OperatingPoint SolvePowerflow(const NetworkCase& net,
                              const PowerflowOptions& options = {});

// Unreduced load-flow Jacobian over all buses; columns are (phi, V_n) with
// V_n = |V| / |V|_o, rows are (P, Q).
struct JacobianLF {
  std::vector<int> bus_ids;
  Eigen::MatrixXd j11, j12, j21, j22;

  int size() const { return static_cast<int>(bus_ids.size()); }
  Eigen::MatrixXd Full() const;
  Eigen::MatrixXd Symmetrized() const;  // J + J'
  static JacobianLF FromFull(std::vector<int> bus_ids,
                             const Eigen::MatrixXd& full);
};

// Analytic polar Jacobian. Throws ConsistencyError when `op` does not solve
// the network equations of `net` within 1e-6.
JacobianLF BuildJlfAnalytic(const NetworkCase& net, const OperatingPoint& op);

// (E Y(0) + C) F with the network of `net` and the bus voltages and currents
// of `op` held fixed, without requiring them to be consistent. Used to
// evaluate a modified network at another network's operating point.
JacobianLF BuildJlfAtHeldPoint(const NetworkCase& net,
                               const OperatingPoint& op);

JacobianLF Decouple(const JacobianLF& j);

// Decouples when the flag is set; the other flags act on the case instead.
JacobianLF ApplyJacobianFlags(const JacobianLF& j, const VariantFlags& flags);

}  // namespace netpass

#endif  // NETPASS_POWERFLOW_H_
