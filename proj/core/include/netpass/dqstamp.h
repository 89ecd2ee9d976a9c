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


#ifndef NETPASS_DQSTAMP_H_
#define NETPASS_DQSTAMP_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netpass/netcase.h"
#include "netpass/statespace.h"

namespace netpass {

// Parasitic elements that keep the network admittance proper.
struct ParasiticConfig {
  double r_series_cap = 1e-4;  // pu, in series with every shunt capacitor
  double g_shunt_bus = 0.0;    // pu, added at every bus
  // Lower bound applied to every series branch resistance. Zero keeps the
  // case data verbatim (lossless transformers then have poles at +-j omega0).
  double r_series_branch_min = 0.0;
};

// Stamps D-Q elements into a Y_DQ state-space model. Bus positions are
// indices into the port list given at construction; kGround marks the
// reference node.
class YdqBuilder {
 public:
  static constexpr int kGround = -1;

  YdqBuilder(std::vector<int> bus_ids, double omega0);

  // Series R + jX (X = omega0 L). X = 0 gives a plain conductance. The tap
  // `ratio` divides the `from` side voltage.
  void AddSeriesBranch(int from, int to, double r, double x,
                       double ratio = 1.0, std::string label = {});
  // Shunt susceptance B = omega0 C behind `r_series`; r_series must be > 0.
  void AddShuntCapacitor(int bus, double b, double r_series,
                         std::string label = {});
  // Shunt reactor with susceptance -b_abs (b_abs > 0) and series resistance r.
  void AddShuntInductor(int bus, double b_abs, double r,
                        std::string label = {});
  void AddShuntConductance(int bus, double g);

  StateSpace Build() const;

 private:
  struct InductorStamp {
    int from;
    int to;
    double r;
    double l;
    double ratio;
    std::string label;
  };
  struct CapacitorStamp {
    int bus;
    double c;
    double r;
    std::string label;
  };

  void CheckNode(int node) const;

  std::vector<int> bus_ids_;
  double omega0_;
  Eigen::MatrixXd conductance_;  // static feedthrough, n x n per axis
  std::vector<InductorStamp> inductors_;
  std::vector<CapacitorStamp> capacitors_;
};

// Y_DQ(s) of the case: inputs (v_D, v_Q) at every bus stacked D block then Q
// block, outputs the matching current injections into the network. Line
// charging and positive bus susceptance become capacitors behind
// par.r_series_cap; negative bus susceptance becomes a reactor.
StateSpace AssembleYdq(const NetworkCase& net, const ParasiticConfig& par = {});

// 1/2 sum L i^2 + 1/2 sum C v^2 over the physical states.
double StorageEnergy(const Eigen::VectorXd& x,
                     const std::vector<StateMeta>& meta);

// Diagonal M with S(x) = 1/2 x' M x (zero for integrator states).
Eigen::VectorXd StorageWeights(const std::vector<StateMeta>& meta);

}  // namespace netpass

#endif  // NETPASS_DQSTAMP_H_
