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


#ifndef NETPASS_TESTS_SUPPORT_TEST_CASES_H_
#define NETPASS_TESTS_SUPPORT_TEST_CASES_H_

#include <random>
#include <string>

#include <Eigen/Dense>

#include "netpass/netcase.h"
#include "netpass/powerflow.h"
#include "netpass/statespace.h"

namespace netpass::testing {

std::string FixturePath(const std::string& name);
NetworkCase Ieee9();
NetworkCase TwoBus();

struct RandomCaseOptions {
  int min_buses = 3;
  int max_buses = 8;
  bool with_shunt_b = true;
};

// Connected R-L-C network with strictly positive R, X and charging, one slack,
// a few PV generators and PQ loads with non-zero Q. Retries until the power
// flow converges, so the returned case always solves.
NetworkCase RandomCase(std::mt19937_64& rng,
                       const RandomCaseOptions& options = {});

// One series R-L branch from a single port to ground, R may be negative.
StateSpace SeriesBranchToGround(double r, double l, double omega0);

// 1/s^2 in companion form.
StateSpace DoubleIntegrator();

// Central finite differences of the nodal power equations with respect to
// (phi, V_n) at the operating point.
Eigen::MatrixXd FiniteDifferenceJacobian(const NetworkCase& net,
                                         const OperatingPoint& op,
                                         double step = 1e-6);

// (E Y + C) F written out entry by entry from the per-bus formulas, for use
// as an oracle against the library's matrix construction.
Eigen::MatrixXd InterfaceTransform(const Eigen::MatrixXd& y_real,
                             const OperatingPoint& op);

// ||a - b|| / max(||b||, 1).
double RelativeError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace netpass::testing

#endif  // NETPASS_TESTS_SUPPORT_TEST_CASES_H_
