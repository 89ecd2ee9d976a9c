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


#ifndef NETPASS_REPORT_H_
#define NETPASS_REPORT_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netpass/passcheck.h"
#include "netpass/powerflow.h"

namespace netpass {

// Verdict document with all numeric evidence. Keys are stable; the sweep
// points are left to SweepToCsv.
std::string VerdictToJson(const PassivityVerdict& v, int indent = 2);
std::string OperatingPointToJson(const OperatingPoint& op, int indent = 2);

std::string SweepToCsv(const std::vector<SweepPoint>& points);
std::string EigenvaluesToCsv(const Eigen::VectorXd& values);
std::string MatrixToCsv(const Eigen::MatrixXd& m);
std::string OperatingPointToCsv(const OperatingPoint& op);

}  // namespace netpass

#endif  // NETPASS_REPORT_H_
