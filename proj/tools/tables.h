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


#ifndef NETPASS_TOOLS_TABLES_H_
#define NETPASS_TOOLS_TABLES_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netpass/netcase.h"
#include "netpass/passcheck.h"

namespace netpass::cli {

struct EigenTable {
  std::string name;
  std::vector<double> expected;
  Eigen::VectorXd computed;
  double max_error = 0.0;
  std::vector<int> offending;  // indices beyond tolerance
  bool pass = false;
};

struct GridCell {
  ModelKind model;
  Analysis analysis;
  VariantFlags variant;
  Verdict expected;
  Verdict computed = Verdict::kNonPassive;
  bool pass = false;
};

struct TablesReport {
  std::vector<EigenTable> eigen_tables;
  std::vector<GridCell> grid;
  double tolerance = 0.05;
  double min_uniform_kqv = 0.0;
  bool pass() const;
};

// Regulation used by the published modified cases: 0.65 pu at buses
// 1, 2, 3, 5, 6, 8.
std::vector<QvContribution> PublishedRegulation();

// Expected grid for the 9-bus system (32 cells).
std::vector<GridCell> ExpectedGrid();

// Reproduces the eigenvalue lists and the verdict grid for the nine-bus
// fixture. The lossless lists are evaluated with the lossless network held
// at the lossy operating point.
TablesReport ReproduceTables(const NetworkCase& ieee9, double tolerance,
                             const ClassifyOptions& options = {});

std::string TablesToText(const TablesReport& r);
std::string TablesToJson(const TablesReport& r);

}  // namespace netpass::cli

#endif  // NETPASS_TOOLS_TABLES_H_
