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

#include "tables.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "netpass/linalg.h"
#include "netpass/passivate.h"
#include "netpass/powerflow.h"

namespace netpass::cli {
namespace {

// Published eigenvalues of J_LF + J_LF' for the three-machine system.
const std::vector<double> kBase = {
    -0.84, 0,     7.52,  8.50,  10.15,  12.93,  31.71,  34.74,  34.95,
    36.29, 41.37, 42.8,  93.51, 94.52,  107.94, 108.29, 115.46, 115.76};
const std::vector<double> kModified = {
    0,     0.025, 7.87,  8.82,  10.42,  13.13,  32.43,  35.06,  35.44,
    36.53, 42.1,  42.88, 93.92, 95.08,  108.29, 109.06, 115.72, 116.61};
const std::vector<double> kLosslessBase = {
    -0.84, 0,     7.8,   8.83,  10.32,  13.11,  32.72,  35.46, 35.74,
    36.79, 41.72, 43.16, 94.37, 95.34,  109,    109.33, 116.92, 117.26};
const std::vector<double> kLosslessModified = {
    0,     0.027, 8.15,  9.15,  10.59, 13.31,  33.44, 35.86,  36.11,
    37.07, 42.45, 43.25, 94.77, 95.91, 109.33, 110.1, 117.2,  118.09};

EigenTable Compare(std::string name, const std::vector<double>& expected,
                   const JacobianLF& j, double tolerance) {
  EigenTable t;
  t.name = std::move(name);
  t.expected = expected;
  t.computed = SymmetricEigenvalues(j.Symmetrized());
  t.pass = static_cast<size_t>(t.computed.size()) == expected.size();
  for (size_t i = 0; t.pass && i < expected.size(); ++i) {
    const double err = std::abs(t.computed(i) - expected[i]);
    t.max_error = std::max(t.max_error, err);
    if (err > tolerance) t.offending.push_back(static_cast<int>(i));
  }
  t.pass = t.pass && t.offending.empty();
  return t;
}

const char* Mark(Verdict v) {
  switch (v) {
    case Verdict::kPassive:
      return "ok";
    case Verdict::kNonPassive:
      return "x";
    case Verdict::kPassiveAfterRegulation:
      return "x*";
  }
  return "?";
}

}  // namespace

bool TablesReport::pass() const {
  for (const auto& t : eigen_tables) {
    if (!t.pass) return false;
  }
  for (const auto& c : grid) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<QvContribution> PublishedRegulation() {
  std::vector<QvContribution> reg;
  for (int bus : {1, 2, 3, 5, 6, 8}) reg.push_back({bus, 0.65});
  return reg;
}

std::vector<GridCell> ExpectedGrid() {
  using M = ModelKind;
  constexpr Verdict P = Verdict::kPassive;
  constexpr Verdict X = Verdict::kNonPassive;
  constexpr Verdict R = Verdict::kPassiveAfterRegulation;
  std::vector<GridCell> g;
  auto lf = [&g](M m, bool lossless, bool no_b, bool decoupled, Verdict v) {
    g.push_back({m, Analysis::kLowFrequency, {lossless, no_b, decoupled}, v});
  };
  for (M m : {M::kI, M::kII, M::kIII, M::kIV}) {
    g.push_back({m, Analysis::kWideband, {}, m == M::kI ? P : X});
  }
  // Columns: lossy with B, lossless with B, lossy without B, lossless
  // without B. Rows within a model: coupled, decoupled.
  lf(M::kI, false, false, false, P);
  lf(M::kI, true, false, false, P);
  lf(M::kI, false, true, false, P);
  lf(M::kI, true, true, false, P);

  lf(M::kII, false, false, false, R);
  lf(M::kII, false, false, true, R);
  lf(M::kII, true, false, false, R);
  lf(M::kII, true, false, true, R);
  lf(M::kII, false, true, false, R);
  lf(M::kII, false, true, true, R);
  lf(M::kII, true, true, false, R);
  lf(M::kII, true, true, true, P);

  lf(M::kIII, false, false, false, X);
  lf(M::kIII, false, false, true, X);
  lf(M::kIII, true, false, false, X);
  lf(M::kIII, true, false, true, R);
  lf(M::kIII, false, true, false, X);
  lf(M::kIII, false, true, true, X);
  lf(M::kIII, true, true, false, X);
  lf(M::kIII, true, true, true, P);

  lf(M::kIV, false, false, false, X);
  lf(M::kIV, false, false, true, X);
  lf(M::kIV, true, false, false, R);
  lf(M::kIV, true, false, true, R);
  lf(M::kIV, false, true, false, X);
  lf(M::kIV, false, true, true, X);
  lf(M::kIV, true, true, false, R);
  lf(M::kIV, true, true, true, P);
  return g;
}

TablesReport ReproduceTables(const NetworkCase& ieee9, double tolerance,
                             const ClassifyOptions& options) {
  TablesReport r;
  r.tolerance = tolerance;
  const std::vector<QvContribution> reg = PublishedRegulation();

  const OperatingPoint op = SolvePowerflow(ieee9, options.powerflow);
  const JacobianLF base = BuildJlfAnalytic(ieee9, op);
  const NetworkCase lossless = DeriveVariant(ieee9, {true, false, false});
  const JacobianLF held = BuildJlfAtHeldPoint(lossless, op);

  r.eigen_tables.push_back(Compare("lossy base", kBase, base, tolerance));
  r.eigen_tables.push_back(Compare(
      "lossy modified", kModified, ApplyQvContribution(base, reg), tolerance));
  r.eigen_tables.push_back(
      Compare("lossless base", kLosslessBase, held, tolerance));
  r.eigen_tables.push_back(Compare("lossless modified", kLosslessModified,
                                   ApplyQvContribution(held, reg), tolerance));

  std::vector<int> buses;
  for (const auto& c : reg) buses.push_back(c.bus);
  r.min_uniform_kqv = MinUniformKqv(base, buses);

  ClassifyOptions opts = options;
  opts.regulation = reg;
  r.grid = ExpectedGrid();
  for (GridCell& cell : r.grid) {
    cell.computed =
        ClassifyModel(ieee9, cell.variant, cell.model, cell.analysis, opts)
            .overall;
    cell.pass = cell.computed == cell.expected;
  }
  return r;
}

std::string TablesToText(const TablesReport& r) {
  std::ostringstream out;
  out << std::fixed;
  for (const EigenTable& t : r.eigen_tables) {
    out << "eigenvalues of J_LF + J_LF' (" << t.name << "): "
        << (t.pass ? "PASS" : "FAIL") << "  max error " << std::setprecision(4)
        << t.max_error << " (tolerance " << r.tolerance << ")\n";
    out << "  idx   computed   expected\n";
    for (Eigen::Index i = 0; i < t.computed.size(); ++i) {
      const bool bad = std::find(t.offending.begin(), t.offending.end(),
                                 static_cast<int>(i)) != t.offending.end();
      out << "  " << std::setw(3) << i << " " << std::setw(10)
          << std::setprecision(4) << SnapForDisplay(t.computed(i)) << " "
          << std::setw(10) << std::setprecision(3)
          << (static_cast<size_t>(i) < t.expected.size() ? t.expected[i] : NAN)
          << (bad ? "  <-- mismatch" : "") << "\n";
    }
  }
  out << "minimal uniform k_qv at the regulated buses: "
      << std::setprecision(6) << r.min_uniform_kqv << " pu\n";
  out << "verdict grid (ok passive, x non-passive, x* passive after "
         "regulation):\n";
  for (const GridCell& c : r.grid) {
    out << "  model " << std::setw(3) << std::left << ToString(c.model)
        << std::right << " " << std::setw(8) << ToString(c.analysis) << " "
        << std::setw(24) << ToString(c.variant) << "  expected "
        << std::setw(2) << Mark(c.expected) << "  computed " << std::setw(2)
        << Mark(c.computed) << (c.pass ? "" : "  <-- mismatch") << "\n";
  }
  out << (r.pass() ? "all tables reproduced\n" : "MISMATCH\n");
  return out.str();
}

std::string TablesToJson(const TablesReport& r) {
  using nlohmann::json;
  json doc;
  doc["tolerance"] = r.tolerance;
  json tables = json::array();
  for (const EigenTable& t : r.eigen_tables) {
    std::vector<double> computed(t.computed.data(),
                                 t.computed.data() + t.computed.size());
    tables.push_back({{"name", t.name},
                      {"expected", t.expected},
                      {"computed", computed},
                      {"max_error", t.max_error},
                      {"offending", t.offending},
                      {"pass", t.pass}});
  }
  doc["eigenvalue_tables"] = tables;
  doc["min_uniform_kqv"] = r.min_uniform_kqv;
  json grid = json::array();
  for (const GridCell& c : r.grid) {
    grid.push_back({{"model", std::string(ToString(c.model))},
                    {"analysis", std::string(ToString(c.analysis))},
                    {"variant", ToString(c.variant)},
                    {"expected", std::string(ToString(c.expected))},
                    {"computed", std::string(ToString(c.computed))},
                    {"pass", c.pass}});
  }
  doc["grid"] = grid;
  doc["pass"] = r.pass();
  return doc.dump(2);
}

}  // namespace netpass::cli
