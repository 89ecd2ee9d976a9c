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

#include "netpass/report.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace netpass {
namespace {

using nlohmann::json;

// JSON has no infinity; unevaluated minima are written as null.
json Number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json Complex(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json Vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Number(v(i)));
  return out;
}

json Conditions(const ConditionReport& r) {
  json out;
  json rhp = json::array();
  for (auto p : r.rhp_poles) rhp.push_back(Complex(p));
  out["cond1_rhp_poles"] = {{"pass", r.cond1_pass}, {"offending", rhp}};
  out["cond2_sweep"] = {{"evaluated", r.cond2_evaluated},
                        {"pass", r.cond2_pass},
                        {"worst_omega", Number(r.worst_omega)},
                        {"worst_min_eig", Number(r.worst_min_eig)},
                        {"points", r.sweep.size()}};
  json residues = json::array();
  for (const ResidueEvidence& e : r.residues) {
    residues.push_back({{"pole", Complex(e.pole)},
                        {"algebraic_multiplicity", e.algebraic_multiplicity},
                        {"geometric_multiplicity", e.geometric_multiplicity},
                        {"hermitian_deviation", Number(e.hermitian_deviation)},
                        {"min_eig", Number(e.min_eig)},
                        {"pass", e.pass}});
  }
  out["cond3_residues"] = {{"pass", r.cond3_pass}, {"poles", residues}};
  out["static_gain"] = {
      {"evaluated", r.static_min_eig.has_value()},
      {"min_eig", r.static_min_eig ? Number(*r.static_min_eig) : json(nullptr)},
      {"pass", r.static_pass}};
  out["angle_mode_excluded"] = r.angle_mode_excluded;
  out["pass"] = r.pass();
  return out;
}

}  // namespace

std::string VerdictToJson(const PassivityVerdict& v, int indent) {
  json doc;
  doc["model"] = std::string(ToString(v.model));
  doc["analysis"] = std::string(ToString(v.analysis));
  doc["variant"] = {{"lossless", v.variant.lossless},
                    {"no_shunt_b", v.variant.no_shunt_b},
                    {"decoupled", v.variant.decoupled}};
  doc["tau"] = v.tau;
  doc["grid"] = {{"omega_min", v.grid.omega_min},
                 {"omega_max", v.grid.omega_max},
                 {"points_per_decade", v.grid.points_per_decade},
                 {"exclusion_radius", v.grid.exclusion_radius}};
  doc["unregulated"] = Conditions(v.unregulated);
  if (v.feedthrough) {
    const FeedthroughReport& f = *v.feedthrough;
    doc["feedthrough"] = {{"trace", Number(f.trace)},
                          {"min_eig", Number(f.min_eig)},
                          {"diagonal", Vector(f.diagonal)},
                          {"bus_terms", f.bus_terms},
                          {"psd", f.psd},
                          {"certifies_non_passive", f.certifies_non_passive}};
  } else {
    doc["feedthrough"] = nullptr;
  }
  json reg = json::array();
  for (const QvContribution& c : v.regulation) {
    reg.push_back({{"bus", c.bus}, {"k_qv", c.k_qv}});
  }
  doc["regulation"] = reg;
  doc["regulated"] = v.regulated ? Conditions(*v.regulated) : json(nullptr);
  doc["overall"] = std::string(ToString(v.overall));
  doc["notes"] = v.notes;
  return doc.dump(indent);
}

std::string OperatingPointToJson(const OperatingPoint& op, int indent) {
  json buses = json::array();
  for (int i = 0; i < op.size(); ++i) {
    buses.push_back({{"id", op.bus_ids[i]},
                     {"vmag", op.vmag(i)},
                     {"angle", op.angle(i)},
                     {"vd", op.vd(i)},
                     {"vq", op.vq(i)},
                     {"id_current", op.id(i)},
                     {"iq_current", op.iq(i)},
                     {"p", op.p(i)},
                     {"q", op.q(i)}});
  }
  json doc = {{"iterations", op.iterations},
              {"mismatch", op.mismatch},
              {"buses", buses}};
  return doc.dump(indent);
}

std::string SweepToCsv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "omega,min_eig\n" << std::setprecision(17);
  for (const SweepPoint& p : points) out << p.omega << "," << p.min_eig << "\n";
  return out.str();
}

std::string EigenvaluesToCsv(const Eigen::VectorXd& values) {
  std::ostringstream out;
  out << "index,eigenvalue\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out << i << "," << values(i) << "\n";
  }
  return out.str();
}

std::string MatrixToCsv(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ",";
      out << m(i, j);
    }
    out << "\n";
  }
  return out.str();
}

std::string OperatingPointToCsv(const OperatingPoint& op) {
  std::ostringstream out;
  out << "bus,vmag,angle,vd,vq,id,iq,p,q\n" << std::setprecision(17);
  for (int i = 0; i < op.size(); ++i) {
    out << op.bus_ids[i] << "," << op.vmag(i) << "," << op.angle(i) << ","
        << op.vd(i) << "," << op.vq(i) << "," << op.id(i) << "," << op.iq(i)
        << "," << op.p(i) << "," << op.q(i) << "\n";
  }
  return out.str();
}

}  // namespace netpass
