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

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "netpass/dqstamp.h"
#include "netpass/errors.h"
#include "netpass/linalg.h"
#include "netpass/netcase.h"
#include "netpass/passcheck.h"
#include "netpass/passivate.h"
#include "netpass/polarmodels.h"
#include "netpass/powerflow.h"
#include "netpass/report.h"
#include "tables.h"

#ifndef NETPASS_DEFAULT_FIXTURE
#define NETPASS_DEFAULT_FIXTURE "fixtures/ieee9.case"
#endif

namespace netpass::cli {
namespace {

enum class Format { kHuman, kJson };

struct RunConfig {
  std::string case_path;
  std::string variant = "base";
  std::string model = "I";
  std::string analysis = "wideband";
  double tau = 0.01;
  std::string reg;
  std::string sweep;
  std::string format = "human";
  std::string out_path;
  std::string sweep_csv;
  std::string csv_dir;
  double tolerance = -1.0;  // negative: command default
  bool jacobian = false;
};

Format ParseFormat(const std::string& text) {
  if (text == "human") return Format::kHuman;
  if (text == "json") return Format::kJson;
  throw ParameterError("format must be human or json");
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
}

// Main document goes to --out when given, otherwise to stdout.
void Emit(const RunConfig& cfg, const std::string& doc, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << doc;
    if (!doc.empty() && doc.back() != '\n') out << "\n";
  } else {
    WriteFile(cfg.out_path, doc);
  }
}

std::string OperatingPointText(const OperatingPoint& op) {
  std::ostringstream s;
  s << "power flow converged in " << op.iterations
    << " iterations (max mismatch " << std::scientific << std::setprecision(2)
    << op.mismatch << " pu)\n"
    << std::fixed;
  s << "  bus     |V|    angle(deg)       P         Q        iD        iQ\n";
  for (int i = 0; i < op.size(); ++i) {
    s << std::setw(5) << op.bus_ids[i] << std::setprecision(5) << std::setw(9)
      << op.vmag(i) << std::setprecision(4) << std::setw(12)
      << op.angle(i) * 180.0 / std::numbers::pi << std::setw(10) << op.p(i)
      << std::setw(10) << op.q(i) << std::setw(10) << op.id(i)
      << std::setw(10) << op.iq(i) << "\n";
  }
  return s.str();
}

std::string ConditionText(const std::string& title, const ConditionReport& r) {
  std::ostringstream s;
  s << title << (r.angle_mode_excluded ? " (uniform-angle mode excluded)" : "")
    << ": " << (r.pass() ? "pass" : "fail") << "\n";
  s << "  condition 1 (no RHP poles): " << (r.cond1_pass ? "pass" : "fail");
  for (auto p : r.rhp_poles) s << " " << p;
  s << "\n";
  if (r.cond2_evaluated) {
    s << "  condition 2 (sweep): " << (r.cond2_pass ? "pass" : "fail")
      << ", worst lambda_min " << std::scientific << std::setprecision(4)
      << r.worst_min_eig << " at omega " << r.worst_omega << " rad/s\n"
      << std::defaultfloat;
  }
  s << "  condition 3 (axis poles): " << (r.cond3_pass ? "pass" : "fail")
    << "\n";
  for (const ResidueEvidence& e : r.residues) {
    s << "    pole " << e.pole << " multiplicity " << e.algebraic_multiplicity
      << "/" << e.geometric_multiplicity << ", hermitian deviation "
      << std::scientific << std::setprecision(3) << e.hermitian_deviation
      << ", lambda_min " << e.min_eig << std::defaultfloat
      << (e.pass ? "" : "  <-- fails") << "\n";
  }
  if (r.static_min_eig) {
    s << "  static gain lambda_min(G + G'): " << std::setprecision(6)
      << *r.static_min_eig << (r.static_pass ? "" : "  <-- negative") << "\n";
  }
  return s.str();
}

std::string VerdictText(const PassivityVerdict& v) {
  std::ostringstream s;
  s << "model " << ToString(v.model) << ", " << ToString(v.analysis)
    << ", variant " << ToString(v.variant) << ", tau " << v.tau << " s\n";
  s << "sweep " << v.grid.omega_min << " .. " << v.grid.omega_max
    << " rad/s, " << v.grid.points_per_decade << " points/decade\n";
  s << ConditionText("plain check", v.unregulated);
  if (v.feedthrough) {
    s << "feedthrough: trace(D + D') " << std::scientific
      << std::setprecision(3) << v.feedthrough->trace << ", lambda_min "
      << v.feedthrough->min_eig << std::defaultfloat
      << (v.feedthrough->certifies_non_passive ? "  (certifies non-passivity)"
                                               : "")
      << "\n";
  }
  if (v.regulated) {
    s << "regulation:";
    for (const auto& c : v.regulation) s << " " << c.bus << ":" << c.k_qv;
    s << "\n" << ConditionText("regulated check", *v.regulated);
  }
  for (const std::string& n : v.notes) s << "note: " << n << "\n";
  s << "verdict: " << ToString(v.overall) << "\n";
  return s.str();
}

int VerdictExit(Verdict v) {
  switch (v) {
    case Verdict::kPassive:
      return kExitOk;
    case Verdict::kNonPassive:
      return kExitNonPassive;
    case Verdict::kPassiveAfterRegulation:
      return kExitPassiveAfterRegulation;
  }
  return kExitOther;
}

int CmdPowerflow(const RunConfig& cfg, std::ostream& out) {
  const Format format = ParseFormat(cfg.format);
  const NetworkCase net =
      DeriveVariant(LoadCase(cfg.case_path), ParseVariantFlags(cfg.variant));
  const OperatingPoint op = SolvePowerflow(net);
  Emit(cfg, format == Format::kJson ? OperatingPointToJson(op)
                                    : OperatingPointText(op),
       out);
  if (!cfg.csv_dir.empty()) {
    std::filesystem::create_directories(cfg.csv_dir);
    WriteFile(cfg.csv_dir + "/operating_point.csv", OperatingPointToCsv(op));
  }
  return kExitOk;
}

ClassifyOptions OptionsFrom(const RunConfig& cfg, const NetworkCase& net) {
  ClassifyOptions o;
  o.tau = cfg.tau;
  if (!cfg.sweep.empty()) o.grid = SweepGrid::Parse(cfg.sweep);
  if (cfg.tolerance >= 0.0) {
    o.tol.psd = cfg.tolerance;
    o.tol.hermitian = cfg.tolerance;
  }
  if (cfg.reg == "none") {
    o.regulation.clear();
  } else if (!cfg.reg.empty()) {
    o.regulation = ParseRegulationSet(cfg.reg);
  } else {
    o.regulation = net.regulation;
  }
  return o;
}

int CmdPassivity(const RunConfig& cfg, std::ostream& out) {
  const Format format = ParseFormat(cfg.format);
  const NetworkCase net = LoadCase(cfg.case_path);
  const ClassifyOptions options = OptionsFrom(cfg, net);
  const PassivityVerdict v =
      ClassifyModel(net, ParseVariantFlags(cfg.variant),
                    ParseModelKind(cfg.model), ParseAnalysis(cfg.analysis),
                    options);
  Emit(cfg, format == Format::kJson ? VerdictToJson(v) : VerdictText(v), out);
  if (!cfg.out_path.empty()) out << "verdict: " << ToString(v.overall) << "\n";
  if (!cfg.sweep_csv.empty()) {
    const ConditionReport& r = v.regulated ? *v.regulated : v.unregulated;
    WriteFile(cfg.sweep_csv, SweepToCsv(r.sweep));
  }
  return VerdictExit(v.overall);
}

int CmdTables(const RunConfig& cfg, std::ostream& out) {
  const Format format = ParseFormat(cfg.format);
  const std::string path =
      cfg.case_path.empty() ? NETPASS_DEFAULT_FIXTURE : cfg.case_path;
  const NetworkCase net = LoadCase(path);
  ClassifyOptions options;
  options.tau = cfg.tau;
  if (!cfg.sweep.empty()) options.grid = SweepGrid::Parse(cfg.sweep);
  const double tol = cfg.tolerance >= 0.0 ? cfg.tolerance : 0.05;
  const TablesReport r = ReproduceTables(net, tol, options);
  Emit(cfg, format == Format::kJson ? TablesToJson(r) : TablesToText(r), out);
  if (!cfg.csv_dir.empty()) {
    std::filesystem::create_directories(cfg.csv_dir);
    for (const EigenTable& t : r.eigen_tables) {
      std::string name = t.name;
      std::replace(name.begin(), name.end(), ' ', '_');
      WriteFile(cfg.csv_dir + "/eig_" + name + ".csv",
                EigenvaluesToCsv(t.computed));
    }
  }
  return r.pass() ? kExitOk : kExitTableMismatch;
}

int CmdDumpModel(const RunConfig& cfg, std::ostream& out) {
  const VariantFlags flags = ParseVariantFlags(cfg.variant);
  const NetworkCase net = DeriveVariant(LoadCase(cfg.case_path), flags);
  const ModelKind model = ParseModelKind(cfg.model);
  if (cfg.jacobian) {
    const OperatingPoint op = SolvePowerflow(net);
    JacobianLF j = ApplyJacobianFlags(BuildJlfAnalytic(net, op), flags);
    if (!cfg.reg.empty() && cfg.reg != "none") {
      j = ApplyQvContribution(j, ParseRegulationSet(cfg.reg));
    }
    Emit(cfg, MatrixToCsv(j.Full()), out);
    return kExitOk;
  }
  if (flags.decoupled) {
    throw ParameterError("decoupled applies to the Jacobian only (--jacobian)");
  }
  StateSpace ss = AssembleYdq(net);
  if (model != ModelKind::kI) {
    ss = BuildJofS(ss, SolvePowerflow(net));
    if (model == ModelKind::kIII) ss = BuildJdp(ss, cfg.tau);
    if (model == ModelKind::kIV) ss = BuildJdf(ss, cfg.tau);
  }
  Emit(cfg, ExportStateSpace(ss), out);
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Passivity analysis of D-Q network models"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--variant", cfg.variant,
                    "Any of lossless,no-b,decoupled (comma separated)");
    sub->add_option("--format", cfg.format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));
    sub->add_option("--out", cfg.out_path, "Write the report to a file");
  };

  CLI::App* pf = app.add_subcommand("pf", "Solve the power flow");
  pf->add_option("case", cfg.case_path, "Case file")->required();
  pf->add_option("--csv-dir", cfg.csv_dir, "Directory for CSV dumps");
  add_common(pf);

  CLI::App* pas =
      app.add_subcommand("passivity", "Classify a model for passivity");
  pas->add_option("case", cfg.case_path, "Case file")->required();
  pas->add_option("--model", cfg.model, "I, II, III or IV");
  pas->add_option("--analysis", cfg.analysis, "wideband or lowfreq");
  pas->add_option("--tau", cfg.tau, "Derivative filter time constant (s)");
  pas->add_option("--reg", cfg.reg,
                  "Q-V contributions bus:k,... ('none' ignores the case file)");
  pas->add_option("--sweep", cfg.sweep, "Frequency grid min:max:ppd (rad/s)");
  pas->add_option("--tolerance", cfg.tolerance, "PSD and Hermitian tolerance");
  pas->add_option("--sweep-csv", cfg.sweep_csv, "Write (omega, lambda_min)");
  add_common(pas);

  CLI::App* tab =
      app.add_subcommand("tables", "Reproduce the nine-bus reference tables");
  tab->add_option("case", cfg.case_path, "Nine-bus case file");
  tab->add_option("--tolerance", cfg.tolerance,
                  "Per-eigenvalue absolute tolerance (default 0.05)");
  tab->add_option("--tau", cfg.tau, "Derivative filter time constant (s)");
  tab->add_option("--sweep", cfg.sweep, "Frequency grid min:max:ppd (rad/s)");
  tab->add_option("--csv-dir", cfg.csv_dir, "Directory for eigenvalue CSVs");
  add_common(tab);

  CLI::App* dump =
      app.add_subcommand("dump-model", "Print a model's matrices");
  dump->add_option("case", cfg.case_path, "Case file")->required();
  dump->add_option("--model", cfg.model, "I, II, III or IV");
  dump->add_option("--tau", cfg.tau, "Derivative filter time constant (s)");
  dump->add_flag("--jacobian", cfg.jacobian, "Dump J_LF as CSV instead");
  dump->add_option("--reg", cfg.reg, "Q-V contributions for --jacobian");
  add_common(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pf->parsed()) return CmdPowerflow(cfg, out);
    if (pas->parsed()) return CmdPassivity(cfg, out);
    if (tab->parsed()) return CmdTables(cfg, out);
    if (dump->parsed()) return CmdDumpModel(cfg, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const TopologyError& e) {
    err << "topology error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "power flow error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const SingularityError& e) {
    err << "singularity: " << e.what() << "\n";
    return kExitSingularity;
  } catch (const PoleError& e) {
    err << "singularity: " << e.what() << "\n";
    return kExitSingularity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitUsage;
}

}  // namespace netpass::cli
