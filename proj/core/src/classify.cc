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

#include <algorithm>
#include <cctype>

#include "netpass/errors.h"
#include "netpass/linalg.h"
#include "netpass/passcheck.h"
#include "netpass/passivate.h"
#include "netpass/polarmodels.h"

namespace netpass {
namespace {

std::string Upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

void MergePoles(const PoleReport& poles, ConditionReport& out) {
  out.cond1_pass = poles.cond1_pass;
  out.rhp_poles = poles.rhp_poles;
  out.cond3_pass = poles.cond3_pass;
  out.residues = poles.axis_poles;
}

void MergeSweep(const SweepReport& sweep, ConditionReport& out) {
  out.cond2_evaluated = true;
  out.cond2_pass = sweep.pass;
  out.worst_omega = sweep.worst_omega;
  out.worst_min_eig = sweep.worst_min_eig;
  out.sweep = sweep.points;
}

// Static low-frequency gain: passive iff G + G' is PSD.
void CheckStaticGain(const Eigen::MatrixXd& g, bool exclude_angle_mode,
                     const Tolerances& tol, ConditionReport& out) {
  Eigen::MatrixXd h = g + g.transpose();
  if (exclude_angle_mode) {
    const Eigen::MatrixXd z = AngleModeComplement(static_cast<int>(g.rows() / 2));
    h = z.transpose() * h * z;
  }
  out.static_min_eig = SymmetricEigenvalues(h)(0);
  out.static_pass = *out.static_min_eig >= -tol.psd;
  out.angle_mode_excluded = exclude_angle_mode;
}

ConditionReport CheckLowFrequency(ModelKind model, const JacobianLF& j,
                                  bool exclude_angle_mode,
                                  const ClassifyOptions& options) {
  ConditionReport out;
  out.angle_mode_excluded = exclude_angle_mode;
  if (model == ModelKind::kII) {
    CheckStaticGain(j.Full(), exclude_angle_mode, options.tol, out);
    return out;
  }
  const RationalLF lf = model == ModelKind::kIII ? BuildNp(j, options.tau)
                                                 : BuildNdf(j, options.tau);
  std::optional<Eigen::MatrixXd> z;
  if (exclude_angle_mode) z = AngleModeComplement(j.size());

  Eigen::MatrixXd residue = ResidueAtOrigin(lf);
  if (z) residue = z->transpose() * residue * *z;
  const ResidueCheck rc =
      CheckResiduePsdHermitian(residue.cast<std::complex<double>>(), options.tol);
  ResidueEvidence ev;
  ev.pole = {0.0, 0.0};
  ev.algebraic_multiplicity = 1;
  ev.geometric_multiplicity = 1;
  ev.hermitian_deviation = rc.hermitian_deviation;
  ev.min_eig = rc.min_eig;
  ev.pass = rc.pass;
  ev.residue = residue.cast<std::complex<double>>();
  out.residues.push_back(ev);
  out.cond3_pass = rc.pass;

  MergeSweep(SweepPsd(lf, options.grid, options.tol, z), out);
  return out;
}

}  // namespace

std::string_view ToString(ModelKind m) {
  switch (m) {
    case ModelKind::kI:
      return "I";
    case ModelKind::kII:
      return "II";
    case ModelKind::kIII:
      return "III";
    case ModelKind::kIV:
      return "IV";
  }
  return "I";
}

std::string_view ToString(Analysis a) {
  return a == Analysis::kWideband ? "wideband" : "lowfreq";
}

std::string_view ToString(Verdict v) {
  switch (v) {
    case Verdict::kPassive:
      return "passive";
    case Verdict::kNonPassive:
      return "non-passive";
    case Verdict::kPassiveAfterRegulation:
      return "passive-after-regulation";
  }
  return "non-passive";
}

ModelKind ParseModelKind(std::string_view text) {
  const std::string t = Upper(text);
  if (t == "I" || t == "1") return ModelKind::kI;
  if (t == "II" || t == "2") return ModelKind::kII;
  if (t == "III" || t == "3") return ModelKind::kIII;
  if (t == "IV" || t == "4") return ModelKind::kIV;
  throw ParameterError("model must be I, II, III or IV, got '" +
                       std::string(text) + "'");
}

Analysis ParseAnalysis(std::string_view text) {
  const std::string t = Upper(text);
  if (t == "WIDEBAND" || t == "WIDE-BAND" || t == "WB") {
    return Analysis::kWideband;
  }
  if (t == "LOWFREQ" || t == "LOW-FREQUENCY" || t == "LF") {
    return Analysis::kLowFrequency;
  }
  throw ParameterError("analysis must be wideband or lowfreq, got '" +
                       std::string(text) + "'");
}

PassivityVerdict ClassifyModel(const NetworkCase& net,
                               const VariantFlags& variant, ModelKind model,
                               Analysis analysis,
                               const ClassifyOptions& options) {
  if (!(options.tau > 0.0)) throw ParameterError("tau must be positive");
  options.grid.Validate();
  if (variant.decoupled &&
      (analysis == Analysis::kWideband || model == ModelKind::kI)) {
    throw ParameterError(
        "the decoupled variant exists only for low-frequency Models II-IV");
  }
  ValidateRegulationSet(options.regulation, net);

  PassivityVerdict v;
  v.model = model;
  v.analysis = analysis;
  v.variant = variant;
  v.tau = options.tau;
  v.grid = options.grid;
  v.regulation = options.regulation;

  const NetworkCase vcase = DeriveVariant(net, variant);

  if (model == ModelKind::kI) {
    const StateSpace ydq = AssembleYdq(vcase, options.parasitics);
    if (analysis == Analysis::kWideband) {
      MergePoles(CheckPoles(ydq, options.tol), v.unregulated);
      MergeSweep(SweepPsd(FrequencyResponse(ydq), options.grid, options.tol),
                 v.unregulated);
      v.feedthrough = CheckFeedthrough(ydq, nullptr, options.tol);
    } else {
      CheckStaticGain(EvalTf(ydq, 0.0).real(), false, options.tol,
                      v.unregulated);
    }
    if (!options.regulation.empty()) {
      v.notes.push_back(
          "regulation contributions act on the Q-V Jacobian and do not "
          "apply to the admittance model");
    }
    v.overall = v.unregulated.pass() ? Verdict::kPassive : Verdict::kNonPassive;
    return v;
  }

  const OperatingPoint op = SolvePowerflow(vcase, options.powerflow);

  if (analysis == Analysis::kWideband) {
    const StateSpace ydq = AssembleYdq(vcase, options.parasitics);
    StateSpace m = BuildJofS(ydq, op);
    if (model == ModelKind::kIII) m = BuildJdp(m, options.tau);
    if (model == ModelKind::kIV) m = BuildJdf(m, options.tau);
    v.feedthrough = CheckFeedthrough(m, &op, options.tol);
    MergePoles(CheckPoles(m, options.tol), v.unregulated);
    MergeSweep(SweepPsd(FrequencyResponse(m), options.grid, options.tol),
               v.unregulated);
    if (v.feedthrough->certifies_non_passive) {
      v.notes.push_back(
          "feedthrough D + D' is indefinite: non-passive at high frequency");
    }
    if (!options.regulation.empty()) {
      v.notes.push_back(
          "regulation contributions are ignored for wide-band models");
    }
    v.overall = v.unregulated.pass() ? Verdict::kPassive : Verdict::kNonPassive;
    return v;
  }

  const JacobianLF j =
      ApplyJacobianFlags(BuildJlfAnalytic(vcase, op), variant);
  v.unregulated = CheckLowFrequency(model, j, false, options);
  if (v.unregulated.pass()) {
    v.overall = Verdict::kPassive;
    return v;
  }
  if (options.regulation.empty()) {
    v.overall = Verdict::kNonPassive;
    return v;
  }
  v.regulated = CheckLowFrequency(
      model, ApplyQvContribution(j, options.regulation), true, options);
  v.notes.push_back(
      "regulated recheck excludes the uniform-angle mode [1; 0], which no "
      "shunt device can act on");
  v.overall = v.regulated->pass() ? Verdict::kPassiveAfterRegulation
                                  : Verdict::kNonPassive;
  return v;
}

}  // namespace netpass
