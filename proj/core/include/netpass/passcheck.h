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


#ifndef NETPASS_PASSCHECK_H_
#define NETPASS_PASSCHECK_H_

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "netpass/dqstamp.h"
#include "netpass/netcase.h"
#include "netpass/powerflow.h"
#include "netpass/statespace.h"

namespace netpass {

struct Tolerances {
  double psd = 1e-9;        // absolute, on minimum eigenvalues
  double hermitian = 1e-9;  // relative deviation ||R - R^H|| / ||R||
  double axis = 1e-9;       // |Re(pole)| below this counts as on the axis
};

struct SweepGrid {
  double omega_min = 1e-2;  // rad/s
  double omega_max = 1e5;
  int points_per_decade = 20;
  double exclusion_radius = 1e-6;

  void Validate() const;
  // Log-spaced grid including both end points.
  std::vector<double> Frequencies() const;
  // "min:max:ppd".
  static SweepGrid Parse(std::string_view text);
};

// Condition 3 evidence for one imaginary-axis pole.
struct ResidueEvidence {
  std::complex<double> pole;
  int algebraic_multiplicity = 0;
  int geometric_multiplicity = 0;
  double hermitian_deviation = 0.0;
  double min_eig = 0.0;
  bool pass = false;
  Eigen::MatrixXcd residue;
};

struct PoleReport {
  Eigen::VectorXcd eigenvalues;
  bool cond1_pass = true;
  std::vector<std::complex<double>> rhp_poles;
  bool cond3_pass = true;
  std::vector<ResidueEvidence> axis_poles;
};

// Conditions 1 and 3. Residues at s = 0 of integrator realizations use the
// structural projector; other axis poles use the spectral projector built
// from left and right null spaces. A defective pole fails condition 3.
PoleReport CheckPoles(const StateSpace& ss, const Tolerances& tol = {});

struct SweepPoint {
  double omega = 0.0;
  double min_eig = 0.0;
};

struct SweepReport {
  bool pass = true;
  double worst_omega = 0.0;
  double worst_min_eig = std::numeric_limits<double>::infinity();
  std::vector<SweepPoint> points;
  int skipped = 0;  // grid points inside an exclusion radius
};

// Condition 2: lambda_min(G(jW) + G(jW)^H) >= -tol over the grid. When
// `compression` is given, the Hermitian part is projected as Z' H Z first.
SweepReport SweepPsd(const TransferMatrix& model, const SweepGrid& grid,
                     const Tolerances& tol = {},
                     const std::optional<Eigen::MatrixXd>& compression = {});

struct FeedthroughReport {
  double trace = 0.0;    // trace(D + D')
  double min_eig = 0.0;  // lambda_min(D + D')
  Eigen::VectorXd diagonal;
  // i_D v_Q - i_Q v_D at each bus; filled when an operating point is given.
  std::vector<double> bus_terms;
  bool psd = true;
  bool certifies_non_passive = false;
};

FeedthroughReport CheckFeedthrough(const StateSpace& ss,
                                   const OperatingPoint* op = nullptr,
                                   const Tolerances& tol = {});

struct ResidueCheck {
  double hermitian_deviation = 0.0;
  double min_eig = 0.0;
  bool hermitian = false;
  bool psd = false;
  bool pass = false;
};

ResidueCheck CheckResiduePsdHermitian(const Eigen::MatrixXcd& r,
                                      const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Dissipation inequality by simulation.

using InputSignal = std::function<Eigen::VectorXd(double)>;

// Sum of sinusoids per channel with a smooth sin^2 onset over `ramp` seconds.
class Multisine {
 public:
  struct Tone {
    int channel;
    double amplitude;
    double omega;
    double phase;
  };

  Multisine(int channels, std::vector<Tone> tones, double ramp);

  static Multisine Random(int channels, int tones_per_channel,
                          double omega_min, double omega_max,
                          double amplitude, std::mt19937_64& rng,
                          double ramp = 0.01);

  Eigen::VectorXd operator()(double t) const;
  int channels() const { return channels_; }

 private:
  int channels_;
  std::vector<Tone> tones_;
  double ramp_;
};

enum class IntegrationScheme { kExponential, kRk4 };

struct DissipationOptions {
  double step = 1e-4;
  IntegrationScheme scheme = IntegrationScheme::kExponential;
  Eigen::VectorXd x0;  // empty means zero
  bool record_trace = false;
};

struct DissipationReport {
  // min over t of [ int_0^t u'y - (S(x(t)) - S(x(0))) ].
  double min_margin = 0.0;
  double time_of_min = 0.0;
  double final_supply = 0.0;
  double final_energy = 0.0;
  double initial_energy = 0.0;
  int steps = 0;
  std::vector<double> times;
  std::vector<double> margins;
  std::vector<double> energies;

  bool Holds(double eps) const { return min_margin >= -eps; }
};

// Integrates a physical model (state metadata gives the storage function)
// with a fixed step. The exponential scheme propagates e^{Ah} exactly and
// interpolates the input with a cubic; RK4 checks its stability region first
// and throws IntegratorError when some mode would be amplified.
DissipationReport SimulateDissipation(const StateSpace& ss,
                                      const InputSignal& input,
                                      double horizon,
                                      const DissipationOptions& options = {});

// ---------------------------------------------------------------------------
// Model classification.

enum class ModelKind { kI, kII, kIII, kIV };
enum class Analysis { kWideband, kLowFrequency };
enum class Verdict { kPassive, kNonPassive, kPassiveAfterRegulation };

std::string_view ToString(ModelKind m);
std::string_view ToString(Analysis a);
std::string_view ToString(Verdict v);
ModelKind ParseModelKind(std::string_view text);
Analysis ParseAnalysis(std::string_view text);

// Outcome of one pass over the applicable conditions.
struct ConditionReport {
  bool cond1_pass = true;
  std::vector<std::complex<double>> rhp_poles;
  bool cond2_evaluated = false;
  bool cond2_pass = true;
  double worst_omega = 0.0;
  double worst_min_eig = std::numeric_limits<double>::infinity();
  std::vector<SweepPoint> sweep;
  bool cond3_pass = true;
  std::vector<ResidueEvidence> residues;
  // Static gain models: lambda_min(G(0) + G(0)').
  std::optional<double> static_min_eig;
  bool static_pass = true;
  bool angle_mode_excluded = false;

  bool pass() const {
    return cond1_pass && cond2_pass && cond3_pass && static_pass;
  }
};

struct ClassifyOptions {
  double tau = 0.01;
  SweepGrid grid;
  Tolerances tol;
  ParasiticConfig parasitics;
  PowerflowOptions powerflow;
  // Shunt-device Q-V contributions tried when the plain check fails.
  std::vector<QvContribution> regulation;
};

struct PassivityVerdict {
  ModelKind model = ModelKind::kI;
  Analysis analysis = Analysis::kWideband;
  VariantFlags variant;
  double tau = 0.0;
  SweepGrid grid;
  ConditionReport unregulated;
  std::optional<FeedthroughReport> feedthrough;
  std::vector<QvContribution> regulation;
  std::optional<ConditionReport> regulated;
  Verdict overall = Verdict::kNonPassive;
  std::vector<std::string> notes;
};

// Runs the checks that apply to (model, analysis) on the variant of `net`.
// Each variant is evaluated at its own solved operating point. The plain
// check is strict; the regulated recheck excludes the uniform-angle mode,
// which no shunt device can act on.
PassivityVerdict ClassifyModel(const NetworkCase& net,
                               const VariantFlags& variant, ModelKind model,
                               Analysis analysis,
                               const ClassifyOptions& options = {});

}  // namespace netpass

#endif  // NETPASS_PASSCHECK_H_
