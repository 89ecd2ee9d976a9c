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

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "netpass/errors.h"
#include "netpass/passcheck.h"

namespace netpass {
namespace {

constexpr int kInterpNodes = 4;  // cubic input interpolation

// Propagator pieces over a sub-interval sigma of a step h:
// x(sigma) = phi x(0) + sum_k gamma[k] p_k, with the input written as
// u(sigma) = sum_k p_k (sigma / h)^k / k!.
struct Propagator {
  Eigen::MatrixXd phi;
  std::vector<Eigen::MatrixXd> gamma;
};

Propagator BuildPropagator(const StateSpace& ss, double h, double sigma) {
  const int nx = ss.num_states();
  const int nu = ss.num_inputs();
  const int n = nx + kInterpNodes * nu;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  w.topLeftCorner(nx, nx) = ss.a;
  w.block(0, nx, nx, nu) = ss.b;
  for (int k = 0; k + 1 < kInterpNodes; ++k) {
    w.block(nx + k * nu, nx + (k + 1) * nu, nu, nu) =
        Eigen::MatrixXd::Identity(nu, nu) / h;
  }
  const Eigen::MatrixXd e = (w * sigma).exp();
  Propagator p;
  p.phi = e.topLeftCorner(nx, nx);
  for (int k = 0; k < kInterpNodes; ++k) {
    p.gamma.push_back(e.block(0, nx + k * nu, nx, nu));
  }
  return p;
}

Eigen::VectorXd Propagate(const Propagator& p, const Eigen::VectorXd& x,
                          const std::vector<Eigen::VectorXd>& coeffs) {
  Eigen::VectorXd out = p.phi * x;
  for (int k = 0; k < kInterpNodes; ++k) out.noalias() += p.gamma[k] * coeffs[k];
  return out;
}

double RungeKuttaGain(std::complex<double> z) {
  return std::abs(1.0 + z + z * z / 2.0 + z * z * z / 6.0 +
                  z * z * z * z / 24.0);
}

void CheckFinite(const Eigen::VectorXd& x, double t) {
  if (!x.allFinite()) {
    std::ostringstream msg;
    msg << "state blew up at t = " << t << " s; try a smaller step";
    throw IntegratorError(msg.str());
  }
}

}  // namespace

Multisine::Multisine(int channels, std::vector<Tone> tones, double ramp)
    : channels_(channels), tones_(std::move(tones)), ramp_(ramp) {
  for (const Tone& t : tones_) {
    if (t.channel < 0 || t.channel >= channels_) {
      throw DimensionError("multisine tone on a missing channel");
    }
  }
}

Multisine Multisine::Random(int channels, int tones_per_channel,
                           double omega_min, double omega_max,
                           double amplitude, std::mt19937_64& rng,
                           double ramp) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Tone> tones;
  const double lmin = std::log(omega_min);
  const double lmax = std::log(omega_max);
  for (int c = 0; c < channels; ++c) {
    for (int k = 0; k < tones_per_channel; ++k) {
      Tone t;
      t.channel = c;
      t.amplitude = amplitude * (0.5 + 0.5 * unit(rng)) / tones_per_channel;
      t.omega = std::exp(lmin + (lmax - lmin) * unit(rng));
      t.phase = 2.0 * std::numbers::pi * unit(rng);
      tones.push_back(t);
    }
  }
  return Multisine(channels, std::move(tones), ramp);
}

Eigen::VectorXd Multisine::operator()(double t) const {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(channels_);
  for (const Tone& tone : tones_) {
    u(tone.channel) += tone.amplitude * std::sin(tone.omega * t + tone.phase);
  }
  if (ramp_ > 0.0 && t < ramp_) {
    const double s = std::sin(0.5 * std::numbers::pi * std::max(t, 0.0) / ramp_);
    u *= s * s;
  }
  return u;
}

DissipationReport SimulateDissipation(const StateSpace& ss,
                                      const InputSignal& input, double horizon,
                                      const DissipationOptions& options) {
  ss.Validate();
  if (ss.num_inputs() != ss.num_outputs()) {
    throw DimensionError("dissipation needs matching input and output ports");
  }
  const double h = options.step;
  if (!(h > 0.0) || !(horizon > 0.0)) {
    throw ParameterError("step and horizon must be positive");
  }
  const int nx = ss.num_states();
  Eigen::VectorXd x = options.x0.size() ? options.x0 : Eigen::VectorXd::Zero(nx);
  if (x.size() != nx) throw DimensionError("x0 has the wrong length");
  const Eigen::VectorXd weights = StorageWeights(ss.state_meta);
  auto energy = [&weights](const Eigen::VectorXd& s) {
    return 0.5 * (weights.array() * s.array().square()).sum();
  };
  auto supply_rate = [&ss](const Eigen::VectorXd& u, const Eigen::VectorXd& s) {
    return u.dot(ss.c * s + ss.d * u);
  };

  const int steps = static_cast<int>(std::ceil(horizon / h - 1e-9));
  DissipationReport report;
  report.initial_energy = energy(x);
  report.steps = steps;
  double supply = 0.0;
  auto record = [&](double t) {
    const double e = energy(x);
    const double margin = supply - (e - report.initial_energy);
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.time_of_min = t;
    }
    if (options.record_trace) {
      report.times.push_back(t);
      report.margins.push_back(margin);
      report.energies.push_back(e);
    }
    report.final_energy = e;
  };
  record(0.0);

  if (options.scheme == IntegrationScheme::kExponential) {
    // Monomial coefficients of the cubic through nodes {0, 1/3, 2/3, 1}.
    Eigen::Matrix4d vander;
    for (int j = 0; j < kInterpNodes; ++j) {
      const double s = static_cast<double>(j) / (kInterpNodes - 1);
      for (int k = 0; k < kInterpNodes; ++k) vander(j, k) = std::pow(s, k);
    }
    const Eigen::Matrix4d vinv = vander.inverse();
    const double factorial[kInterpNodes] = {1.0, 1.0, 2.0, 6.0};

    const double g = std::sqrt(0.6);
    const double gauss_s[3] = {0.5 * (1.0 - g), 0.5, 0.5 * (1.0 + g)};
    const double gauss_w[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    std::vector<Propagator> inner;
    for (double s : gauss_s) inner.push_back(BuildPropagator(ss, h, s * h));
    const Propagator full = BuildPropagator(ss, h, h);

    const int nu = ss.num_inputs();
    std::vector<Eigen::VectorXd> samples(kInterpNodes);
    std::vector<Eigen::VectorXd> mono(kInterpNodes);
    std::vector<Eigen::VectorXd> coeffs(kInterpNodes);
    samples[0] = input(0.0);
    for (int step = 0; step < steps; ++step) {
      const double t0 = step * h;
      for (int j = 1; j < kInterpNodes; ++j) {
        samples[j] = input(t0 + h * j / (kInterpNodes - 1));
      }
      for (int k = 0; k < kInterpNodes; ++k) {
        mono[k] = Eigen::VectorXd::Zero(nu);
        for (int j = 0; j < kInterpNodes; ++j) mono[k] += vinv(k, j) * samples[j];
        coeffs[k] = mono[k] * factorial[k];
      }
      auto u_hat = [&](double s) {
        Eigen::VectorXd u = mono[3];
        for (int k = kInterpNodes - 2; k >= 0; --k) u = u * s + mono[k];
        return u;
      };
      double step_supply = 0.0;
      for (int q = 0; q < 3; ++q) {
        const Eigen::VectorXd xs = Propagate(inner[q], x, coeffs);
        step_supply += gauss_w[q] * supply_rate(u_hat(gauss_s[q]), xs);
      }
      supply += h * step_supply;
      x = Propagate(full, x, coeffs);
      CheckFinite(x, t0 + h);
      samples[0] = samples[kInterpNodes - 1];
      record(t0 + h);
    }
  } else {
    const Eigen::VectorXcd poles = StateEigenvalues(ss.a);
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
      if (poles(i).real() > 0.0) continue;  // genuinely growing modes
      const double gain = RungeKuttaGain(h * poles(i));
      if (gain > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "RK4 step " << h << " s amplifies the stable mode " << poles(i)
            << " by " << gain << "; use a step below "
            << 2.78 / std::abs(poles(i)) << " s or the exponential scheme";
        throw IntegratorError(msg.str());
      }
    }
    auto f = [&ss](const Eigen::VectorXd& s, const Eigen::VectorXd& u) {
      return Eigen::VectorXd(ss.a * s + ss.b * u);
    };
    for (int step = 0; step < steps; ++step) {
      const double t0 = step * h;
      const Eigen::VectorXd u0 = input(t0);
      const Eigen::VectorXd um = input(t0 + 0.5 * h);
      const Eigen::VectorXd u1 = input(t0 + h);
      const Eigen::VectorXd k1 = f(x, u0);
      const Eigen::VectorXd k2 = f(x + 0.5 * h * k1, um);
      const Eigen::VectorXd k3 = f(x + 0.5 * h * k2, um);
      const Eigen::VectorXd k4 = f(x + h * k3, u1);
      const Eigen::VectorXd x1 = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      // Cubic Hermite midpoint for the Simpson supply quadrature.
      const Eigen::VectorXd xm = 0.5 * (x + x1) + h / 8.0 * (k1 - f(x1, u1));
      supply += h / 6.0 *
                (supply_rate(u0, x) + 4.0 * supply_rate(um, xm) +
                 supply_rate(u1, x1));
      x = x1;
      CheckFinite(x, t0 + h);
      record(t0 + h);
    }
  }
  report.final_supply = supply;
  return report;
}

}  // namespace netpass
