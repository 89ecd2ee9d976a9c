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

#include "netpass/passcheck.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include <Eigen/SVD>

#include "netpass/errors.h"
#include "netpass/linalg.h"

namespace netpass {
namespace {

using cd = std::complex<double>;

struct PoleCluster {
  cd pole;
  int count = 0;
};

std::vector<PoleCluster> AxisClusters(const Eigen::VectorXcd& eig,
                                      double axis_tol) {
  std::vector<PoleCluster> out;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig(i).real()) > axis_tol) continue;
    const cd on_axis(0.0, eig(i).imag());
    auto it = std::find_if(out.begin(), out.end(), [&](const PoleCluster& c) {
      return std::abs(c.pole - on_axis) <= 1e-8 * std::max(1.0, std::abs(on_axis));
    });
    if (it == out.end()) {
      out.push_back({on_axis, 1});
    } else {
      ++it->count;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.pole.imag() < b.pole.imag();
  });
  return out;
}

// Residue C P0 B at s = 0 when the zero poles come from integrator states
// whose rows of A vanish. With A = [[App, Apq], [0, 0]] (p: other states,
// q: integrators) and App invertible, the spectral projector onto the zero
// eigenspace is P0 = [[0, -App^-1 Apq], [0, I]].
std::optional<Eigen::MatrixXd> StructuralZeroResidue(const StateSpace& ss,
                                                     int zero_count) {
  std::vector<int> p_idx;
  std::vector<int> q_idx;
  for (int i = 0; i < ss.num_states(); ++i) {
    if (ss.state_meta[i].kind == StateKind::kIntegrator) {
      q_idx.push_back(i);
    } else {
      p_idx.push_back(i);
    }
  }
  if (q_idx.empty() || static_cast<int>(q_idx.size()) != zero_count) {
    return std::nullopt;
  }
  for (int q : q_idx) {
    if (ss.a.row(q).cwiseAbs().maxCoeff() != 0.0) return std::nullopt;
  }
  const int np = static_cast<int>(p_idx.size());
  const int nq = static_cast<int>(q_idx.size());
  Eigen::MatrixXd app(np, np), apq(np, nq);
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < np; ++j) app(i, j) = ss.a(p_idx[i], p_idx[j]);
    for (int j = 0; j < nq; ++j) apq(i, j) = ss.a(p_idx[i], q_idx[j]);
  }
  Eigen::MatrixXd cp(ss.num_outputs(), np), cq(ss.num_outputs(), nq);
  for (int i = 0; i < np; ++i) cp.col(i) = ss.c.col(p_idx[i]);
  for (int i = 0; i < nq; ++i) cq.col(i) = ss.c.col(q_idx[i]);
  Eigen::MatrixXd bq(nq, ss.num_inputs());
  for (int i = 0; i < nq; ++i) bq.row(i) = ss.b.row(q_idx[i]);

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(np, nq);
  if (np > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(app);
    if (!lu.isInvertible()) return std::nullopt;
    x = lu.solve(apq);
  }
  // C P0 B = (Cq - Cp App^-1 Apq) Bq.
  return Eigen::MatrixXd((cq - cp * x) * bq);
}

}  // namespace

void SweepGrid::Validate() const {
  if (!(omega_min > 0.0)) throw ParameterError("sweep omega_min must be > 0");
  if (!(omega_max >= omega_min)) {
    throw ParameterError("sweep omega_max must be >= omega_min");
  }
  if (points_per_decade < 1) {
    throw ParameterError("sweep needs at least one point per decade");
  }
  if (exclusion_radius < 0.0) {
    throw ParameterError("exclusion radius must be >= 0");
  }
}

std::vector<double> SweepGrid::Frequencies() const {
  Validate();
  const double decades = std::log10(omega_max / omega_min);
  const int count =
      std::max(1, static_cast<int>(std::lround(decades * points_per_decade)));
  std::vector<double> out;
  out.reserve(count + 1);
  for (int k = 0; k <= count; ++k) {
    out.push_back(omega_min *
                  std::pow(10.0, decades * static_cast<double>(k) / count));
  }
  if (omega_max == omega_min) out.resize(1);
  return out;
}

SweepGrid SweepGrid::Parse(std::string_view text) {
  SweepGrid g;
  std::string s(text);
  std::replace(s.begin(), s.end(), ':', ' ');
  std::istringstream in(s);
  std::string extra;
  if (!(in >> g.omega_min >> g.omega_max >> g.points_per_decade) ||
      (in >> extra)) {
    throw ParameterError("sweep must look like min:max:ppd, got '" +
                         std::string(text) + "'");
  }
  g.Validate();
  return g;
}

PoleReport CheckPoles(const StateSpace& ss, const Tolerances& tol) {
  ss.Validate();
  PoleReport report;
  report.eigenvalues = StateEigenvalues(ss.a);
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
    if (report.eigenvalues(i).real() > tol.axis) {
      report.cond1_pass = false;
      report.rhp_poles.push_back(report.eigenvalues(i));
    }
  }

  for (const PoleCluster& cluster : AxisClusters(report.eigenvalues, tol.axis)) {
    ResidueEvidence ev;
    ev.pole = cluster.pole;
    ev.algebraic_multiplicity = cluster.count;

    Eigen::MatrixXcd shifted = ss.a.cast<cd>();
    shifted.diagonal().array() -= cluster.pole;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double threshold =
        1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int null_dim = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) <= threshold) ++null_dim;
    }
    ev.geometric_multiplicity = null_dim;

    if (null_dim < cluster.count) {
      // Jordan block: the pole is not simple.
      ev.pass = false;
      report.cond3_pass = false;
      report.axis_poles.push_back(std::move(ev));
      continue;
    }

    std::optional<Eigen::MatrixXd> structural;
    if (cluster.pole == cd(0.0, 0.0)) {
      structural = StructuralZeroResidue(ss, cluster.count);
    }
    if (structural) {
      ev.residue = structural->cast<cd>();
    } else {
      const Eigen::MatrixXcd right = svd.matrixV().rightCols(null_dim);
      const Eigen::MatrixXcd left = svd.matrixU().rightCols(null_dim);
      const Eigen::MatrixXcd gram = left.adjoint() * right;
      const Eigen::MatrixXcd projector =
          right * gram.fullPivLu().solve(left.adjoint());
      ev.residue = ss.c.cast<cd>() * projector * ss.b.cast<cd>();
    }
    const ResidueCheck rc = CheckResiduePsdHermitian(ev.residue, tol);
    ev.hermitian_deviation = rc.hermitian_deviation;
    ev.min_eig = rc.min_eig;
    ev.pass = rc.pass;
    if (!ev.pass) report.cond3_pass = false;
    report.axis_poles.push_back(std::move(ev));
  }
  return report;
}

SweepReport SweepPsd(const TransferMatrix& model, const SweepGrid& grid,
                     const Tolerances& tol,
                     const std::optional<Eigen::MatrixXd>& compression) {
  const std::vector<double> omegas = grid.Frequencies();
  const std::vector<cd> poles = model.ImaginaryAxisPoles();

  std::vector<double> kept;
  SweepReport report;
  for (double w : omegas) {
    const bool near_pole = std::any_of(poles.begin(), poles.end(), [&](cd p) {
      return std::abs(w - p.imag()) <= grid.exclusion_radius;
    });
    if (near_pole) {
      ++report.skipped;
    } else {
      kept.push_back(w);
    }
  }

  auto evaluate = [&](double w) {
    Eigen::MatrixXcd g;
    try {
      g = model.Eval(cd(0.0, w));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "sweep hit a pole at omega = " << w << " rad/s: " << e.what();
      throw SingularityError(msg.str(), cd(0.0, w));
    }
    Eigen::MatrixXcd h = g + g.adjoint();
    if (compression) {
      h = compression->transpose().cast<cd>() * h * compression->cast<cd>();
    }
    return HermitianMinEigenvalue(h);
  };

  std::vector<double> mins(kept.size());
  const size_t workers = std::clamp<size_t>(
      std::thread::hardware_concurrency(), 1, 8);
  if (kept.size() < 32 || workers == 1) {
    for (size_t k = 0; k < kept.size(); ++k) mins[k] = evaluate(kept[k]);
  } else {
    std::vector<std::future<void>> jobs;
    for (size_t t = 0; t < workers; ++t) {
      jobs.push_back(std::async(std::launch::async, [&, t]() {
        for (size_t k = t; k < kept.size(); k += workers) {
          mins[k] = evaluate(kept[k]);
        }
      }));
    }
    for (auto& j : jobs) j.get();
  }

  for (size_t k = 0; k < kept.size(); ++k) {
    report.points.push_back({kept[k], mins[k]});
    if (mins[k] < report.worst_min_eig) {
      report.worst_min_eig = mins[k];
      report.worst_omega = kept[k];
    }
  }
  report.pass = report.worst_min_eig >= -tol.psd;
  return report;
}

FeedthroughReport CheckFeedthrough(const StateSpace& ss,
                                   const OperatingPoint* op,
                                   const Tolerances& tol) {
  ss.Validate();
  if (ss.num_inputs() != ss.num_outputs()) {
    throw DimensionError("feedthrough check needs a square model");
  }
  FeedthroughReport r;
  const Eigen::MatrixXd sym = ss.d + ss.d.transpose();
  r.trace = sym.trace();
  r.diagonal = sym.diagonal();
  r.min_eig = sym.size() ? SymmetricEigenvalues(sym)(0) : 0.0;
  r.psd = r.min_eig >= -tol.psd;
  r.certifies_non_passive = !r.psd;
  if (op != nullptr) {
    for (int i = 0; i < op->size(); ++i) {
      r.bus_terms.push_back(op->id(i) * op->vq(i) - op->iq(i) * op->vd(i));
    }
  }
  return r;
}

ResidueCheck CheckResiduePsdHermitian(const Eigen::MatrixXcd& r,
                                      const Tolerances& tol) {
  ResidueCheck out;
  if (r.rows() != r.cols()) {
    throw DimensionError("residue must be square");
  }
  const double norm = r.norm();
  out.hermitian_deviation = norm > 0.0 ? (r - r.adjoint()).norm() / norm : 0.0;
  out.min_eig =
      r.size() ? HermitianMinEigenvalue(0.5 * (r + r.adjoint())) : 0.0;
  out.hermitian = out.hermitian_deviation <= tol.hermitian;
  out.psd = out.min_eig >= -tol.psd;
  out.pass = out.hermitian && out.psd;
  return out;
}

}  // namespace netpass
