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

#include "netpass/statespace.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "netpass/errors.h"

namespace netpass {
namespace {

constexpr double kPoleTolerance = 1e-9;

// Tarjan's algorithm on the graph with an edge i -> j whenever a(i, j) != 0.
std::vector<std::vector<int>> StronglyConnectedComponents(
    const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w = 0; w < n; ++w) {
      if (w == v || a(v, w) == 0.0) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w = -1;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      components.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return components;
}

Eigen::MatrixXcd EvalAt(const StateSpace& ss, const Eigen::VectorXcd& poles,
                        std::complex<double> s) {
  for (Eigen::Index i = 0; i < poles.size(); ++i) {
    const std::complex<double> p = poles(i);
    if (std::abs(s - p) <= kPoleTolerance * std::max(1.0, std::abs(p))) {
      std::ostringstream msg;
      msg << "evaluation point " << s << " coincides with pole " << p;
      throw SingularityError(msg.str(), p);
    }
  }
  Eigen::MatrixXcd out = ss.d.cast<std::complex<double>>();
  if (ss.num_states() == 0) return out;
  Eigen::MatrixXcd shifted = -ss.a.cast<std::complex<double>>();
  shifted.diagonal().array() += s;
  const Eigen::MatrixXcd x =
      shifted.partialPivLu().solve(ss.b.cast<std::complex<double>>());
  out.noalias() += ss.c.cast<std::complex<double>>() * x;
  return out;
}

std::string FormatMatrix(const std::string& name, const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out << name << " " << m.rows() << " " << m.cols() << "\n";
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << " ";
      out << m(i, j);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string_view ToString(StateKind kind) {
  switch (kind) {
    case StateKind::kInductor:
      return "inductor";
    case StateKind::kCapacitor:
      return "capacitor";
    case StateKind::kIntegrator:
      return "integrator";
  }
  return "integrator";
}

void StateSpace::Validate() const {
  const Eigen::Index nx = a.rows();
  const Eigen::Index nu = d.cols();
  const Eigen::Index ny = d.rows();
  auto fail = [](const std::string& what) {
    throw DimensionError("state-space model: " + what);
  };
  if (a.cols() != nx) fail("A is not square");
  if (b.rows() != nx || b.cols() != nu) fail("B has the wrong shape");
  if (c.rows() != ny || c.cols() != nx) fail("C has the wrong shape");
  if (static_cast<Eigen::Index>(state_meta.size()) != nx) {
    fail("state metadata count differs from the number of states");
  }
  if (!input_labels.empty() &&
      static_cast<Eigen::Index>(input_labels.size()) != nu) {
    fail("input label count differs from the number of inputs");
  }
  if (!output_labels.empty() &&
      static_cast<Eigen::Index>(output_labels.size()) != ny) {
    fail("output label count differs from the number of outputs");
  }
}

Eigen::VectorXcd StateEigenvalues(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXcd out(n);
  Eigen::Index k = 0;
  for (const std::vector<int>& comp : StronglyConnectedComponents(a)) {
    const int m = static_cast<int>(comp.size());
    if (m == 1) {
      out(k++) = a(comp[0], comp[0]);
      continue;
    }
    Eigen::MatrixXd block(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) block(i, j) = a(comp[i], comp[j]);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(block, false);
    if (es.info() != Eigen::Success) {
      throw SingularityError("eigenvalue iteration did not converge");
    }
    for (int i = 0; i < m; ++i) out(k++) = es.eigenvalues()(i);
  }
  std::sort(out.data(), out.data() + n,
            [](const std::complex<double>& x, const std::complex<double>& y) {
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  return out;
}

FrequencyResponse::FrequencyResponse(StateSpace ss) : ss_(std::move(ss)) {
  ss_.Validate();
  if (ss_.num_inputs() != ss_.num_outputs()) {
    throw DimensionError("frequency response needs a square model");
  }
  poles_ = StateEigenvalues(ss_.a);
}

Eigen::MatrixXcd FrequencyResponse::Eval(std::complex<double> s) const {
  return EvalAt(ss_, poles_, s);
}

std::vector<std::complex<double>> FrequencyResponse::ImaginaryAxisPoles()
    const {
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < poles_.size(); ++i) {
    const std::complex<double> p = poles_(i);
    if (std::abs(p.real()) > kPoleTolerance) continue;
    const std::complex<double> on_axis(0.0, p.imag());
    const bool seen = std::any_of(out.begin(), out.end(), [&](auto q) {
      return std::abs(q - on_axis) <= 1e-8 * std::max(1.0, std::abs(q));
    });
    if (!seen) out.push_back(on_axis);
  }
  std::sort(out.begin(), out.end(),
            [](auto x, auto y) { return x.imag() < y.imag(); });
  return out;
}

Eigen::MatrixXcd EvalTf(const StateSpace& ss, std::complex<double> s) {
  ss.Validate();
  return EvalAt(ss, StateEigenvalues(ss.a), s);
}

std::string ExportStateSpace(const StateSpace& ss) {
  std::ostringstream out;
  out << "# state-space model, row-major blocks\n";
  out << "inputs";
  for (const auto& l : ss.input_labels) out << " " << l;
  out << "\noutputs";
  for (const auto& l : ss.output_labels) out << " " << l;
  out << "\nstates " << ss.state_meta.size() << "\n";
  out << std::setprecision(17);
  for (const StateMeta& m : ss.state_meta) {
    out << m.label << " " << ToString(m.kind) << " " << m.storage << "\n";
  }
  out << FormatMatrix("A", ss.a) << FormatMatrix("B", ss.b)
      << FormatMatrix("C", ss.c) << FormatMatrix("D", ss.d);
  return out.str();
}

}  // namespace netpass
