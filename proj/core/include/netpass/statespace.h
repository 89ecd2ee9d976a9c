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


#ifndef NETPASS_STATESPACE_H_
#define NETPASS_STATESPACE_H_

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netpass {

enum class StateKind { kInductor, kCapacitor, kIntegrator };

std::string_view ToString(StateKind kind);

// Physical meaning of one state. `storage` is L for inductor currents and C
// for capacitor voltages (pu-seconds); integrator states store nothing.
struct StateMeta {
  StateKind kind = StateKind::kIntegrator;
  double storage = 0.0;
  std::string label;
};

// Real LTI realization G(s) = C (sI - A)^-1 B + D.
struct StateSpace {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  Eigen::MatrixXd c;
  Eigen::MatrixXd d;
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;
  std::vector<StateMeta> state_meta;

  int num_states() const { return static_cast<int>(a.rows()); }
  int num_inputs() const { return static_cast<int>(d.cols()); }
  int num_outputs() const { return static_cast<int>(d.rows()); }

  // Throws DimensionError unless every block and label list agrees.
  void Validate() const;
};

// Anything that can be evaluated on the complex plane: state-space models
// and the rational low-frequency models.
class TransferMatrix {
 public:
  virtual ~TransferMatrix() = default;
  virtual int size() const = 0;
  virtual Eigen::MatrixXcd Eval(std::complex<double> s) const = 0;
  // Distinct poles with zero real part (within 1e-9).
  virtual std::vector<std::complex<double>> ImaginaryAxisPoles() const = 0;
};

// Eigenvalues of A. The matrix is first split into the strongly connected
// components of its sparsity graph; each diagonal block is solved on its own,
// which keeps stiff but decoupled blocks from polluting one another.
Eigen::VectorXcd StateEigenvalues(const Eigen::MatrixXd& a);

// Evaluates a StateSpace with cached poles. Square models only.
class FrequencyResponse : public TransferMatrix {
 public:
  explicit FrequencyResponse(StateSpace ss);

  int size() const override { return ss_.num_outputs(); }
  Eigen::MatrixXcd Eval(std::complex<double> s) const override;
  std::vector<std::complex<double>> ImaginaryAxisPoles() const override;

  const StateSpace& model() const { return ss_; }
  const Eigen::VectorXcd& poles() const { return poles_; }

 private:
  StateSpace ss_;
  Eigen::VectorXcd poles_;
};

// C (sI - A)^-1 B + D. Throws SingularityError (carrying the pole) when s
// lies within 1e-9 of an eigenvalue of A.
Eigen::MatrixXcd EvalTf(const StateSpace& ss, std::complex<double> s);

// Labeled row-major text dump of A, B, C, D and the state metadata.
std::string ExportStateSpace(const StateSpace& ss);

}  // namespace netpass

#endif  // NETPASS_STATESPACE_H_
