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


#ifndef NETPASS_POLARMODELS_H_
#define NETPASS_POLARMODELS_H_

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "netpass/powerflow.h"
#include "netpass/statespace.h"

namespace netpass {

// Operating-point matrices mapping (phi, V_n) to (v_D, v_Q) and (i, v) to
// (P, Q); every 2x2 bus block is
//   E = [[vD, vQ], [-vQ, vD]],  C = [[iD, iQ], [iQ, -iD]],
//   F = [[vQ, vD], [-vD, vQ]],
// laid out in the stacked D-then-Q (or phi-then-V_n) port order.
struct InterfaceMatrices {
  Eigen::MatrixXd e;
  Eigen::MatrixXd c;
  Eigen::MatrixXd f;
};

// Throws DegenerateOperatingPointError when some |V| = 0.
InterfaceMatrices BuildInterfaceMatrices(const OperatingPoint& op);

// J(s) = (E Y_DQ(s) + C) F as a realization (A_y, B_y F, E C_y,
// (E D_y + C) F). Inputs (phi, V_n), outputs (P, Q).
StateSpace BuildJofS(const StateSpace& ydq, const OperatingPoint& op);

// J(s) diag(((1 + s tau) / s) I, I) with n integrator states appended.
StateSpace BuildJdp(const StateSpace& j, double tau);

// J(s) (1 + s tau) / s with 2n integrator states appended.
StateSpace BuildJdf(const StateSpace& j, double tau);

enum class LowFrequencyKind { kNp, kNdf };

// Constant Jacobian times a scalar (1 + s tau) / s on the angle channels
// (N_p) or on every channel (N_df). Simple pole at s = 0 only.
class RationalLF : public TransferMatrix {
 public:
  RationalLF(LowFrequencyKind kind, Eigen::MatrixXd jlf, double tau);

  int size() const override { return static_cast<int>(jlf_.rows()); }
  // Throws PoleError at s = 0.
  Eigen::MatrixXcd Eval(std::complex<double> s) const override;
  std::vector<std::complex<double>> ImaginaryAxisPoles() const override {
    return {std::complex<double>(0.0, 0.0)};
  }

  LowFrequencyKind kind() const { return kind_; }
  const Eigen::MatrixXd& jlf() const { return jlf_; }
  double tau() const { return tau_; }

 private:
  LowFrequencyKind kind_;
  Eigen::MatrixXd jlf_;
  double tau_;
};

RationalLF BuildNp(const JacobianLF& jlf, double tau);
RationalLF BuildNdf(const JacobianLF& jlf, double tau);

// lim s->0 of s N(s): [[J11, 0], [J21, 0]] for N_p, J for N_df.
Eigen::MatrixXd ResidueAtOrigin(const RationalLF& model);

}  // namespace netpass

#endif  // NETPASS_POLARMODELS_H_
