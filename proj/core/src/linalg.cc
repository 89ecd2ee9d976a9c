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

#include "netpass/linalg.h"

#include <cmath>

#include "netpass/errors.h"

namespace netpass {

Eigen::VectorXd SymmetricEigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("SymmetricEigenvalues: matrix is not square");
  }
  if (m.rows() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();  // ascending
}

Eigen::VectorXd HermitianEigenvalues(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) {
    throw DimensionError("HermitianEigenvalues: matrix is not square");
  }
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd embedding(2 * n, 2 * n);
  embedding << h.real(), -h.imag(), h.imag(), h.real();
  const Eigen::VectorXd doubled = SymmetricEigenvalues(embedding);
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) values(i) = doubled(2 * i);
  return values;
}

double HermitianMinEigenvalue(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return 0.0;
  return HermitianEigenvalues(h)(0);
}

Eigen::MatrixXd AngleModeComplement(int n) {
  const int dim = 2 * n;
  Eigen::VectorXd mode = Eigen::VectorXd::Zero(dim);
  mode.head(n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  // Householder reflector maps e_0 onto the mode; its other columns are an
  // orthonormal basis of the complement.
  Eigen::VectorXd v = mode;
  v(0) -= 1.0;
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(dim, dim);
  const double vv = v.squaredNorm();
  if (vv > 0.0) q -= 2.0 * v * v.transpose() / vv;
  return q.rightCols(dim - 1);
}

double SnapForDisplay(double value, double zero_band) {
  return std::abs(value) < zero_band ? 0.0 : value;
}

}  // namespace netpass
