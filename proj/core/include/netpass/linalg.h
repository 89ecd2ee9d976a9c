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

#ifndef NETPASS_LINALG_H_
#define NETPASS_LINALG_H_

#include <Eigen/Dense>

namespace netpass {

// Eigenvalues of a real symmetric matrix, ascending. Only the lower triangle
// is read.
Eigen::VectorXd SymmetricEigenvalues(const Eigen::MatrixXd& m);

// Eigenvalues of a complex Hermitian matrix, ascending, computed from the
// real-symmetric embedding [[Re H, -Im H], [Im H, Re H]]. Every eigenvalue of
// H appears twice in the embedding; the duplicates are dropped.
Eigen::VectorXd HermitianEigenvalues(const Eigen::MatrixXcd& h);

double HermitianMinEigenvalue(const Eigen::MatrixXcd& h);

// Orthonormal basis (2n x (2n-1)) of the complement of the uniform angle
// direction [1_n; 0_n] in the (angle, magnitude) port space.
Eigen::MatrixXd AngleModeComplement(int n);

// Values within `zero_band` of zero are printed as 0; numerics are untouched.
double SnapForDisplay(double value, double zero_band = 1e-9);

}  // namespace netpass

#endif  // NETPASS_LINALG_H_
