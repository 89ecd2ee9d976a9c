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

#ifndef NETPASS_ERRORS_H_
#define NETPASS_ERRORS_H_

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace netpass {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Case file does not follow the schema. Carries the offending field and the
// 1-based line number (0 when the problem is not tied to a line).
class ParseError : public Error {
 public:
  ParseError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

// Dangling bus references or a disconnected network graph.
class TopologyError : public Error {
 public:
  using Error::Error;
};

// Value-level invariant violated (duplicate ids, negative reactance, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A shunt capacitor without series resistance makes the network impedance
// improper (it grows without bound as s -> infinity).
class ProprietyError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Evaluation point coincides with a pole, or a linear system is singular.
class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& message,
                            std::optional<std::complex<double>> pole = {});
  const std::optional<std::complex<double>>& pole() const { return pole_; }

 private:
  std::optional<std::complex<double>> pole_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, int iterations,
                   double mismatch);
  int iterations() const { return iterations_; }
  double mismatch() const { return mismatch_; }

 private:
  int iterations_;
  double mismatch_;
};

// Operating point does not satisfy the network equations of the case.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class DegenerateOperatingPointError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Rational model evaluated exactly at its pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

class IntegratorError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace netpass

#endif  // NETPASS_ERRORS_H_
