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

#include "netpass/errors.h"

#include <utility>

namespace netpass {

ParseError::ParseError(std::string field, int line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + field + ": " +
                           message
                     : field + ": " + message),
      field_(std::move(field)),
      line_(line) {}

SingularityError::SingularityError(const std::string& message,
                                   std::optional<std::complex<double>> pole)
    : Error(message), pole_(pole) {}

ConvergenceError::ConvergenceError(const std::string& message, int iterations,
                                   double mismatch)
    : Error(message), iterations_(iterations), mismatch_(mismatch) {}

}  // namespace netpass
