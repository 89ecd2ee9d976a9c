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


#ifndef NETPASS_PASSIVATE_H_
#define NETPASS_PASSIVATE_H_

#include <string_view>
#include <vector>

#include "netpass/netcase.h"
#include "netpass/powerflow.h"

namespace netpass {

using RegulationSet = std::vector<QvContribution>;

// "bus:k,bus:k,...". Throws ParameterError on malformed text and
// ValidationError on negative k.
RegulationSet ParseRegulationSet(std::string_view text);

// Throws TopologyError for unknown buses, ValidationError for k < 0.
void ValidateRegulationSet(const RegulationSet& reg, const NetworkCase& net);

// J22[k, k] += k_qv for every entry. Unknown bus -> ValidationError.
JacobianLF ApplyQvContribution(const JacobianLF& j, const RegulationSet& reg);

// lambda_min of J + J' restricted to the complement of [1_n; 0_n].
double ReducedMinEigenvalue(const JacobianLF& j);

struct KqvSearchOptions {
  double tolerance = 1e-6;  // bracket width on k
  double cap = 1e3;
  double psd_tolerance = 1e-9;
};

// Smallest uniform k at `buses` making ReducedMinEigenvalue >= 0. Throws
// InfeasibleError when even the cap does not suffice.
double MinUniformKqv(const JacobianLF& j, const std::vector<int>& buses,
                     const KqvSearchOptions& options = {});

}  // namespace netpass

#endif  // NETPASS_PASSIVATE_H_
