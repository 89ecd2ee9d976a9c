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

#include "netpass/passivate.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "netpass/errors.h"
#include "netpass/linalg.h"

namespace netpass {
namespace {

RegulationSet Uniform(const std::vector<int>& buses, double k) {
  RegulationSet reg;
  for (int b : buses) reg.push_back({b, k});
  return reg;
}

template <typename T>
bool ParseNumber(const std::string& text, T& value) {
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  if (first == std::string::npos) return false;
  const char* begin = text.data() + first;
  const char* end = text.data() + last + 1;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

RegulationSet ParseRegulationSet(std::string_view text) {
  RegulationSet reg;
  std::istringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ParameterError("regulation entry '" + item +
                           "' must look like bus:k");
    }
    QvContribution c;
    if (!ParseNumber(item.substr(0, colon), c.bus) ||
        !ParseNumber(item.substr(colon + 1), c.k_qv)) {
      throw ParameterError("regulation entry '" + item +
                           "' must look like bus:k");
    }
    if (c.k_qv < 0.0) {
      throw ValidationError("regulation k_qv must be >= 0");
    }
    reg.push_back(c);
  }
  return reg;
}

void ValidateRegulationSet(const RegulationSet& reg, const NetworkCase& net) {
  for (const QvContribution& c : reg) {
    if (!net.HasBus(c.bus)) {
      throw TopologyError("regulation references bus " +
                          std::to_string(c.bus) + ", which does not exist");
    }
    if (c.k_qv < 0.0) throw ValidationError("regulation k_qv must be >= 0");
  }
}

JacobianLF ApplyQvContribution(const JacobianLF& j, const RegulationSet& reg) {
  JacobianLF out = j;
  for (const QvContribution& c : reg) {
    auto it = std::find(j.bus_ids.begin(), j.bus_ids.end(), c.bus);
    if (it == j.bus_ids.end()) {
      throw ValidationError("regulation bus " + std::to_string(c.bus) +
                            " is not part of the Jacobian");
    }
    if (c.k_qv < 0.0) throw ValidationError("regulation k_qv must be >= 0");
    const auto k = std::distance(j.bus_ids.begin(), it);
    out.j22(k, k) += c.k_qv;
  }
  return out;
}

double ReducedMinEigenvalue(const JacobianLF& j) {
  const Eigen::MatrixXd z = AngleModeComplement(j.size());
  return SymmetricEigenvalues(z.transpose() * j.Symmetrized() * z)(0);
}

double MinUniformKqv(const JacobianLF& j, const std::vector<int>& buses,
                     const KqvSearchOptions& options) {
  if (buses.empty()) throw ParameterError("need at least one bus for k_qv");
  auto feasible = [&](double k) {
    return ReducedMinEigenvalue(ApplyQvContribution(j, Uniform(buses, k))) >=
           -options.psd_tolerance;
  };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (!feasible(hi)) {
    lo = hi;
    if (hi >= options.cap) {
      std::ostringstream msg;
      msg << "no uniform k_qv up to " << options.cap
          << " removes the negative eigenvalues at the chosen buses";
      throw InfeasibleError(msg.str());
    }
    hi = std::min(2.0 * hi, options.cap);
  }
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace netpass
