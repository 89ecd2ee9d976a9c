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

#ifndef NETPASS_NETCASE_H_
#define NETPASS_NETCASE_H_

#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace netpass {

enum class InjectionKind { kSlack, kPV, kPQ };

struct Bus {
  int id = 0;
  double vnom = 1.0;     // nominal |V|, pu
  double shunt_b = 0.0;  // pu, capacitive when positive
  double shunt_g = 0.0;  // pu

  bool operator==(const Bus&) const = default;
};

// Series R + jX with an off-nominal tap `ratio` on the `from` side
// (from-side voltage is divided by the ratio). Line charging `b_line` is the
// total; half is placed at each terminal.
struct Branch {
  int from = 0;
  int to = 0;
  double r = 0.0;
  double x = 0.0;
  double b_line = 0.0;
  double ratio = 1.0;

  bool operator==(const Branch&) const = default;
};

// Power injected into the network by a device; loads carry negative P.
struct Injection {
  int bus = 0;
  InjectionKind kind = InjectionKind::kPQ;
  double p = 0.0;
  double q = 0.0;
  double vset = 1.0;  // used by slack and PV injections

  bool operator==(const Injection&) const = default;
};

// Q-V droop contribution k_qv (pu dQ per unit dV_n) offered by a shunt device.
struct QvContribution {
  int bus = 0;
  double k_qv = 0.0;

  bool operator==(const QvContribution&) const = default;
};

struct SystemData {
  double base_mva = 100.0;
  double omega0 = 2.0 * std::numbers::pi * 60.0;  // rad/s

  bool operator==(const SystemData&) const = default;
};

struct NetworkCase {
  SystemData system;
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  std::vector<Injection> injections;
  // Optional [regulation] section of the case file.
  std::vector<QvContribution> regulation;

  int num_buses() const { return static_cast<int>(buses.size()); }
  // Position of bus `id` in `buses`; throws TopologyError when absent.
  int BusIndex(int id) const;
  bool HasBus(int id) const;

  bool operator==(const NetworkCase&) const = default;
};

struct VariantFlags {
  bool lossless = false;    // zero every series R
  bool no_shunt_b = false;  // drop shunt and line-charging susceptance
  bool decoupled = false;   // Jacobian-level only: zero J12 and J21

  bool operator==(const VariantFlags&) const = default;
};

// Parses "lossless,no-b,decoupled" (any subset, any order, empty allowed).
VariantFlags ParseVariantFlags(std::string_view text);
std::string ToString(const VariantFlags& flags);

std::string_view ToString(InjectionKind kind);

// Parses the sectioned case format described in the README. Throws
// ParseError, ValidationError or TopologyError.
NetworkCase ParseCase(std::string_view text);
NetworkCase LoadCase(const std::filesystem::path& path);

// Writes a case that ParseCase reads back to an identical value.
std::string SerializeCase(const NetworkCase& net);

// Checks every invariant of a case: positive reactances, non-negative
// resistances and charging, one slack, known bus ids, connected graph.
void ValidateCase(const NetworkCase& net);

// Applies the lossless / no-B flags. `decoupled` does not touch the case.
NetworkCase DeriveVariant(const NetworkCase& net, const VariantFlags& flags);

}  // namespace netpass

#endif  // NETPASS_NETCASE_H_
