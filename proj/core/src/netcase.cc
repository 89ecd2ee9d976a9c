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

#include "netpass/netcase.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "netpass/errors.h"

namespace netpass {
namespace {

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> SplitWhitespace(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double ParseDouble(const std::string& token, const std::string& field,
                   int line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(field, line, "expected a number, got '" + token + "'");
  }
  return value;
}

int ParseInt(const std::string& token, const std::string& field, int line) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(field, line, "expected an integer, got '" + token + "'");
  }
  return value;
}

InjectionKind ParseKind(const std::string& token, int line) {
  const std::string k = Lower(token);
  if (k == "slack") return InjectionKind::kSlack;
  if (k == "pv") return InjectionKind::kPV;
  if (k == "pq") return InjectionKind::kPQ;
  throw ParseError("injections.kind", line,
                   "expected slack|pv|pq, got '" + token + "'");
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct SectionSpec {
  const char* name;
  std::vector<const char*> columns;
};

const SectionSpec kBusSpec{"buses", {"id", "vnom", "shunt_b", "shunt_g"}};
const SectionSpec kBranchSpec{"branches",
                              {"from", "to", "r", "x", "b_line", "ratio"}};
const SectionSpec kInjectionSpec{"injections",
                                 {"bus", "kind", "p", "q", "vset"}};
const SectionSpec kRegulationSpec{"regulation", {"bus", "k_qv"}};

std::string Field(const SectionSpec& spec, size_t column) {
  return std::string(spec.name) + "." + spec.columns[column];
}

void CheckColumns(const SectionSpec& spec, const std::vector<std::string>& tok,
                  int line) {
  if (tok.size() != spec.columns.size()) {
    throw ParseError(spec.name, line,
                     "expected " + std::to_string(spec.columns.size()) +
                         " columns, got " + std::to_string(tok.size()));
  }
}

}  // namespace

int NetworkCase::BusIndex(int id) const {
  for (size_t i = 0; i < buses.size(); ++i) {
    if (buses[i].id == id) return static_cast<int>(i);
  }
  throw TopologyError("bus " + std::to_string(id) + " does not exist");
}

bool NetworkCase::HasBus(int id) const {
  return std::any_of(buses.begin(), buses.end(),
                     [id](const Bus& b) { return b.id == id; });
}

std::string_view ToString(InjectionKind kind) {
  switch (kind) {
    case InjectionKind::kSlack:
      return "slack";
    case InjectionKind::kPV:
      return "pv";
    case InjectionKind::kPQ:
      return "pq";
  }
  return "pq";
}

VariantFlags ParseVariantFlags(std::string_view text) {
  VariantFlags flags;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    const std::string f = Lower(Trim(item));
    if (f.empty() || f == "base" || f == "none") continue;
    if (f == "lossless") {
      flags.lossless = true;
    } else if (f == "no-b" || f == "no_b" || f == "nob") {
      flags.no_shunt_b = true;
    } else if (f == "decoupled") {
      flags.decoupled = true;
    } else {
      throw ParameterError("unknown variant flag '" + f +
                           "' (expected lossless, no-b, decoupled)");
    }
  }
  return flags;
}

std::string ToString(const VariantFlags& flags) {
  std::string out;
  auto add = [&out](const char* s) {
    if (!out.empty()) out += ",";
    out += s;
  };
  if (flags.lossless) add("lossless");
  if (flags.no_shunt_b) add("no-b");
  if (flags.decoupled) add("decoupled");
  return out.empty() ? "base" : out;
}

NetworkCase ParseCase(std::string_view text) {
  NetworkCase net;
  std::string section;
  bool have_system = false;
  bool have_base = false;
  bool have_omega = false;
  std::set<std::string> seen_sections;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content =
        Trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;

    if (content.front() == '[') {
      if (content.back() != ']') {
        throw ParseError("section", line, "unterminated section header");
      }
      section = Lower(Trim(content.substr(1, content.size() - 2)));
      static const std::set<std::string> kKnown = {
          "system", "buses", "branches", "injections", "regulation"};
      if (!kKnown.count(section)) {
        throw ParseError("section", line, "unknown section '" + section + "'");
      }
      seen_sections.insert(section);
      if (section == "system") have_system = true;
      continue;
    }
    if (section.empty()) {
      throw ParseError("section", line, "data outside of any section");
    }

    if (section == "system") {
      const auto eq = content.find('=');
      if (eq == std::string::npos) {
        throw ParseError("system", line, "expected 'key = value'");
      }
      const std::string key = Lower(Trim(content.substr(0, eq)));
      const std::string value = Trim(content.substr(eq + 1));
      if (key == "base_mva") {
        net.system.base_mva = ParseDouble(value, "system.base_mva", line);
        have_base = true;
      } else if (key == "omega0") {
        if (have_omega) {
          throw ParseError("system.omega0", line,
                           "nominal frequency given twice");
        }
        net.system.omega0 = ParseDouble(value, "system.omega0", line);
        have_omega = true;
      } else if (key == "frequency_hz") {
        if (have_omega) {
          throw ParseError("system.frequency_hz", line,
                           "nominal frequency given twice");
        }
        net.system.omega0 = 2.0 * std::numbers::pi *
                            ParseDouble(value, "system.frequency_hz", line);
        have_omega = true;
      } else {
        throw ParseError("system." + key, line, "unknown key");
      }
      continue;
    }

    const std::vector<std::string> tok = SplitWhitespace(content);
    if (section == "buses") {
      CheckColumns(kBusSpec, tok, line);
      Bus b;
      b.id = ParseInt(tok[0], Field(kBusSpec, 0), line);
      b.vnom = ParseDouble(tok[1], Field(kBusSpec, 1), line);
      b.shunt_b = ParseDouble(tok[2], Field(kBusSpec, 2), line);
      b.shunt_g = ParseDouble(tok[3], Field(kBusSpec, 3), line);
      net.buses.push_back(b);
    } else if (section == "branches") {
      CheckColumns(kBranchSpec, tok, line);
      Branch br;
      br.from = ParseInt(tok[0], Field(kBranchSpec, 0), line);
      br.to = ParseInt(tok[1], Field(kBranchSpec, 1), line);
      br.r = ParseDouble(tok[2], Field(kBranchSpec, 2), line);
      br.x = ParseDouble(tok[3], Field(kBranchSpec, 3), line);
      br.b_line = ParseDouble(tok[4], Field(kBranchSpec, 4), line);
      br.ratio = ParseDouble(tok[5], Field(kBranchSpec, 5), line);
      net.branches.push_back(br);
    } else if (section == "injections") {
      CheckColumns(kInjectionSpec, tok, line);
      Injection inj;
      inj.bus = ParseInt(tok[0], Field(kInjectionSpec, 0), line);
      inj.kind = ParseKind(tok[1], line);
      inj.p = ParseDouble(tok[2], Field(kInjectionSpec, 2), line);
      inj.q = ParseDouble(tok[3], Field(kInjectionSpec, 3), line);
      inj.vset = ParseDouble(tok[4], Field(kInjectionSpec, 4), line);
      net.injections.push_back(inj);
    } else if (section == "regulation") {
      CheckColumns(kRegulationSpec, tok, line);
      QvContribution c;
      c.bus = ParseInt(tok[0], Field(kRegulationSpec, 0), line);
      c.k_qv = ParseDouble(tok[1], Field(kRegulationSpec, 1), line);
      net.regulation.push_back(c);
    }
  }

  if (!have_system) throw ParseError("system", 0, "missing [system] section");
  if (!have_base) throw ParseError("system.base_mva", 0, "missing key");
  if (!have_omega) {
    throw ParseError("system.omega0", 0,
                     "missing key (give omega0 or frequency_hz)");
  }
  for (const char* required : {"buses", "injections"}) {
    if (!seen_sections.count(required)) {
      throw ParseError(required, 0, "missing section");
    }
  }

  ValidateCase(net);
  return net;
}

NetworkCase LoadCase(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("file", 0, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCase(buf.str());
}

std::string SerializeCase(const NetworkCase& net) {
  std::ostringstream out;
  out << "[system]\n";
  out << "base_mva = " << FormatDouble(net.system.base_mva) << "\n";
  out << "omega0 = " << FormatDouble(net.system.omega0) << "\n\n";
  out << "[buses]\n# id vnom shunt_b shunt_g\n";
  for (const Bus& b : net.buses) {
    out << b.id << " " << FormatDouble(b.vnom) << " "
        << FormatDouble(b.shunt_b) << " " << FormatDouble(b.shunt_g) << "\n";
  }
  out << "\n[branches]\n# from to r x b_line ratio\n";
  for (const Branch& br : net.branches) {
    out << br.from << " " << br.to << " " << FormatDouble(br.r) << " "
        << FormatDouble(br.x) << " " << FormatDouble(br.b_line) << " "
        << FormatDouble(br.ratio) << "\n";
  }
  out << "\n[injections]\n# bus kind p q vset\n";
  for (const Injection& inj : net.injections) {
    out << inj.bus << " " << ToString(inj.kind) << " " << FormatDouble(inj.p)
        << " " << FormatDouble(inj.q) << " " << FormatDouble(inj.vset)
        << "\n";
  }
  if (!net.regulation.empty()) {
    out << "\n[regulation]\n# bus k_qv\n";
    for (const QvContribution& c : net.regulation) {
      out << c.bus << " " << FormatDouble(c.k_qv) << "\n";
    }
  }
  return out.str();
}

void ValidateCase(const NetworkCase& net) {
  if (!(net.system.base_mva > 0.0)) {
    throw ValidationError("system.base_mva must be positive");
  }
  if (!(net.system.omega0 > 0.0)) {
    throw ValidationError("system.omega0 must be positive");
  }
  if (net.buses.empty()) throw ValidationError("case has no buses");

  std::map<int, int> index;
  for (size_t i = 0; i < net.buses.size(); ++i) {
    const Bus& b = net.buses[i];
    if (!index.emplace(b.id, static_cast<int>(i)).second) {
      throw ValidationError("duplicate bus id " + std::to_string(b.id));
    }
    if (!(b.vnom > 0.0)) {
      throw ValidationError("bus " + std::to_string(b.id) +
                            ": vnom must be positive");
    }
    if (b.shunt_g < 0.0) {
      throw ValidationError("bus " + std::to_string(b.id) +
                            ": shunt_g must be non-negative");
    }
  }
  auto require_bus = [&index](int id, const std::string& what) {
    if (!index.count(id)) {
      throw TopologyError(what + " references bus " + std::to_string(id) +
                          ", which does not exist");
    }
  };

  for (const Branch& br : net.branches) {
    const std::string name =
        "branch " + std::to_string(br.from) + "-" + std::to_string(br.to);
    require_bus(br.from, name);
    require_bus(br.to, name);
    if (br.from == br.to) throw ValidationError(name + ": self loop");
    if (br.r < 0.0) throw ValidationError(name + ": r must be >= 0");
    if (!(br.x > 0.0)) throw ValidationError(name + ": x must be > 0");
    if (br.b_line < 0.0) throw ValidationError(name + ": b_line must be >= 0");
    if (!(br.ratio > 0.0)) throw ValidationError(name + ": ratio must be > 0");
  }

  int slack_count = 0;
  std::set<int> voltage_controlled;
  for (const Injection& inj : net.injections) {
    require_bus(inj.bus, "injection");
    if (inj.kind == InjectionKind::kPQ) continue;
    if (inj.kind == InjectionKind::kSlack) ++slack_count;
    if (!(inj.vset > 0.0)) {
      throw ValidationError("injection at bus " + std::to_string(inj.bus) +
                            ": vset must be positive");
    }
    if (!voltage_controlled.insert(inj.bus).second) {
      throw ValidationError("bus " + std::to_string(inj.bus) +
                            " has more than one voltage-controlling injection");
    }
  }
  if (slack_count != 1) {
    throw ValidationError("case needs exactly one slack injection, found " +
                          std::to_string(slack_count));
  }

  for (const QvContribution& c : net.regulation) {
    require_bus(c.bus, "regulation entry");
    if (c.k_qv < 0.0) {
      throw ValidationError("regulation at bus " + std::to_string(c.bus) +
                            ": k_qv must be >= 0");
    }
  }

  // Connectivity by breadth-first search over the branch graph.
  const int n = net.num_buses();
  std::vector<std::vector<int>> adj(n);
  for (const Branch& br : net.branches) {
    const int f = index.at(br.from);
    const int t = index.at(br.to);
    adj[f].push_back(t);
    adj[t].push_back(f);
  }
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  if (reached != n) {
    for (int i = 0; i < n; ++i) {
      if (!seen[i]) {
        throw TopologyError("network is not connected: bus " +
                            std::to_string(net.buses[i].id) +
                            " is unreachable from bus " +
                            std::to_string(net.buses[0].id));
      }
    }
  }
}

NetworkCase DeriveVariant(const NetworkCase& net, const VariantFlags& flags) {
  NetworkCase out = net;
  if (flags.lossless) {
    for (Branch& br : out.branches) br.r = 0.0;
  }
  if (flags.no_shunt_b) {
    for (Bus& b : out.buses) b.shunt_b = 0.0;
    for (Branch& br : out.branches) br.b_line = 0.0;
  }
  return out;
}

}  // namespace netpass
