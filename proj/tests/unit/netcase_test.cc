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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "netpass/errors.h"
#include "test_cases.h"

namespace netpass {
namespace {

constexpr char kTwoBusText[] = R"(
[system]
base_mva = 100
omega0 = 376.99111843077515

[buses]
1 1.0 0.0 0.0
2 1.0 0.0 0.0

[branches]
1 2 0.0 0.1 0.0 1.0

[injections]
1 slack 0.0 0.0 1.0
2 pq -0.5 0.0 1.0
)";

std::string Replace(std::string text, const std::string& from,
                    const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

TEST(NetcaseTest, ParsesNineBusFixture) {
  const NetworkCase net = testing::Ieee9();
  EXPECT_EQ(net.num_buses(), 9);
  EXPECT_EQ(net.branches.size(), 9u);
  EXPECT_EQ(net.injections.size(), 6u);
  EXPECT_DOUBLE_EQ(net.system.base_mva, 100.0);
  EXPECT_NEAR(net.system.omega0, 2.0 * std::numbers::pi * 60.0, 1e-12);
  int slack = 0;
  for (const Injection& inj : net.injections) {
    if (inj.kind == InjectionKind::kSlack) {
      ++slack;
      EXPECT_EQ(inj.bus, 4);
      EXPECT_DOUBLE_EQ(inj.vset, 1.04);
    }
  }
  EXPECT_EQ(slack, 1);
}

TEST(NetcaseTest, ParsesInlineTwoBusCase) {
  const NetworkCase net = ParseCase(kTwoBusText);
  ASSERT_EQ(net.num_buses(), 2);
  ASSERT_EQ(net.branches.size(), 1u);
  EXPECT_DOUBLE_EQ(net.branches[0].x, 0.1);
  EXPECT_EQ(net.BusIndex(2), 1);
  EXPECT_FALSE(net.HasBus(3));
  EXPECT_EQ(net, testing::TwoBus());
}

TEST(NetcaseTest, UnknownBusIsTopologyError) {
  const std::string text =
      Replace(kTwoBusText, "1 2 0.0 0.1 0.0 1.0", "1 99 0.0 0.1 0.0 1.0");
  EXPECT_THROW(ParseCase(text), TopologyError);
}

TEST(NetcaseTest, DisconnectedGraphIsTopologyError) {
  const std::string text = Replace(kTwoBusText, "2 1.0 0.0 0.0",
                                   "2 1.0 0.0 0.0\n3 1.0 0.0 0.0");
  EXPECT_THROW(ParseCase(text), TopologyError);
}

TEST(NetcaseTest, DuplicateBusIsValidationError) {
  const std::string text =
      Replace(kTwoBusText, "2 1.0 0.0 0.0", "2 1.0 0.0 0.0\n2 1.0 0.0 0.0");
  EXPECT_THROW(ParseCase(text), ValidationError);
}

TEST(NetcaseTest, InvalidValuesAreValidationErrors) {
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "0.0 0.1 0.0", "0.0 -0.1 0.0")),
               ValidationError);
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "1 2 0.0 0.1", "1 2 -0.01 0.1")),
               ValidationError);
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "1 2 0.0 0.1 0.0 1.0",
                                 "1 2 0.0 0.1 0.0 0.0")),
               ValidationError);
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "2 pq", "2 slack")),
               ValidationError);
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "1 slack", "1 pq")),
               ValidationError);
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "base_mva = 100",
                                 "base_mva = -1")),
               ValidationError);
}

TEST(NetcaseTest, MalformedNumberReportsFieldAndLine) {
  const std::string text =
      Replace(kTwoBusText, "1 2 0.0 0.1 0.0 1.0", "1 2 0.0 abc 0.0 1.0");
  try {
    ParseCase(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "branches.x");
    EXPECT_EQ(e.line(), 11);
  }
}

TEST(NetcaseTest, StructuralParseErrors) {
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "[buses]", "[busses]")),
               ParseError);
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "2 pq", "2 load")), ParseError);
  EXPECT_THROW(ParseCase(Replace(kTwoBusText, "1 2 0.0 0.1 0.0 1.0", "1 2")),
               ParseError);
  EXPECT_THROW(ParseCase("1 1.0 0.0 0.0\n"), ParseError);
  EXPECT_THROW(LoadCase("/nonexistent/path.case"), ParseError);
}

TEST(NetcaseTest, RegulationSectionRoundTrips) {
  NetworkCase net = testing::Ieee9();
  net.regulation = {{1, 0.65}, {5, 0.5}};
  const NetworkCase back = ParseCase(SerializeCase(net));
  EXPECT_EQ(back, net);
  net.regulation.push_back({42, 0.1});
  EXPECT_THROW(ValidateCase(net), TopologyError);
}

TEST(NetcaseTest, SerializationIsAFixedPoint) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const NetworkCase net = testing::RandomCase(rng);
    const std::string once = SerializeCase(net);
    const NetworkCase parsed = ParseCase(once);
    EXPECT_EQ(parsed, net);
    EXPECT_EQ(SerializeCase(parsed), once);
  }
}

TEST(NetcaseTest, DeriveVariant) {
  const NetworkCase net = testing::Ieee9();
  EXPECT_EQ(DeriveVariant(net, {}), net);
  EXPECT_EQ(DeriveVariant(net, {false, false, true}), net);

  const VariantFlags both{true, true, false};
  const NetworkCase v = DeriveVariant(net, both);
  EXPECT_EQ(DeriveVariant(v, both), v);
  for (const Branch& b : v.branches) {
    EXPECT_EQ(b.r, 0.0);
    EXPECT_EQ(b.b_line, 0.0);
  }
  for (const Bus& b : v.buses) EXPECT_EQ(b.shunt_b, 0.0);
  // Everything else untouched.
  for (std::size_t k = 0; k < v.branches.size(); ++k) {
    EXPECT_EQ(v.branches[k].x, net.branches[k].x);
    EXPECT_EQ(v.branches[k].ratio, net.branches[k].ratio);
  }
  EXPECT_EQ(v.injections, net.injections);
}

TEST(NetcaseTest, VariantFlagParsing) {
  EXPECT_EQ(ParseVariantFlags(""), VariantFlags{});
  EXPECT_EQ(ParseVariantFlags("decoupled,lossless"),
            (VariantFlags{true, false, true}));
  EXPECT_EQ(ParseVariantFlags("no-b"), (VariantFlags{false, true, false}));
  EXPECT_THROW(ParseVariantFlags("lossy"), ParameterError);
  const VariantFlags all{true, true, true};
  EXPECT_EQ(ParseVariantFlags(ToString(all)), all);
}

}  // namespace
}  // namespace netpass
