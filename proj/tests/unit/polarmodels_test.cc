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

#include "netpass/polarmodels.h"

#include <algorithm>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "netpass/dqstamp.h"
#include "netpass/errors.h"
#include "netpass/passcheck.h"
#include "netpass/powerflow.h"
#include "test_cases.h"

namespace netpass {
namespace {

using Complex = std::complex<double>;
constexpr double kTau = 0.01;

struct Built {
  NetworkCase net;
  OperatingPoint op;
  StateSpace ydq;
  StateSpace j;
};

Built Build(const NetworkCase& net) {
  Built b{net, SolvePowerflow(net), AssembleYdq(net), {}};
  b.j = BuildJofS(b.ydq, b.op);
  return b;
}

std::vector<NetworkCase> Cases(unsigned seed, int random_count) {
  std::mt19937_64 rng(seed);
  std::vector<NetworkCase> cases = {testing::Ieee9()};
  for (int k = 0; k < random_count; ++k) {
    cases.push_back(testing::RandomCase(rng));
  }
  return cases;
}

Eigen::MatrixXcd AngleScaling(int n, Complex angle_gain) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  s.topLeftCorner(n, n) *= angle_gain;
  return s;
}

// Greedy multiset match of two spectra with a relative tolerance.
bool SameSpectrum(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                  double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    bool found = false;
    for (Eigen::Index k = 0; k < b.size(); ++k) {
      if (!used[k] &&
          std::abs(a(i) - b(k)) <= tol * std::max(1.0, std::abs(a(i)))) {
        used[k] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

TEST(InterfaceTest, BlocksFollowOperatingPoint) {
  const OperatingPoint op = SolvePowerflow(testing::Ieee9());
  const InterfaceMatrices m = BuildInterfaceMatrices(op);
  const int n = op.size();
  for (int i = 0; i < n; ++i) {
    EXPECT_EQ(m.e(i, i), op.vd(i));
    EXPECT_EQ(m.e(i, n + i), op.vq(i));
    EXPECT_EQ(m.c(n + i, n + i), -op.id(i));
    EXPECT_EQ(m.f(n + i, i), -op.vd(i));
  }
  EXPECT_NEAR(m.e.determinant(), op.vmag.array().square().prod(), 1e-9);

  OperatingPoint bad = op;
  bad.vd(3) = 0.0;
  bad.vq(3) = 0.0;
  EXPECT_THROW(BuildInterfaceMatrices(bad), DegenerateOperatingPointError);
}

TEST(JofSTest, FeedthroughHasZeroTrace) {
  for (const NetworkCase& net : Cases(61, 8)) {
    const Built b = Build(net);
    const Eigen::MatrixXd sym = b.j.d + b.j.d.transpose();
    EXPECT_LT(std::abs(sym.trace()), 1e-10);
    EXPECT_GT(sym.norm(), 1e-6);
  }
}

TEST(JofSTest, FeedthroughMatchesEntrywiseOracle) {
  for (const NetworkCase& net : Cases(67, 3)) {
    const Built b = Build(net);
    EXPECT_LT(testing::RelativeError(b.j.d, testing::InterfaceTransform(b.ydq.d, b.op)),
              1e-12);
  }
}

TEST(JofSTest, StaticGainIsLoadFlowJacobian) {
  for (const NetworkCase& net : Cases(71, 5)) {
    const Built b = Build(net);
    const JacobianLF jlf = BuildJlfAnalytic(net, b.op);
    EXPECT_LT(testing::RelativeError(EvalTf(b.j, 0.0).real(), jlf.Full()),
              1e-6);
  }
}

TEST(JofSTest, FlatOperatingPoint) {
  NetworkCase net = testing::Ieee9();
  for (Injection& inj : net.injections) {
    inj.p = inj.q = 0.0;
    inj.vset = 1.0;
  }
  net = DeriveVariant(net, {false, true, false});
  const OperatingPoint op = SolvePowerflow(net);
  const InterfaceMatrices m = BuildInterfaceMatrices(op);
  const int n = op.size();
  EXPECT_EQ(m.c.norm(), 0.0);
  EXPECT_EQ(m.f, Eigen::MatrixXd::Identity(2 * n, 2 * n));
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  e.topRightCorner(n, n).setIdentity();
  e.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  EXPECT_EQ(m.e, e);
  const StateSpace ydq = AssembleYdq(net);
  EXPECT_EQ(BuildJofS(ydq, op).d, e * ydq.d);
}

TEST(JofSTest, RealizationMatchesDefinition) {
  const Built b = Build(testing::Ieee9());
  const InterfaceMatrices m = BuildInterfaceMatrices(b.op);
  const int n = b.op.size();
  const StateSpace jdp = BuildJdp(b.j, kTau);
  const StateSpace jdf = BuildJdf(b.j, kTau);
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> omega(-1e4, 1e4);
  for (int k = 0; k < 20; ++k) {
    const Complex s(1.0, omega(rng));
    const Eigen::MatrixXcd y = EvalTf(b.ydq, s);
    const Eigen::MatrixXcd j =
        (m.e.cast<Complex>() * y + m.c.cast<Complex>()) * m.f.cast<Complex>();
    const Complex g = (1.0 + s * kTau) / s;
    EXPECT_LT((EvalTf(b.j, s) - j).norm(), 1e-9 * j.norm());
    const Eigen::MatrixXcd jdp_ref = j * AngleScaling(n, g);
    EXPECT_LT((EvalTf(jdp, s) - jdp_ref).norm(), 1e-9 * jdp_ref.norm());
    const Eigen::MatrixXcd jdf_ref = j * g;
    EXPECT_LT((EvalTf(jdf, s) - jdf_ref).norm(), 1e-9 * jdf_ref.norm());
  }
}

TEST(JdpTest, FeedthroughAndUnitPoint) {
  const Built b = Build(testing::Ieee9());
  const int n = b.op.size();
  const StateSpace jdp = BuildJdp(b.j, kTau);
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(2 * n);
  scale.head(n).setConstant(kTau);
  EXPECT_LT((jdp.d - b.j.d * scale.asDiagonal()).norm(), 1e-12 * jdp.d.norm());
  const Eigen::MatrixXcd expected =
      EvalTf(b.j, 1.0) * AngleScaling(n, 1.0 + kTau);
  EXPECT_LT((EvalTf(jdp, 1.0) - expected).norm(), 1e-9 * expected.norm());
  EXPECT_EQ(jdp.input_labels[0], "w:1");
  EXPECT_EQ(jdp.input_labels[n], "Vn:1");
}

TEST(JdpTest, AngleChannelDiagonalFollowsReactivePower) {
  for (const NetworkCase& net : Cases(79, 5)) {
    const Built b = Build(net);
    const int n = b.op.size();
    const StateSpace jdp = BuildJdp(b.j, kTau);
    const Eigen::VectorXd diag = (jdp.d + jdp.d.transpose()).diagonal();
    bool some_negative = false;
    for (int i = 0; i < n; ++i) {
      const double bus_term =
          b.op.id(i) * b.op.vq(i) - b.op.iq(i) * b.op.vd(i);
      EXPECT_NEAR(diag(i), 2.0 * kTau * bus_term, 1e-10);
      some_negative |= diag(i) < 0.0 || diag(n + i) < 0.0;
    }
    EXPECT_TRUE(some_negative);
  }
}

TEST(JdpTest, ZeroReactivePowerGivesZeroAngleDiagonal) {
  // Shunt compensation sized to cancel the line's reactive consumption at
  // both ends, so Q = 0 at every bus.
  NetworkCase net = testing::TwoBus();
  net.injections[1].kind = InjectionKind::kPV;
  const double delta = std::asin(0.05);
  const double b = (1.0 - std::cos(delta)) / 0.1;
  for (Bus& bus : net.buses) bus.shunt_b = b;
  const Built built = Build(net);
  EXPECT_LT(built.op.q.cwiseAbs().maxCoeff(), 1e-8);
  const StateSpace jdp = BuildJdp(built.j, kTau);
  const Eigen::VectorXd diag = (jdp.d + jdp.d.transpose()).diagonal();
  for (int i = 0; i < 2; ++i) {
    const double bus_term = built.op.id(i) * built.op.vq(i) -
                            built.op.iq(i) * built.op.vd(i);
    EXPECT_NEAR(diag(i), 2.0 * kTau * bus_term, 1e-12);
    EXPECT_NEAR(diag(i), 0.0, 1e-9);
  }
}

TEST(JdfTest, FeedthroughIsScaledJofS) {
  for (const NetworkCase& net : Cases(83, 5)) {
    const Built b = Build(net);
    const StateSpace jdf = BuildJdf(b.j, kTau);
    EXPECT_LT((jdf.d - kTau * b.j.d).cwiseAbs().maxCoeff(),
              1e-15 * b.j.d.cwiseAbs().maxCoeff());
    EXPECT_LT(std::abs((jdf.d + jdf.d.transpose()).trace()), 1e-10);
  }
}

TEST(JdfTest, EvaluationAtTenRadPerSecond) {
  const Built b = Build(testing::Ieee9());
  const StateSpace jdf = BuildJdf(b.j, kTau);
  const Complex s(0.0, 10.0);
  const Eigen::MatrixXcd expected = EvalTf(b.j, s) * ((1.0 + s * kTau) / s);
  EXPECT_LT((EvalTf(jdf, s) - expected).norm(), 1e-9 * expected.norm());
}

TEST(IntegratorTest, PolesAreAppendedAtOrigin) {
  for (const NetworkCase& net : Cases(89, 2)) {
    const Built b = Build(net);
    const int n = b.op.size();
    const Eigen::VectorXcd base = StateEigenvalues(b.j.a);
    for (int extra : {n, 2 * n}) {
      const StateSpace m =
          extra == n ? BuildJdp(b.j, kTau) : BuildJdf(b.j, kTau);
      Eigen::VectorXcd expected(base.size() + extra);
      expected << base, Eigen::VectorXcd::Zero(extra);
      EXPECT_TRUE(SameSpectrum(StateEigenvalues(m.a), expected, 1e-8));
    }
  }
}

TEST(IntegratorTest, RejectsNonPositiveTau) {
  const Built b = Build(testing::Ieee9());
  const JacobianLF jlf = BuildJlfAnalytic(b.net, b.op);
  for (double tau : {0.0, -0.01}) {
    EXPECT_THROW(BuildJdp(b.j, tau), ParameterError);
    EXPECT_THROW(BuildJdf(b.j, tau), ParameterError);
    EXPECT_THROW(BuildNp(jlf, tau), ParameterError);
    EXPECT_THROW(BuildNdf(jlf, tau), ParameterError);
  }
}

class LowFrequencyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    net_ = testing::Ieee9();
    jlf_ = BuildJlfAnalytic(net_, SolvePowerflow(net_));
  }
  NetworkCase net_;
  JacobianLF jlf_;
};

TEST_F(LowFrequencyTest, EvaluationAtUnity) {
  const RationalLF np = BuildNp(jlf_, 0.01);
  const Eigen::MatrixXd expected =
      jlf_.Full() * AngleScaling(jlf_.size(), 1.01).real();
  EXPECT_LT((np.Eval(1.0) - expected.cast<Complex>()).norm(),
            1e-14 * expected.norm());
  EXPECT_THROW(np.Eval(0.0), PoleError);
  EXPECT_THROW(BuildNdf(jlf_, 0.01).Eval(0.0), PoleError);
  ASSERT_EQ(np.ImaginaryAxisPoles().size(), 1u);
  EXPECT_EQ(np.ImaginaryAxisPoles()[0], Complex(0.0, 0.0));
}

TEST_F(LowFrequencyTest, NdfRecoversJacobian) {
  const RationalLF ndf = BuildNdf(jlf_, kTau);
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int k = 0; k < 10; ++k) {
    const Complex s(u(rng), u(rng));
    const Eigen::MatrixXcd back = ndf.Eval(s) * (s / (1.0 + s * kTau));
    EXPECT_LT((back - jlf_.Full().cast<Complex>()).norm(),
              1e-12 * jlf_.Full().norm());
  }
}

TEST_F(LowFrequencyTest, DecoupledLosslessHermitianPart) {
  const NetworkCase lossless = DeriveVariant(net_, {true, false, false});
  const JacobianLF j =
      Decouple(BuildJlfAnalytic(lossless, SolvePowerflow(lossless)));
  const int n = j.size();
  for (double tau : {0.01, 0.001}) {
    const RationalLF np = BuildNp(j, tau);
    for (double omega : {0.1, 3.0, 200.0}) {
      const Eigen::MatrixXcd g = np.Eval(Complex(0.0, omega));
      const Eigen::MatrixXcd h = g + g.adjoint();
      Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2 * n, 2 * n);
      expected.topLeftCorner(n, n) = 2.0 * tau * j.j11;
      expected.bottomRightCorner(n, n) = j.j22 + j.j22.transpose();
      EXPECT_LT((h - expected.cast<Complex>()).norm(),
                1e-9 * expected.norm());
    }
  }
}

TEST_F(LowFrequencyTest, ResiduesAtOrigin) {
  const int n = jlf_.size();
  const Eigen::MatrixXd sdp = ResidueAtOrigin(BuildNp(jlf_, kTau));
  EXPECT_EQ(sdp.topLeftCorner(n, n), jlf_.j11);
  EXPECT_EQ(sdp.bottomLeftCorner(n, n), jlf_.j21);
  EXPECT_EQ(sdp.rightCols(n).norm(), 0.0);
  EXPECT_FALSE(CheckResiduePsdHermitian(sdp.cast<Complex>()).pass);
  EXPECT_FALSE(CheckResiduePsdHermitian(sdp.cast<Complex>()).hermitian);

  const Eigen::MatrixXd sdf = ResidueAtOrigin(BuildNdf(jlf_, kTau));
  EXPECT_EQ(sdf, jlf_.Full());
  EXPECT_FALSE(CheckResiduePsdHermitian(sdf.cast<Complex>()).hermitian);

  const JacobianLF d = Decouple(jlf_);
  const Eigen::MatrixXd sdp_dec = ResidueAtOrigin(BuildNp(d, kTau));
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  expected.topLeftCorner(n, n) = jlf_.j11;
  EXPECT_EQ(sdp_dec, expected);
}

TEST_F(LowFrequencyTest, ResidueMatchesLimit) {
  const RationalLF ndf = BuildNdf(jlf_, kTau);
  const Complex eps(1e-7, 0.0);
  const Eigen::MatrixXcd limit = ndf.Eval(eps) * eps;
  EXPECT_LT((limit - ResidueAtOrigin(ndf).cast<Complex>()).norm(),
            1e-6 * jlf_.Full().norm());
}

}  // namespace
}  // namespace netpass
