#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "mqt/model.hpp"
#include "test_support.hpp"

namespace mqt::model {
namespace {

using testing::ParamGenerator;
using testing::symmetric_params;
constexpr double pi = std::numbers::pi;

TEST(Derive, LambdaForEqualScreening) {
  const auto d = derive(symmetric_params());
  EXPECT_DOUBLE_EQ(d.lambda_cap, 1.05);
}

TEST(Derive, SymmetricCouplingsAreExact) {
  const auto d = derive(symmetric_params());
  EXPECT_EQ(d.g_minus, 0.0);
  EXPECT_EQ(d.g_plus, 0.125);
  // Same with non-round numbers.
  const auto d2 = derive({37.3, 37.3, 12.0, 0.37, 0.37, 1, 0.0});
  EXPECT_EQ(d2.g_minus, 0.0);
  EXPECT_EQ(d2.g_plus, 0.125);
}

TEST(Derive, PlasmaFrequencyAtHundredEc) {
  const auto d = derive(symmetric_params());
  EXPECT_DOUBLE_EQ(d.omega_p, std::sqrt(200.0));
  EXPECT_NEAR(d.omega_p, 14.1421, 1e-4);
  EXPECT_DOUBLE_EQ(d.omega_p1, 10.0);
  EXPECT_DOUBLE_EQ(d.m_cm, 0.5);
  EXPECT_DOUBLE_EQ(d.m_rlt, 2.5);
}

TEST(Derive, GMinusVanishesWhenChannelWeightsBalance) {
  // ej1 * a1 == ej2 * a2 with unequal channels.
  const auto d = derive({30.0, 60.0, 10.0, 0.2, 0.1, 1, 0.0});
  EXPECT_EQ(d.g_minus, 0.0);
  EXPECT_NE(derive({30.0, 61.0, 10.0, 0.2, 0.1, 1, 0.0}).g_minus, 0.0);
}

TEST(Derive, TiltScaleFollowsKappa) {
  JunctionParams p{70.0, 30.0, 10.0, 0.1, 0.1, 1, 0.0};
  EXPECT_DOUBLE_EQ(derive(p).ej_tilt, 100.0);
  p.kappa = -1;
  EXPECT_DOUBLE_EQ(derive(p).ej_tilt, 40.0);
  EXPECT_DOUBLE_EQ(derive(p).ej_sum, 100.0);
}

TEST(Derive, RejectsInvalidParameters) {
  const JunctionParams good = symmetric_params();
  auto bad = [&](auto mutate) {
    JunctionParams p = good;
    mutate(p);
    return p;
  };
  EXPECT_THROW(derive(bad([](auto& p) { p.ej1 = 0.0; })), invalid_parameter);
  EXPECT_THROW(derive(bad([](auto& p) { p.ej2 = -1.0; })), invalid_parameter);
  EXPECT_THROW(derive(bad([](auto& p) { p.ein = 0.0; })), invalid_parameter);
  EXPECT_THROW(derive(bad([](auto& p) { p.alpha1 = 0.0; })), invalid_parameter);
  EXPECT_THROW(derive(bad([](auto& p) { p.alpha2 = -0.1; })), invalid_parameter);
  EXPECT_THROW(derive(bad([](auto& p) { p.kappa = 0; })), invalid_parameter);
  EXPECT_THROW(derive(bad([](auto& p) { p.kappa = 2; })), invalid_parameter);
  EXPECT_THROW(derive(bad([](auto& p) { p.bias = -0.1; })), invalid_parameter);
  EXPECT_THROW(derive(bad([](auto& p) { p.ej1 = std::numeric_limits<double>::quiet_NaN(); })),
               invalid_parameter);
  EXPECT_NO_THROW(derive(good));
}

TEST(Derive, KappaMessageCitesSignConstraint) {
  JunctionParams p = symmetric_params();
  p.kappa = 0;
  try {
    validate(p);
    FAIL();
  } catch (const invalid_parameter& e) {
    EXPECT_NE(std::string(e.what()).find("+1 or -1"), std::string::npos);
  }
}

TEST(Derive, InvariantsHoldOnRandomDraws) {
  ParamGenerator gen(11);
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen.params();
    const auto d = derive(p);
    EXPECT_GE(d.lambda_cap, 1.0);
    EXPECT_GT(d.omega_p, 0.0);
    EXPECT_GT(d.omega_p1, 0.0);
    EXPECT_GT(d.omega_p2, 0.0);
    EXPECT_GT(d.omega_jl, 0.0);
    EXPECT_GT(d.g_plus, 0.0);
    EXPECT_LE(d.g_plus, 0.5);
    EXPECT_LT(std::abs(d.g_minus), 1.0);
  }
}

TEST(Phases, SplitExamples) {
  const auto p = symmetric_params();
  const auto a = split_phases(0.3, 0.0, p);
  EXPECT_DOUBLE_EQ(a.theta1, 0.3);
  EXPECT_DOUBLE_EQ(a.theta2, 0.3);
  const auto b = split_phases(0.0, 1.0, p);
  EXPECT_DOUBLE_EQ(b.theta1, 0.5);
  EXPECT_DOUBLE_EQ(b.theta2, -0.5);
}

TEST(Phases, CombineExamples) {
  const auto p = symmetric_params();
  const auto a = combine_phases(0.3, 0.3, p);
  EXPECT_DOUBLE_EQ(a.theta, 0.3);
  EXPECT_EQ(a.psi, 0.0);
  const auto b = combine_phases(0.5, -0.5, p);
  EXPECT_DOUBLE_EQ(b.theta, 0.0);
  EXPECT_DOUBLE_EQ(b.psi, 1.0);
}

TEST(Phases, RoundTripAndWeightedAverage) {
  ParamGenerator gen(7);
  for (int i = 0; i < 1000; ++i) {
    auto p = gen.params();
    const double th = gen.uniform(-pi, pi);
    const double ps = gen.uniform(-pi, pi);
    const auto ch = split_phases(th, ps, p);
    const auto back = combine_phases(ch.theta1, ch.theta2, p);
    EXPECT_NEAR(back.theta, th, 1e-14);
    EXPECT_NEAR(back.psi, ps, 1e-14);

    const double x = gen.uniform(-10.0, 10.0);
    const auto same = combine_phases(x, x, p);
    EXPECT_NEAR(same.theta, x, 1e-14);
    EXPECT_EQ(same.psi, 0.0);
  }
}

TEST(Potential, Examples) {
  auto p = symmetric_params();
  EXPECT_DOUBLE_EQ(potential(0.0, 0.0, p), -(p.ej1 + p.ej2 + p.ein));
  EXPECT_DOUBLE_EQ(potential(pi, 0.0, p), p.ej1 + p.ej2 - p.ein);
  p.kappa = -1;
  EXPECT_DOUBLE_EQ(potential(0.0, 0.0, p), -(p.ej1 + p.ej2 - p.ein));
}

TEST(Potential, TiltSlopeAtOrigin) {
  const auto p = symmetric_params(0.5);
  constexpr double h = 1e-5;
  const double fd = (potential(h, 0.0, p) - potential(-h, 0.0, p)) / (2.0 * h);
  const double ej_tilt = derive(p).ej_tilt;
  EXPECT_NEAR(fd, -ej_tilt * 0.5, 1e-6 * ej_tilt);
  EXPECT_DOUBLE_EQ(potential_gradient(0.0, 0.0, p).d_theta, -ej_tilt * 0.5);
}

TEST(Gradient, ZeroAtUnbiasedMinimum) {
  const auto g = potential_gradient(0.0, 0.0, symmetric_params());
  EXPECT_EQ(g.d_theta, 0.0);
  EXPECT_EQ(g.d_psi, 0.0);
}

double fd_rel_error(double analytic, double fd) { return std::abs(analytic - fd) / std::max(std::abs(analytic), 1.0); }

TEST(Gradient, MatchesFiniteDifferencesOnGrid) {
  constexpr double h = 1e-5;
  for (const auto& p : {testing::asymmetric_params(0.3), symmetric_params(0.7),
                        JunctionParams{20.0, 80.0, 40.0, 0.4, 0.02, -1, 0.2}}) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const double th = -pi + 2.0 * pi * i / 49.0;
        const double ps = -pi + 2.0 * pi * j / 49.0;
        const auto g = potential_gradient(th, ps, p);
        const double ft = (potential(th + h, ps, p) - potential(th - h, ps, p)) / (2 * h);
        const double fp = (potential(th, ps + h, p) - potential(th, ps - h, p)) / (2 * h);
        worst = std::max({worst, fd_rel_error(g.d_theta, ft), fd_rel_error(g.d_psi, fp)});
      }
    }
    EXPECT_LT(worst, 1e-6);
  }
  // The point named in the examples.
  const auto p = testing::asymmetric_params(0.4);
  const auto g = potential_gradient(0.2, 0.1, p);
  EXPECT_LT(fd_rel_error(g.d_theta, (potential(0.2 + h, 0.1, p) - potential(0.2 - h, 0.1, p)) / (2 * h)), 1e-6);
  EXPECT_LT(fd_rel_error(g.d_psi, (potential(0.2, 0.1 + h, p) - potential(0.2, 0.1 - h, p)) / (2 * h)), 1e-6);
}

TEST(Gradient, SymmetricParamsHaveNoPsiForceOnPsiZeroLine) {
  const auto p = symmetric_params(0.3);
  for (int i = 0; i <= 200; ++i) {
    const double th = -3.0 * pi + 6.0 * pi * i / 200.0;
    EXPECT_EQ(potential_gradient(th, 0.0, p).d_psi, 0.0) << "theta=" << th;
  }
}

TEST(Hessian, MatchesFiniteDifferencesOfGradient) {
  const auto p = testing::asymmetric_params(0.3);
  constexpr double h = 1e-6;
  for (double th : {-2.0, -0.4, 0.0, 0.9, 2.5}) {
    for (double ps : {-1.5, 0.0, 0.3, 2.0}) {
      const auto hs = potential_hessian(th, ps, p);
      const auto gp = potential_gradient(th + h, ps, p), gm = potential_gradient(th - h, ps, p);
      const auto qp = potential_gradient(th, ps + h, p), qm = potential_gradient(th, ps - h, p);
      EXPECT_NEAR(hs.theta_theta, (gp.d_theta - gm.d_theta) / (2 * h), 1e-6 * 100);
      EXPECT_NEAR(hs.theta_psi, (gp.d_psi - gm.d_psi) / (2 * h), 1e-6 * 100);
      EXPECT_NEAR(hs.theta_psi, (qp.d_theta - qm.d_theta) / (2 * h), 1e-6 * 100);
      EXPECT_NEAR(hs.psi_psi, (qp.d_psi - qm.d_psi) / (2 * h), 1e-6 * 100);
    }
  }
}

TEST(Potential, GlobalMinimumAtOriginForPositiveKappa) {
  ParamGenerator gen(3);
  for (int trial = 0; trial < 5; ++trial) {
    auto p = gen.params();
    p.kappa = 1;
    p.bias = 0.0;
    const double origin = potential(0.0, 0.0, p);
    double lowest = origin;
    for (int i = 0; i <= 200; ++i) {
      for (int j = 0; j <= 200; ++j) {
        lowest = std::min(lowest, potential(-pi + 2 * pi * i / 200.0, -pi + 2 * pi * j / 200.0, p));
      }
    }
    EXPECT_EQ(lowest, origin);
  }
}

TEST(Potential, EinForOmegaRatio) {
  const auto p = symmetric_params(0.0, 2.0);
  EXPECT_DOUBLE_EQ(p.ein, 125.0);
  const auto d = derive(p);
  EXPECT_NEAR(d.omega_p / d.omega_jl, 2.0, 1e-14);
}

} // namespace
} // namespace mqt::model
