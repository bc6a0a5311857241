#include <gtest/gtest.h>

#include <cmath>

#include "mqt/sweep.hpp"
#include "test_support.hpp"

namespace mqt::escape {
namespace {

SweepBase bias_ratio_base() { return {testing::symmetric_params(), 2.0}; }

TEST(Sweep, ForcedZeroEpsilonGivesZeros) {
  const auto grid = sweep_grid(bias_ratio_base(), {Axis::bias, 0.9, 0.95, 2}, {Axis::omega_ratio, 1.0, 3.0, 2},
                               {.epsilon_override = 0.0});
  ASSERT_EQ(grid.cells.size(), 4u);
  for (const auto& c : grid.cells) {
    EXPECT_TRUE(c.valid);
    EXPECT_EQ(c.ln_ratio, 0.0);
  }
}

TEST(Sweep, RowMajorLayoutAndAxisValues) {
  const AxisSpec a1{Axis::bias, 0.90, 0.99, 10};
  const AxisSpec a2{Axis::omega_ratio, 0.5, 5.0, 7};
  const auto grid = sweep_grid(bias_ratio_base(), a1, a2);
  ASSERT_EQ(grid.cells.size(), 70u);
  EXPECT_EQ(grid.at(0, 0).axis1, 0.90);
  EXPECT_EQ(grid.at(9, 6).axis1, 0.99);
  EXPECT_EQ(grid.at(9, 6).axis2, 5.0);
  EXPECT_EQ(grid.cells[1].axis1, 0.90);
  EXPECT_NE(grid.cells[1].axis2, 0.5);
  // Each cell equals a direct evaluation.
  const auto& c = grid.at(5, 3);
  const double direct = enhancement_ratio_ln(testing::symmetric_params(c.axis1, c.axis2));
  EXPECT_DOUBLE_EQ(c.ln_ratio, direct);
}

TEST(Sweep, BiasRatioGridProperties) {
  const auto grid = sweep_grid(bias_ratio_base(), {Axis::bias, 0.90, 0.99, 50}, {Axis::omega_ratio, 0.5, 5.0, 50});
  EXPECT_EQ(grid.valid_count(), 2500u);
  for (std::size_t i = 0; i < 50; ++i) {
    for (std::size_t j = 0; j < 50; ++j) {
      const auto& c = grid.at(i, j);
      ASSERT_TRUE(c.valid);
      // Near the critical tilt (B ~ 1 and below) rows first turn over in the
      // ratio (bias ~0.969) and then change sign (bias ~0.974 at ratio 5).
      if (c.axis1 <= 0.97) EXPECT_GT(c.ln_ratio, 0.0);
      if (c.axis1 <= 0.965 && j > 0) EXPECT_GE(c.ln_ratio, grid.at(i, j - 1).ln_ratio);
      if (c.axis1 >= 0.98) EXPECT_LT(c.ln_ratio, 0.0);
    }
  }
}

TEST(Sweep, InvalidCellsAreIsolated) {
  // With a huge forced epsilon the high-bias cells lose their barrier.
  const auto grid = sweep_grid(bias_ratio_base(), {Axis::bias, 0.80, 0.96, 5}, {Axis::omega_ratio, 1.0, 2.0, 2},
                               {.epsilon_override = 0.06});
  for (const auto& c : grid.cells) {
    const bool expect_valid = c.axis1 < 1.0 - 0.06;
    EXPECT_EQ(c.valid, expect_valid) << c.axis1;
    if (expect_valid) {
      EXPECT_GT(c.ln_ratio, 0.0);
      EXPECT_DOUBLE_EQ(c.ln_ratio, enhancement_ratio_ln(testing::symmetric_params(c.axis1, c.axis2), 0.06));
    } else {
      EXPECT_TRUE(std::isnan(c.ln_ratio));
    }
  }
}

TEST(Sweep, AllInvalidGridStillProduced) {
  const auto grid = sweep_grid(bias_ratio_base(), {Axis::bias, 1.0, 1.2, 3}, {Axis::omega_ratio, 1.0, 2.0, 3});
  EXPECT_EQ(grid.valid_count(), 0u);
  EXPECT_EQ(grid.cells.size(), 9u);
}

TEST(Sweep, OtherAxes) {
  SweepBase base{testing::symmetric_params(0.95), 2.0};
  const auto grid = sweep_grid(base, {Axis::ej_over_ec, 50.0, 400.0, 4}, {Axis::alpha, 0.05, 0.2, 4});
  EXPECT_EQ(grid.valid_count(), 16u);
  // ej_over_ec = 400, alpha = 0.2 against a hand-built junction.
  model::JunctionParams p{200.0, 200.0, 1.0, 0.2, 0.2, 1, 0.95};
  p.ein = model::ein_for_omega_ratio(p, 2.0);
  EXPECT_NEAR(grid.at(3, 3).ln_ratio, enhancement_ratio_ln(p), 1e-12);
  // Larger E_J shrinks epsilon at fixed omega ratio.
  EXPECT_LT(grid.at(3, 0).epsilon, grid.at(0, 0).epsilon);
}

TEST(Sweep, AxisErrors) {
  const auto base = bias_ratio_base();
  const AxisSpec ok{Axis::omega_ratio, 1.0, 2.0, 3};
  EXPECT_THROW(sweep_grid(base, {Axis::bias, 0.9, 0.8, 3}, ok), invalid_axis);
  EXPECT_THROW(sweep_grid(base, {Axis::bias, 0.9, 0.9, 3}, ok), invalid_axis);
  EXPECT_THROW(sweep_grid(base, {Axis::bias, 0.9, 0.95, 1}, ok), invalid_axis);
  EXPECT_THROW(sweep_grid(base, {Axis::bias, -0.1, 0.95, 3}, ok), invalid_axis);
  EXPECT_THROW(sweep_grid(base, {Axis::omega_ratio, 0.0, 2.0, 3}, {Axis::bias, 0.9, 0.95, 2}), invalid_axis);
  EXPECT_THROW(sweep_grid(base, ok, ok), invalid_axis);
  EXPECT_THROW(parse_axis("temperature"), invalid_axis);
  EXPECT_EQ(parse_axis("ej_over_ec"), Axis::ej_over_ec);
}

} // namespace
} // namespace mqt::escape
