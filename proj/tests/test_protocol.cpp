#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qar/protocol.hpp"
#include "support.hpp"

using namespace qar;

namespace {

FridgeParams fig2_params(double g = 0.2) {
  return FridgeParams(1.0, 2.0, 1.0, g, 50.0, 50.0, 100.0);
}

BathSpec fig2_bath(BathModel model) {
  BathSpec bath;
  bath.model = model;
  bath.alpha = 1e-3;
  bath.omega_cutoff = 1e3;
  return bath;
}

} // namespace

TEST(RelaxationRate, HandEvaluatedMean) {
  EXPECT_NEAR(relaxation_rate_gamma_r(fig2_params(),
                                      fig2_bath(BathModel::ModelIStrong)) /
                  0.04995168998140191,
              1.0, 1e-13);
}

TEST(RelaxationRate, ZeroTemperatureLimitIsHalfSpectralDensity) {
  const FridgeParams cold(1.0, 2.0, 1.0, 0.2, 1e-4, 1e-4, 2e-4);
  const auto bath = fig2_bath(BathModel::ModelIStrong);
  const double j = bath.alpha * 1.0 * std::exp(-1.0 / bath.omega_cutoff);
  EXPECT_NEAR(relaxation_rate_gamma_r(cold, bath) / (j / 2.0), 1.0, 1e-9);
}

TEST(RelaxationRate, MatchesFittedSigmaZDecay) {
  // The isolated qubit-1 <sigma_z> relaxes at gamma_down + gamma_up,
  // i.e. exactly 2 gamma_r; fit the exponential and compare to 1%.
  const auto params = fig2_params(0.0);
  const auto bath = fig2_bath(BathModel::ModelIWeak);
  const auto liouvillian = build_weak_coupling(params, bath);
  const FridgeParams displaced(1.0, 2.0, 1.0, 0.0, 90.0, 90.0, 100.0);
  const auto traj = propagate(liouvillian, thermal_product_state(displaced),
                              SampleGrid::uniform(40.0, 401));
  const double sz_inf = -std::tanh(params.beta(0) * params.e1() / 2.0);
  const double d0 = traj.observables.front().sigma_z[0] - sz_inf;
  const double d1 = traj.observables.back().sigma_z[0] - sz_inf;
  const double fitted = std::log(d0 / d1) / 40.0;
  const double gamma_r = relaxation_rate_gamma_r(params, bath);
  EXPECT_NEAR(fitted / (2.0 * gamma_r), 1.0, 1e-2);
}

TEST(SingleShot, Fig3aStyleRunHasPositiveAdvantage) {
  const auto result = run_single_shot(fig2_params(),
                                      fig2_bath(BathModel::ModelIStrong));
  EXPECT_NEAR(result.t0, std::numbers::pi / 0.4, 1e-12);
  EXPECT_GT(result.delta_t, 0.0);
  EXPECT_LT(result.temp_at_t0, result.t_inf_temperature);
  EXPECT_FALSE(result.t1_capped);
  EXPECT_GE(result.t1, result.t0);
  EXPECT_GT(result.t_q, 0.0);
  // Post trajectory relaxes back toward room temperature.
  EXPECT_GT(result.post_trajectory.observables.back().temperature[0],
            result.t_inf_temperature);
}

TEST(SingleShot, NoMachineMeansNoAdvantage) {
  // g = 0 sits outside the dressed-basis regime; the local model is the
  // faithful description of the decoupled machine.
  const auto result = run_single_shot(fig2_params(0.0),
                                      fig2_bath(BathModel::ModelIWeak));
  EXPECT_EQ(result.t0, 0.0);
  EXPECT_NEAR(result.t_inf_temperature / 50.0, 1.0, 1e-8);
  EXPECT_NEAR(result.temp_at_t0 / 50.0, 1.0, 1e-8);
  EXPECT_NEAR(result.delta_t, 0.0, 1e-6);
  EXPECT_EQ(result.t_q, 0.0);
}

TEST(SingleShot, InitialCoherenceLowersTheMinimum) {
  ProtocolOptions plain;
  const auto base =
      run_single_shot(fig2_params(), fig2_bath(BathModel::ModelIStrong), plain);
  ProtocolOptions seeded;
  seeded.coherence_r = coherence_bound(fig2_params()) / 100.0;
  const auto boosted = run_single_shot(fig2_params(),
                                       fig2_bath(BathModel::ModelIStrong),
                                       seeded);
  EXPECT_LT(boosted.temp_at_t0, base.temp_at_t0);
}

TEST(SingleShot, AutoMinimumPolicyAgreesWithHalfPeriod) {
  ProtocolOptions opt;
  opt.policy = T0Policy::AutoMinimum;
  const auto result =
      run_single_shot(fig2_params(), fig2_bath(BathModel::ModelIStrong), opt);
  EXPECT_NEAR(result.t0 / (std::numbers::pi / 0.4), 1.0, 0.15);
}

TEST(SingleShot, AutoMinimumFailsDistinctlyWhenOverdamped) {
  ProtocolOptions opt;
  opt.policy = T0Policy::AutoMinimum;
  EXPECT_THROW(run_single_shot(fig2_params(0.002),
                               fig2_bath(BathModel::ModelIWeak), opt),
               NoMinimumError);
}

TEST(SingleShot, FixedPolicyUsesTheRequestedTime) {
  ProtocolOptions opt;
  opt.policy = T0Policy::Fixed;
  opt.fixed_t0 = 5.0;
  const auto result =
      run_single_shot(fig2_params(), fig2_bath(BathModel::ModelIStrong), opt);
  EXPECT_EQ(result.t0, 5.0);
  EXPECT_EQ(result.pre_trajectory.times.back(), 5.0);
}

TEST(SingleShot, DeterministicAcrossReruns) {
  const auto a = run_single_shot(fig2_params(),
                                 fig2_bath(BathModel::ModelIStrong));
  const auto b = run_single_shot(fig2_params(),
                                 fig2_bath(BathModel::ModelIStrong));
  EXPECT_EQ(a.delta_t, b.delta_t);
  EXPECT_EQ(a.t_q, b.t_q);
  EXPECT_EQ(a.temp_at_t0, b.temp_at_t0);
}

TEST(Sweep, SmallGridProducesOrderedFinitePoints) {
  SweepOptions opt;
  opt.t_room_values = {50.0};
  opt.points_per_curve = 4;
  opt.t_hot_offset_min = 30.0;
  opt.t_hot_offset_max = 150.0;
  opt.protocol.pre_samples = 401;
  opt.protocol.post_samples = 801;
  const auto points = sweep_tradeoff(fig2_params(),
                                     fig2_bath(BathModel::ModelIStrong), opt);
  ASSERT_EQ(points.size(), 4u);
  double previous_t_hot = 0.0;
  for (const auto& point : points) {
    ASSERT_TRUE(point.ok) << point.error;
    EXPECT_GT(point.t_hot, previous_t_hot);
    previous_t_hot = point.t_hot;
    EXPECT_TRUE(std::isfinite(point.frac_advantage));
    EXPECT_TRUE(std::isfinite(point.t_q_scaled));
    EXPECT_GT(point.delta_t, 0.0);
    EXPECT_NEAR(point.t_q_scaled, point.t_q * point.gamma_r, 1e-15);
  }
}

TEST(Sweep, DeterministicUnderConcurrency) {
  SweepOptions opt;
  opt.t_room_values = {40.0, 60.0};
  opt.points_per_curve = 3;
  opt.t_hot_offset_min = 40.0;
  opt.t_hot_offset_max = 120.0;
  opt.protocol.pre_samples = 301;
  opt.protocol.post_samples = 601;
  opt.threads = 4;
  const auto a = sweep_tradeoff(fig2_params(),
                                fig2_bath(BathModel::ModelIStrong), opt);
  opt.threads = 1;
  const auto b = sweep_tradeoff(fig2_params(),
                                fig2_bath(BathModel::ModelIStrong), opt);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].t_hot, b[i].t_hot);
    EXPECT_EQ(a[i].delta_t, b[i].delta_t);
    EXPECT_EQ(a[i].t_q, b[i].t_q);
  }
}

TEST(Sweep, RejectsEmptyOrDegenerateGrids) {
  SweepOptions opt;
  opt.t_room_values = {};
  EXPECT_THROW(sweep_tradeoff(fig2_params(),
                              fig2_bath(BathModel::ModelIStrong), opt),
               std::invalid_argument);
  opt.t_room_values = {50.0};
  opt.t_hot_offset_min = 0.0;
  EXPECT_THROW(sweep_tradeoff(fig2_params(),
                              fig2_bath(BathModel::ModelIStrong), opt),
               std::invalid_argument);
}
