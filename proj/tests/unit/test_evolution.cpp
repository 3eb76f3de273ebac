#include <gtest/gtest.h>

#include <cmath>
#include <tuple>

#include "aokr/error.hpp"
#include "aokr/evolution.hpp"
#include "aokr/oracle.hpp"
#include "support/series_bessel.hpp"
#include "support/states.hpp"

namespace aokr {
namespace {

const PhysicalConstants kRb;

KickSchedule schedule(double phi_d, double period, int kicks, double beta = 0.0) {
  return KickSchedule{phi_d, period, kicks, beta, 0, 0.0};
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(FloquetStepPlan, PhaseArraysAreUnimodular) {
  const SpatialGrid grid(4096, 64);
  const FloquetStepPlan plan(grid, schedule(1.3, 20e-6, 1), kRb);
  for (const auto& v : plan.kick_phase()) ASSERT_NEAR(std::abs(v), 1.0, 1e-14);
  for (const auto& v : plan.free_phase()) ASSERT_NEAR(std::abs(v), 1.0, 1e-14);
}

TEST(FloquetStepPlan, TalbotFreePhaseIsTrivialOnTheLadder) {
  const SpatialGrid grid(4096, 64);
  const FloquetStepPlan plan(grid, schedule(1.0, kRb.T_talbot(), 1), kRb);
  const auto phase = plan.free_phase();
  for (std::size_t k = 0; k < phase.size(); k += 64) {  // bins at p = 2j
    ASSERT_NEAR(std::abs(phase[k] - 1.0), 0.0, 1e-9) << grid.momentum(k);
  }
}

TEST(FloquetStepPlan, RejectsInvalidInputs) {
  const SpatialGrid grid(4096, 64);
  EXPECT_THROW(FloquetStepPlan(grid, schedule(-1.0, 1e-5, 1), kRb), ConfigError);
  EXPECT_THROW(FloquetStepPlan(grid, schedule(1.0, 1e-5, 1), kRb, 0), ConfigError);
}

TEST(Evolution, ZeroStrengthZeroTimeIsIdentity) {
  const SpatialGrid grid(4096, 64);
  const FloquetStepPlan plan(grid, schedule(0.0, 1e-5, 1), kRb);
  const auto psi0 = init_gaussian(grid, 5.0, 0.7);
  const auto kicked = apply_kick(psi0, plan);
  EXPECT_LT(max_abs_diff(kicked.amplitudes(), psi0.amplitudes()), 1e-15);

  // Free flight for zero time through the public phase builder.
  auto psi = psi0;
  auto data = psi.mutable_amplitudes();
  const auto zero = plan.free_phase_for(0.0);
  plan.transform().forward(data);
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= zero[k];
  plan.transform().inverse(data);
  EXPECT_LT(max_abs_diff(psi.amplitudes(), psi0.amplitudes()), 1e-12);
}

TEST(Evolution, KicksAreAdditive) {
  const SpatialGrid grid(4096, 64);
  const FloquetStepPlan a(grid, schedule(0.4, 1e-5, 1), kRb);
  const FloquetStepPlan b(grid, schedule(1.1, 1e-5, 1), kRb);
  const FloquetStepPlan ab(grid, schedule(1.5, 1e-5, 1), kRb);
  const auto psi0 = init_gaussian(grid, 5.0, 0.0);
  const auto two = apply_kick(apply_kick(psi0, a), b);
  const auto one = apply_kick(psi0, ab);
  EXPECT_LT(max_abs_diff(two.amplitudes(), one.amplitudes()), 1e-12);
}

TEST(Evolution, FreeFlightPreservesMomentumDistribution) {
  const SpatialGrid grid(4096, 64);
  const FloquetStepPlan plan(grid, schedule(0.0, 37e-6, 1), kRb);
  const auto psi0 = init_gaussian(grid, 5.0, 1.3);
  const auto d0 = momentum_distribution(psi0);
  const auto d1 = momentum_distribution(apply_free(psi0, plan));
  for (std::size_t k = 0; k < d0.probability().size(); ++k) {
    ASSERT_NEAR(d0.probability()[k], d1.probability()[k], 1e-14);
  }
}

TEST(Evolution, UnitaryOverManyKicks) {
  const SpatialGrid grid;
  const FloquetStepPlan plan(grid, schedule(1.2, 23e-6, 12), kRb);
  auto psi = init_gaussian(grid, 10.0, 0.4);
  for (int i = 0; i < 12; ++i) floquet_step_in_place(psi, plan);
  EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-12);
}

TEST(Evolution, SymmetricStateStaysSymmetric) {
  const SpatialGrid grid(8192, 128);
  const FloquetStepPlan plan(grid, schedule(1.5, 41e-6, 5), kRb);
  const auto records = run_kicks(init_gaussian(grid, 10.0, 0.0), plan, RecordMode::kFinal);
  ASSERT_EQ(records.size(), 1u);
  const auto& dist = records.front().distribution;
  const auto p = dist.momenta();
  const auto w = dist.probability();
  const std::size_t n = p.size();
  // Ascending bins run from -max to max - step, so bin i pairs with n - i.
  for (std::size_t i = 1; i < n; ++i) {
    ASSERT_DOUBLE_EQ(p[i], -p[n - i]);
    ASSERT_NEAR(w[i], w[n - i], 1e-13);
  }
}

TEST(Evolution, ResonantEnergyGrowsQuadratically) {
  const SpatialGrid grid(4096, 64);
  const double phi = 0.6;
  const FloquetStepPlan plan(grid, schedule(phi, kRb.T_talbot(), 6), kRb);
  const auto records = run_kicks(testing::plane_wave(grid, 0.0, 0.0), plan, RecordMode::kPerKick);
  ASSERT_EQ(records.size(), 7u);
  for (const auto& r : records) {
    // ⟨(p/p_rec)²⟩ = 4⟨j²⟩ = 2(Nφ)² for a resonant β = 0 state.
    EXPECT_NEAR(r.energy, 2.0 * phi * phi * r.kick * r.kick, 1e-10) << r.kick;
  }
}

TEST(Evolution, AntiresonanceReturnsEveryOtherKick) {
  const SpatialGrid grid(4096, 64);
  const double phi = 0.9;
  const FloquetStepPlan plan(grid, schedule(phi, 0.5 * kRb.T_talbot(), 6), kRb);
  const auto records = run_kicks(testing::plane_wave(grid, 0.0, 0.0), plan, RecordMode::kPerKick);
  for (const auto& r : records) {
    const double expected = r.kick % 2 == 0 ? 0.0 : 2.0 * phi * phi;
    EXPECT_NEAR(r.energy, expected, 1e-10) << r.kick;
  }
}

TEST(Evolution, RecordModes) {
  const SpatialGrid grid(4096, 64);
  const auto psi0 = init_gaussian(grid, 5.0, 0.0);
  const FloquetStepPlan plan(grid, schedule(0.8, 30e-6, 3), kRb);
  const auto all = run_kicks(psi0, plan, RecordMode::kPerKick);
  const auto last = run_kicks(psi0, plan, RecordMode::kFinal);
  ASSERT_EQ(all.size(), 4u);
  ASSERT_EQ(last.size(), 1u);
  EXPECT_EQ(last.front().kick, 3);
  EXPECT_DOUBLE_EQ(last.front().energy, all.back().energy);

  const FloquetStepPlan none(grid, schedule(0.8, 30e-6, 0), kRb);
  const auto zero = run_kicks(psi0, none, RecordMode::kFinal);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero.front().kick, 0);
}

TEST(Evolution, NyquistOverflowAborts) {
  const SpatialGrid grid(256, 32);  // max momentum 8 p_rec
  const FloquetStepPlan plan(grid, schedule(3.0, kRb.T_talbot(), 4), kRb);
  try {
    run_kicks(init_gaussian(grid, 4.0, 0.0), plan, RecordMode::kFinal);
    FAIL() << "expected NyquistOverflow";
  } catch (const NyquistOverflow& e) {
    EXPECT_GT(e.tail_mass(), kNyquistTailTolerance);
  }
}

TEST(Evolution, GridMismatchIsAContractViolation) {
  const FloquetStepPlan plan(SpatialGrid(4096, 64), schedule(1.0, 1e-5, 1), kRb);
  auto psi = init_gaussian(SpatialGrid(4096, 32), 3.0, 0.0);
  EXPECT_THROW(apply_kick_in_place(psi, plan), ContractViolation);
  EXPECT_THROW(floquet_step_in_place(psi, plan), ContractViolation);
  EXPECT_THROW(run_kicks(psi, plan, RecordMode::kFinal), ContractViolation);
}

double finite_pulse_energy(double tau, int substeps) {
  const SpatialGrid grid(8192, 128);
  KickSchedule s = schedule(1.0, kRb.T_talbot(), 3);
  s.pulse_width_tau = tau;
  const FloquetStepPlan plan(grid, s, kRb, substeps);
  return run_kicks(init_gaussian(grid, 10.0, 0.0), plan, RecordMode::kFinal).front().energy;
}

TEST(FinitePulse, SubstepsConverge) {
  const double e16 = finite_pulse_energy(2e-6, 16);
  const double e32 = finite_pulse_energy(2e-6, 32);
  EXPECT_NEAR(e16 / e32, 1.0, 1e-3);
}

TEST(FinitePulse, ShortPulseApproachesIdealKick) {
  const double ideal = finite_pulse_energy(0.0, 1);
  EXPECT_NEAR(finite_pulse_energy(1e-10, 8) / ideal, 1.0, 1e-6);
  // A pulse of finite length deviates measurably from the delta kick.
  EXPECT_GT(std::abs(finite_pulse_energy(4e-6, 16) / ideal - 1.0), 1e-3);
}

// The split-operator propagator on a grid-filling plane wave reproduces the
// closed-form ladder amplitudes at T = l·T_T/2.
class PlaneWaveVsOracle : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(PlaneWaveVsOracle, PopulationsAgree) {
  const auto [l, beta_eighths, n] = GetParam();
  const double beta = beta_eighths / 8.0;
  const double phi = 0.8;
  const SpatialGrid grid(4096, 64);
  KickSchedule s = schedule(phi, l * 0.5 * kRb.T_talbot(), n, beta);
  s.ladder_offset = 1;
  const FloquetStepPlan plan(grid, s, kRb);
  const auto records =
      run_kicks(testing::plane_wave(grid, s.initial_momentum(), beta), plan, RecordMode::kFinal);
  const auto& dist = records.front().distribution;

  const ResonanceContext ctx{l, beta, phi, n};
  const double arg = effective_argument(ctx);
  double second = 0.0;
  for (int j = -20; j <= 20; ++j) {
    const double oracle = std::pow(testing::series_bessel_j(j - 1, arg), 2);
    EXPECT_NEAR(dist.order_population(j), oracle, 1e-12) << "order " << j;
    second += oracle * (j + beta) * (j + beta);
  }
  EXPECT_NEAR(records.front().energy, two_photon_moment_to_erec(second), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Resonances, PlaneWaveVsOracle,
                         ::testing::Combine(::testing::Values(1, 2, 3, 4),
                                            ::testing::Values(0, 1, 4, 5),
                                            ::testing::Values(1, 3, 6)));

}  // namespace
}  // namespace aokr
