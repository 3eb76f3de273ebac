#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aokr/bessel.hpp"
#include "aokr/error.hpp"
#include "aokr/oracle.hpp"
#include "support/series_bessel.hpp"

namespace aokr {
namespace {

TEST(Bessel, MatchesPowerSeries) {
  for (int n = -30; n <= 30; ++n) {
    for (double x = -10.0; x <= 10.0; x += 0.37) {
      ASSERT_NEAR(bessel_j(n, x), testing::series_bessel_j(n, x), 2e-14) << n << " " << x;
    }
  }
}

TEST(Bessel, MatchesStandardLibraryForLargeArguments) {
  for (int n = 0; n <= 120; n += 7) {
    for (double x = 0.5; x <= 100.0; x += 3.3) {
      ASSERT_NEAR(bessel_j(n, x), std::cyl_bessel_j(static_cast<double>(n), x), 1e-12)
          << n << " " << x;
    }
  }
}

TEST(Bessel, ReferenceValues) {
  EXPECT_NEAR(bessel_j(1, 1.0), 0.44005058574493355, 1e-15);
  EXPECT_NEAR(bessel_j(0, 4.5), -0.3205425089851214, 1e-15);
  EXPECT_NEAR(std::pow(bessel_j(0, 1.5), 2), 0.26196757, 1e-8);
  EXPECT_NEAR(std::pow(bessel_j(1, 1.5), 2), 0.31129315, 1e-8);
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(3, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(bessel_j(-3, 2.0), -bessel_j(3, 2.0));
  EXPECT_DOUBLE_EQ(bessel_j(3, -2.0), -bessel_j(3, 2.0));
}

TEST(Bessel, RangeChecks) {
  EXPECT_THROW(bessel_j(201, 1.0), DomainError);
  EXPECT_THROW(bessel_j(-201, 1.0), DomainError);
  EXPECT_THROW(bessel_j(0, 100.5), DomainError);
  EXPECT_NO_THROW(bessel_j(200, 100.0));
}

TEST(Bessel, SequenceSatisfiesNeumannSum) {
  for (double x : {0.0, 0.3, 4.5, -17.0, 60.0}) {
    const auto seq = bessel_j_sequence(150, x);
    ASSERT_EQ(seq.size(), 151u);
    double sum = seq[0] * seq[0];
    for (std::size_t k = 1; k < seq.size(); ++k) sum += 2.0 * seq[k] * seq[k];
    EXPECT_NEAR(sum, 1.0, 1e-13) << x;
  }
}

// Independent oracle: propagate ladder amplitudes kick by kick. A kick
// couples j to j+m with (-i)^m J_m(φ_d); free flight for l·T_T/2 multiplies
// c_j by exp(-iπl(j+β)²).
std::vector<Complex> propagate_ladder(const ResonanceContext& ctx, int window) {
  const int size = 2 * window + 1;
  std::vector<Complex> c(size), next(size);
  c[window] = 1.0;
  std::vector<Complex> coupling(size);
  for (int m = -window; m <= window; ++m) {
    static const Complex minus_i(0.0, -1.0);
    coupling[m + window] = std::pow(minus_i, m) * testing::series_bessel_j(m, ctx.phi_d);
  }
  for (int step = 0; step < ctx.n; ++step) {
    for (int j = -window; j <= window; ++j) {
      Complex sum;
      for (int k = -window; k <= window; ++k) {
        const int m = j - k;
        if (m < -window || m > window) continue;
        sum += coupling[m + window] * c[k + window];
      }
      const double shifted = j + ctx.beta;
      next[j + window] = sum * std::polar(1.0, -kPi * ctx.l * shifted * shifted);
    }
    c.swap(next);
  }
  return c;
}

TEST(LadderAmplitudes, AgreeWithKickByKickPropagation) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta(0.0, 1.0), phi(0.0, 1.5);
  std::uniform_int_distribution<int> l(1, 6), n(0, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const ResonanceContext ctx{l(rng), beta(rng), phi(rng), n(rng)};
    const auto direct = propagate_ladder(ctx, 40);
    const auto closed = ladder_amplitudes(ctx);
    for (int j = -25; j <= 25; ++j) {
      ASSERT_LT(std::abs(closed.amplitude(j) - direct[j + 40]), 1e-11)
          << "l=" << ctx.l << " beta=" << ctx.beta << " phi=" << ctx.phi_d << " n=" << ctx.n
          << " j=" << j;
    }
  }
}

TEST(LadderAmplitudes, Complete) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> beta(0.0, 1.0), phi(0.0, 5.0);
  std::uniform_int_distribution<int> l(1, 8), n(0, 20);
  for (int trial = 0; trial < 500; ++trial) {
    const ResonanceContext ctx{l(rng), beta(rng), phi(rng), n(rng)};
    ASSERT_NEAR(ladder_amplitudes(ctx).total_population(), 1.0, 1e-12);
  }
}

TEST(LadderAmplitudes, OutsideWindowIsZero) {
  const auto amps = ladder_amplitudes({2, 0.0, 0.5, 2});
  EXPECT_EQ(amps.amplitude(amps.max_order() + 1), Complex(0.0, 0.0));
  EXPECT_EQ(amps.amplitude(-amps.max_order() - 1), Complex(0.0, 0.0));
}

TEST(EffectiveArgument, ResonantLimitGrowsLinearly) {
  for (int n = 0; n <= 10; ++n) {
    EXPECT_DOUBLE_EQ(std::abs(effective_argument({2, 0.0, 0.7, n})), 0.7 * n);
    EXPECT_DOUBLE_EQ(std::abs(effective_argument({1, 0.5, 0.7, n})), 0.7 * n);
    EXPECT_DOUBLE_EQ(std::abs(effective_argument({4, 0.25, 0.7, n})), 0.7 * n);
  }
}

TEST(EffectiveArgument, AntiresonanceHasPeriodTwo) {
  for (int n = 0; n <= 10; ++n) {
    const double arg = effective_argument({1, 0.0, 1.3, n});
    EXPECT_DOUBLE_EQ(std::abs(arg), n % 2 == 0 ? 0.0 : 1.3) << n;
  }
}

TEST(EffectiveArgument, Validation) {
  EXPECT_THROW(effective_argument({0, 0.0, 1.0, 1}), DomainError);
  EXPECT_THROW(effective_argument({1, 1.0, 1.0, 1}), DomainError);
  EXPECT_THROW(effective_argument({1, -0.1, 1.0, 1}), DomainError);
  EXPECT_THROW(effective_argument({1, 0.0, -1.0, 1}), DomainError);
  EXPECT_THROW(effective_argument({1, 0.0, 1.0, -1}), DomainError);
}

TEST(MomentMoments, SecondMomentIdentity) {
  // ⟨(j+β)²⟩ = x²/2 + β² with x the effective argument.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> beta(0.0, 1.0), phi(0.0, 3.0);
  std::uniform_int_distribution<int> l(1, 5), n(0, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const ResonanceContext ctx{l(rng), beta(rng), phi(rng), n(rng)};
    const double x = effective_argument(ctx);
    EXPECT_NEAR(momentum_moment(ctx, 2), 0.5 * x * x + ctx.beta * ctx.beta,
                1e-11 * (1.0 + x * x));
    EXPECT_NEAR(momentum_moment(ctx, 1), ctx.beta, 1e-12);
    EXPECT_NEAR(momentum_moment(ctx, 1, 3), 3.0 + ctx.beta, 1e-12);
  }
  EXPECT_THROW(momentum_moment(ResonanceContext{1, 0.0, 1.0, 1}, 5), DomainError);
}

TEST(MomentMoments, QuasimomentumPeriodicity) {
  // Populations and E - β² repeat when β advances by 1/l.
  for (int l : {1, 2, 3, 5}) {
    for (double b : {0.0, 0.05, 0.13}) {
      const double b2 = b + 1.0 / l;
      if (b2 >= 1.0) continue;
      const auto a1 = ladder_amplitudes({l, b, 1.1, 4});
      const auto a2 = ladder_amplitudes({l, b2, 1.1, 4});
      for (int j = -10; j <= 10; ++j) EXPECT_NEAR(a1.population(j), a2.population(j), 1e-12);
      const double e1 = momentum_moment({l, b, 1.1, 4}, 2) - b * b;
      const double e2 = momentum_moment({l, b2, 1.1, 4}, 2) - b2 * b2;
      EXPECT_NEAR(e1, e2, 1e-11) << l << " " << b;
    }
  }
}

TEST(MomentMoments, SecondMomentVsBetaMatchesPointwise) {
  const std::vector<double> grid{0.0, 0.125, 0.25, 0.5, 0.875};
  const auto curve = second_moment_vs_beta(3, 5, 0.9, grid);
  ASSERT_EQ(curve.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(curve[i], momentum_moment({3, grid[i], 0.9, 5}, 2), 1e-12);
  }
  EXPECT_DOUBLE_EQ(two_photon_moment_to_erec(0.25), 1.0);
}

TEST(FractionalTimes, ReducedAndSorted) {
  const PhysicalConstants c;
  const auto t = fractional_times(3, c);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].l, 1);
  EXPECT_EQ(t[0].m, 3);
  EXPECT_EQ(t[1].m, 2);
  EXPECT_EQ(t[2].l, 2);
  EXPECT_EQ(t[2].m, 3);
  EXPECT_EQ(t[3].l, 1);
  EXPECT_EQ(t[3].m, 1);
  EXPECT_NEAR(t[3].time, c.T_talbot(), 1e-18);

  const auto wide = fractional_times(2, c, 2.0);
  ASSERT_EQ(wide.size(), 4u);
  EXPECT_NEAR(wide.back().time, 2.0 * c.T_talbot(), 1e-18);
  EXPECT_EQ(wide[2].l, 3);

  const auto five = fractional_times(5, c);
  EXPECT_EQ(five.size(), 10u);  // 1/5 1/4 1/3 2/5 1/2 3/5 2/3 3/4 4/5 1
  for (std::size_t i = 1; i < five.size(); ++i) EXPECT_LT(five[i - 1].time, five[i].time);
  EXPECT_THROW(fractional_times(1, c), DomainError);
}

TEST(HalfTalbotMultiple, Detects) {
  const PhysicalConstants c;
  EXPECT_EQ(half_talbot_multiple(c.T_talbot(), c), 2);
  EXPECT_EQ(half_talbot_multiple(0.5 * c.T_talbot(), c), 1);
  EXPECT_EQ(half_talbot_multiple(1.5 * c.T_talbot(), c), 3);
  EXPECT_EQ(half_talbot_multiple(0.3 * c.T_talbot(), c), 0);
  EXPECT_EQ(half_talbot_multiple(66.31e-6, c), 0);
  EXPECT_EQ(half_talbot_multiple(66.31e-6, c, 2e-3), 2);
  EXPECT_EQ(half_talbot_multiple(-1.0, c), 0);
}

}  // namespace
}  // namespace aokr
