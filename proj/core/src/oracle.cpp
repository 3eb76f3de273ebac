#include "aokr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aokr/bessel.hpp"
#include "aokr/error.hpp"

namespace aokr {

namespace {

// sin(π·t) with exact zeros at integer t and exact ±1 at half-integers.
double sin_pi(double t) {
  double r = std::fmod(t, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(kPi * r);
}

double cos_pi(double t) { return sin_pi(t + 0.5); }

// Υ/π = ½(1+2β)l
double upsilon_over_pi(const ResonanceContext& c) { return 0.5 * (1.0 + 2.0 * c.beta) * c.l; }

double ipow(double x, int q) {
  double r = 1.0;
  for (int i = 0; i < q; ++i) r *= x;
  return r;
}

int window_for(double argument) {
  const double a = std::abs(argument);
  return static_cast<int>(std::ceil(a + 20.0 + 10.0 * std::sqrt(a)));
}

// J_m(x) for |m| <= max from a precomputed non-negative sequence.
double signed_order(const std::vector<double>& seq, int m) {
  const int am = std::abs(m);
  if (am >= static_cast<int>(seq.size())) return 0.0;
  const double v = seq[am];
  return (m < 0 && am % 2 != 0) ? -v : v;
}

}  // namespace

double ResonanceContext::upsilon() const { return 0.5 * kPi * (1.0 + 2.0 * beta) * l; }

void ResonanceContext::validate() const {
  if (l < 1) throw DomainError("ResonanceContext: l must be a positive integer");
  if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("ResonanceContext: beta must be in [0,1)");
  if (!(phi_d >= 0.0) || !std::isfinite(phi_d)) {
    throw DomainError("ResonanceContext: phi_d must be finite and >= 0");
  }
  if (n < 0) throw DomainError("ResonanceContext: n must be >= 0");
}

LadderAmplitudes::LadderAmplitudes(ResonanceContext context, std::vector<Complex> amplitudes)
    : context_(context), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() % 2 != 1) {
    throw ContractViolation("LadderAmplitudes: window must be symmetric about j = 0");
  }
}

Complex LadderAmplitudes::amplitude(int j) const {
  const int m = max_order();
  if (j < -m || j > m) return {0.0, 0.0};
  return amplitudes_[static_cast<std::size_t>(j + m)];
}

double LadderAmplitudes::total_population() const {
  double sum = 0.0;
  for (const auto& c : amplitudes_) sum += std::norm(c);
  return sum;
}

double effective_argument(const ResonanceContext& context) {
  context.validate();
  const double u = upsilon_over_pi(context);
  const double s = sin_pi(u);
  if (s == 0.0) {
    // Υ = kπ: sin(nΥ)/sinΥ -> n·cos(Υ)^{n-1}, cos Υ = ±1
    if (context.n == 0) return 0.0;
    const double c = cos_pi(u);
    return context.phi_d * context.n * ipow(c, context.n - 1);
  }
  return context.phi_d * sin_pi(context.n * u) / s;
}

LadderAmplitudes ladder_amplitudes(const ResonanceContext& context) {
  const double arg = effective_argument(context);
  const int m = window_for(arg);
  const auto seq = bessel_j_sequence(m, arg);
  const double u = upsilon_over_pi(context);
  const double n = context.n;
  // global phase e^{-inπβ²l}
  const Complex global = std::polar(1.0, -kPi * n * context.beta * context.beta * context.l);
  std::vector<Complex> c(2 * static_cast<std::size_t>(m) + 1);
  for (int j = -m; j <= m; ++j) {
    // (-i)^j e^{-ij(n+1)Υ} = exp(-iπ·(j/2 + j(n+1)Υ/π)), reduced mod 2. The
    // (-i)^j goes with the e^{-iφ_d cos} kick applied by the propagator.
    double t = std::fmod(-0.5 * j - j * (n + 1.0) * u, 2.0);
    const Complex phase(cos_pi(t), sin_pi(t));
    c[static_cast<std::size_t>(j + m)] = signed_order(seq, j) * phase * global;
  }
  return LadderAmplitudes(context, std::move(c));
}

double momentum_moment(const ResonanceContext& context, int q, int ladder_offset) {
  if (q < 1 || q > 4) {
    throw DomainError("momentum_moment: q must be in 1..4");
  }
  const double arg = effective_argument(context);
  const int m = window_for(arg);
  const auto seq = bessel_j_sequence(m, arg);
  double sum = 0.0;
  for (int s = -m; s <= m; ++s) {
    const double jv = signed_order(seq, s);
    const int j = s + ladder_offset;
    sum += jv * jv * ipow(j + context.beta, q);
  }
  return sum;
}

std::vector<double> second_moment_vs_beta(int l, int n, double phi_d,
                                          std::span<const double> beta_grid) {
  std::vector<double> out;
  out.reserve(beta_grid.size());
  for (const double beta : beta_grid) {
    const auto amps = ladder_amplitudes({l, beta, phi_d, n});
    double sum = 0.0;
    for (int j = -amps.max_order(); j <= amps.max_order(); ++j) {
      const double shifted = j + beta;
      sum += amps.population(j) * shifted * shifted;
    }
    out.push_back(sum);
  }
  return out;
}

std::vector<FractionalTime> fractional_times(int max_denominator,
                                             const PhysicalConstants& constants,
                                             double max_ratio) {
  if (max_denominator < 2) {
    throw DomainError("fractional_times: max_denominator must be >= 2");
  }
  if (!(max_ratio > 0.0)) {
    throw DomainError("fractional_times: max_ratio must be > 0");
  }
  std::vector<FractionalTime> out;
  for (int m = 1; m <= max_denominator; ++m) {
    for (int l = 1; static_cast<double>(l) <= max_ratio * m; ++l) {
      if (std::gcd(l, m) != 1) continue;
      out.push_back({l, m, constants.T_talbot() * l / m});
    }
  }
  std::sort(out.begin(), out.end(), [](const FractionalTime& a, const FractionalTime& b) {
    // compare l/m exactly
    return static_cast<long long>(a.l) * b.m < static_cast<long long>(b.l) * a.m;
  });
  return out;
}

int half_talbot_multiple(double period_T, const PhysicalConstants& constants, double tolerance) {
  if (!(period_T > 0.0)) return 0;
  const double ratio = 2.0 * period_T / constants.T_talbot();
  const double l = std::round(ratio);
  if (l < 1.0 || std::abs(ratio - l) > tolerance * std::max(1.0, l)) return 0;
  return static_cast<int>(l);
}

}  // namespace aokr
