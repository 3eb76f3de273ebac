#pragma once

#include <span>
#include <vector>

#include "aokr/fft.hpp"
#include "aokr/units.hpp"

namespace aokr {

/// Kick sequence at a half-integer multiple of the Talbot time,
/// T = l·T_T/2, where the ladder amplitudes have a closed form.
struct ResonanceContext {
  int l = 2;
  double beta = 0.0;
  double phi_d = 0.0;
  int n = 0;

  /// Υ = ½π(1+2β)l.
  double upsilon() const;
  /// Throws DomainError for l < 1, β outside [0,1), φ_d < 0 or n < 0.
  void validate() const;
};

/// Ladder amplitudes c_j over the symmetric window [-max_order, max_order].
class LadderAmplitudes {
 public:
  LadderAmplitudes(ResonanceContext context, std::vector<Complex> amplitudes);

  const ResonanceContext& context() const { return context_; }
  int max_order() const { return static_cast<int>(amplitudes_.size() / 2); }
  /// c_j, zero outside the window.
  Complex amplitude(int j) const;
  double population(int j) const { return std::norm(amplitude(j)); }
  double total_population() const;

 private:
  ResonanceContext context_;
  std::vector<Complex> amplitudes_;
};

/// φ_d·sin(nΥ)/sin(Υ), using the limit φ_d·n·cos(Υ)^{n-1} when Υ is a
/// multiple of π.
double effective_argument(const ResonanceContext& context);

LadderAmplitudes ladder_amplitudes(const ResonanceContext& context);

/// Σ_j J_{j-k}(arg)²·(j+β)^q in units of (2ħk_L)^q, with k the initial ladder
/// index. q must be in 1..4.
double momentum_moment(const ResonanceContext& context, int q, int ladder_offset = 0);

/// ⟨p²⟩ = Σ_j |c_j|²(j+β)² in (2ħk_L)² units, one value per β.
std::vector<double> second_moment_vs_beta(int l, int n, double phi_d,
                                          std::span<const double> beta_grid);

/// Energy in E_rec for a second moment in (2ħk_L)² units.
inline double two_photon_moment_to_erec(double second_moment) { return 4.0 * second_moment; }

struct FractionalTime {
  int l = 0;
  int m = 0;
  double time = 0.0;  // s
};

/// Reduced fractions l/m with m <= max_denominator and 0 < l/m <= max_ratio,
/// as times (l/m)·T_T sorted ascending.
std::vector<FractionalTime> fractional_times(int max_denominator,
                                             const PhysicalConstants& constants,
                                             double max_ratio = 1.0);

/// If period_T is l·T_T/2 for a positive integer l (relative tolerance),
/// returns l, otherwise 0.
int half_talbot_multiple(double period_T, const PhysicalConstants& constants,
                         double tolerance = 1e-9);

}  // namespace aokr
