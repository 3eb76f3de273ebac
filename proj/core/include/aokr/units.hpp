#pragma once

#include <cstdint>
#include <numbers>

namespace aokr {

inline constexpr double kHbar = 1.054571817e-34;  // J s
inline constexpr double kPi = std::numbers::pi;

/// Laser wavelength and atomic mass. Every recoil quantity is derived from
/// these two; the defaults describe 87Rb kicked at 780 nm.
class PhysicalConstants {
 public:
  PhysicalConstants() = default;
  /// Throws ConfigError unless both values are finite and positive.
  PhysicalConstants(double wavelength_m, double atom_mass_kg);

  double wavelength() const { return wavelength_; }
  double atom_mass() const { return atom_mass_; }

  double k_L() const { return 2.0 * kPi / wavelength_; }
  double omega_rec() const { return kHbar * k_L() * k_L() / (2.0 * atom_mass_); }
  double f_rec() const { return omega_rec() / (2.0 * kPi); }
  double p_rec() const { return kHbar * k_L(); }
  double E_rec() const { return kHbar * omega_rec(); }
  double T_talbot() const { return kPi / (2.0 * omega_rec()); }
  /// Spatial period of the standing wave, λ/2.
  double grating_period() const { return wavelength_ / 2.0; }

  bool operator==(const PhysicalConstants&) const = default;

 private:
  double wavelength_ = 780e-9;
  double atom_mass_ = 1.44316e-25;
};

/// Parameters of one kick sequence.
///
/// Times are in seconds. The initial momentum of the atoms is
/// 2·(ladder_offset + beta) p_rec, i.e. beta is the quasimomentum in units of
/// the two-photon recoil 2ħk_L.
struct KickSchedule {
  double phi_d = 0.0;
  double period_T = 0.0;
  int num_kicks = 0;
  double beta = 0.0;
  std::int64_t ladder_offset = 0;
  double pulse_width_tau = 0.0;

  /// Effective Planck constant 8·ω_rec·T.
  double kbar(const PhysicalConstants& constants) const;
  /// κ = φ_d·k̄.
  double kappa(const PhysicalConstants& constants) const;
  /// Initial momentum in p_rec units.
  double initial_momentum() const { return 2.0 * (static_cast<double>(ladder_offset) + beta); }

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  bool operator==(const KickSchedule&) const = default;
};

struct LadderPosition {
  std::int64_t ladder_offset = 0;
  double beta = 0.0;
};

/// Ω²/Δ. Throws DomainError for zero detuning.
double effective_rabi(double rabi, double detuning);

/// Pulse area φ_d = Ω_eff·τ.
double kick_strength(double effective_rabi, double tau);

/// Momentum (p_rec units) imparted by a frequency offset δω between the two
/// standing-wave beams.
double aom_offset_to_momentum(double delta_omega, const PhysicalConstants& constants);

double period_to_kbar(double period_T, const PhysicalConstants& constants);
double kbar_to_period(double kbar, const PhysicalConstants& constants);

/// Splits p (p_rec units) as p/2 = ladder_offset + beta with beta in [0, 1).
LadderPosition momentum_to_ladder(double momentum_prec);

}  // namespace aokr
