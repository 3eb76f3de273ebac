#include "aokr/units.hpp"

#include <cmath>
#include <string>

#include "aokr/error.hpp"

namespace aokr {

PhysicalConstants::PhysicalConstants(double wavelength_m, double atom_mass_kg)
    : wavelength_(wavelength_m), atom_mass_(atom_mass_kg) {
  if (!std::isfinite(wavelength_m) || wavelength_m <= 0.0) {
    throw ConfigError("constants.wavelength", "must be a positive length in metres");
  }
  if (!std::isfinite(atom_mass_kg) || atom_mass_kg <= 0.0) {
    throw ConfigError("constants.mass", "must be a positive mass in kg");
  }
}

double KickSchedule::kbar(const PhysicalConstants& constants) const {
  return 8.0 * constants.omega_rec() * period_T;
}

double KickSchedule::kappa(const PhysicalConstants& constants) const {
  return phi_d * kbar(constants);
}

void KickSchedule::validate() const {
  if (!std::isfinite(phi_d) || phi_d < 0.0) {
    throw ConfigError("kick.phi_d", "kick strength must be finite and >= 0");
  }
  if (!std::isfinite(period_T) || period_T <= 0.0) {
    throw ConfigError("kick.period", "kick period must be finite and > 0");
  }
  if (num_kicks < 0) {
    throw ConfigError("kick.kicks", "number of kicks must be >= 0");
  }
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw ConfigError("kick.beta", "quasimomentum must lie in [0, 1)");
  }
  if (!std::isfinite(pulse_width_tau) || pulse_width_tau < 0.0 ||
      pulse_width_tau >= period_T) {
    throw ConfigError("kick.pulse_width", "pulse width must satisfy 0 <= tau < period");
  }
}

double effective_rabi(double rabi, double detuning) {
  if (detuning == 0.0) {
    throw DomainError("effective_rabi: detuning must be nonzero");
  }
  return rabi * rabi / detuning;
}

double kick_strength(double effective_rabi, double tau) {
  if (tau < 0.0) {
    throw DomainError("kick_strength: pulse length must be >= 0");
  }
  return effective_rabi * tau;
}

double aom_offset_to_momentum(double delta_omega, const PhysicalConstants& constants) {
  return delta_omega / (4.0 * constants.omega_rec());
}

double period_to_kbar(double period_T, const PhysicalConstants& constants) {
  if (!(period_T > 0.0)) {
    throw DomainError("period_to_kbar: period must be > 0");
  }
  return 8.0 * constants.omega_rec() * period_T;
}

double kbar_to_period(double kbar, const PhysicalConstants& constants) {
  if (!(kbar > 0.0)) {
    throw DomainError("kbar_to_period: kbar must be > 0");
  }
  return kbar / (8.0 * constants.omega_rec());
}

LadderPosition momentum_to_ladder(double momentum_prec) {
  const double half = momentum_prec / 2.0;
  double offset = std::floor(half);
  double beta = half - offset;  // exact for doubles
  if (beta >= 1.0) {
    // tiny negative inputs round up to exactly 1
    offset += 1.0;
    beta = 0.0;
  }
  return {static_cast<std::int64_t>(offset), beta};
}

}  // namespace aokr
