#pragma once

#include <cmath>
#include <stdexcept>

#include "aokr/wavepacket.hpp"

namespace aokr::testing {

// Grid-filling plane wave e^{ipθ/2}; p·num_periods/2 must be an integer so
// the state is periodic on the grid.
inline WavePacket plane_wave(const SpatialGrid& grid, double momentum_prec, double beta) {
  const double cycles = 0.5 * momentum_prec * static_cast<double>(grid.num_periods());
  if (std::abs(cycles - std::round(cycles)) > 1e-12) {
    throw std::invalid_argument("plane wave is not periodic on this grid");
  }
  ComplexVector amps(grid.num_points());
  for (std::size_t j = 0; j < amps.size(); ++j) {
    amps[j] = std::polar(1.0, 0.5 * momentum_prec * grid.phase_argument(j));
  }
  WavePacket psi(grid, std::move(amps), beta);
  psi.normalize();
  return psi;
}

}  // namespace aokr::testing
