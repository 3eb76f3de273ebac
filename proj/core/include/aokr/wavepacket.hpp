#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "aokr/fft.hpp"
#include "aokr/units.hpp"

namespace aokr {

/// Uniform periodic position grid spanning an integer number of standing-wave
/// periods, together with its conjugate momentum grid.
///
/// Momentum bins are multiples of 2/num_periods p_rec, so every diffraction
/// order 2j p_rec sits exactly on a bin. Momentum accessors use FFT ordering
/// (non-negative frequencies first).
class SpatialGrid {
 public:
  /// Throws ConfigError unless num_points is a power of two and there are at
  /// least four samples per grating period.
  SpatialGrid(std::size_t num_points = std::size_t{1} << 16, std::size_t num_periods = 512,
              double grating_period = PhysicalConstants{}.grating_period());

  std::size_t num_points() const { return num_points_; }
  std::size_t num_periods() const { return num_periods_; }
  double grating_period() const { return grating_period_; }

  double length() const { return static_cast<double>(num_periods_) * grating_period_; }
  double dx() const { return length() / static_cast<double>(num_points_); }

  /// x_j in metres, centred on 0.
  double position(std::size_t j) const;
  /// x_j in grating periods.
  double position_periods(std::size_t j) const;
  /// Standing-wave phase 2k_L·x_j.
  double phase_argument(std::size_t j) const;

  double momentum_step() const { return 2.0 / static_cast<double>(num_periods_); }
  /// Momentum of FFT bin k, in p_rec units.
  double momentum(std::size_t k) const;
  /// |p| of the Nyquist bin, in p_rec units.
  double max_momentum() const {
    return static_cast<double>(num_points_) / static_cast<double>(num_periods_);
  }

  bool operator==(const SpatialGrid&) const = default;

 private:
  std::size_t num_points_;
  std::size_t num_periods_;
  double grating_period_;
};

/// Complex amplitudes on a SpatialGrid, normalised so that Σ|ψ_j|²·dx = 1.
class WavePacket {
 public:
  WavePacket(SpatialGrid grid, ComplexVector amplitudes, double quasimomentum);

  const SpatialGrid& grid() const { return grid_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> mutable_amplitudes() { return amplitudes_; }
  /// β of the state this packet was prepared in.
  double quasimomentum() const { return quasimomentum_; }

  double norm_squared() const;
  void normalize();

 private:
  SpatialGrid grid_;
  ComplexVector amplitudes_;
  double quasimomentum_;
};

/// Gaussian packet ψ(x) ∝ exp(-x²/2σ_w²)·exp(+i k_i x), renormalised on the
/// grid. sigma_w is given in grating periods and must lie within
/// [2, num_periods/8]; momentum is k_i/k_L = p_i/p_rec.
WavePacket init_gaussian(const SpatialGrid& grid, double sigma_w_periods, double momentum_prec);

/// Normalised probability over momentum, sorted by ascending momentum, plus
/// the mass in each diffraction-order window [2j+2β-1, 2j+2β+1) p_rec.
class MomentumDistribution {
 public:
  MomentumDistribution() = default;

  /// `momenta` must be strictly ascending. Probabilities are rescaled to unit
  /// sum; negative entries throw DomainError.
  static MomentumDistribution from_probabilities(std::vector<double> momenta,
                                                 std::vector<double> probability, double beta);

  std::span<const double> momenta() const { return momenta_; }
  std::span<const double> probability() const { return probability_; }
  double beta() const { return beta_; }
  const std::map<int, double>& order_populations() const { return orders_; }
  double order_population(int order) const;
  /// Spacing of the first two bins (uniform grids only).
  double bin_width() const;

 private:
  std::vector<double> momenta_;
  std::vector<double> probability_;
  double beta_ = 0.0;
  std::map<int, double> orders_;
};

/// Diffraction order whose window contains momentum p (p_rec units).
int diffraction_order(double momentum_prec, double beta);

/// Builds the distribution directly from momentum-space amplitudes in FFT
/// order (any overall scale).
MomentumDistribution distribution_from_momentum_amplitudes(const SpatialGrid& grid,
                                                           std::span<const Complex> amplitudes,
                                                           double beta);

MomentumDistribution momentum_distribution(const WavePacket& psi);

/// ⟨(p/p_rec)^q⟩ for q in 1..4; throws DomainError otherwise.
double momentum_moment(const MomentumDistribution& dist, int q);

/// ⟨p²⟩/2m in E_rec, i.e. ⟨(p/p_rec)²⟩.
double kinetic_energy(const MomentumDistribution& dist);

/// `p_over_prec,probability`
void write_distribution_csv(std::ostream& out, const MomentumDistribution& dist);
/// `order,population`
void write_order_populations_csv(std::ostream& out, const MomentumDistribution& dist);

}  // namespace aokr
