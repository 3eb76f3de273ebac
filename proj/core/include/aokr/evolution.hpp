#pragma once

#include <functional>
#include <span>
#include <vector>

#include "aokr/fft.hpp"
#include "aokr/units.hpp"
#include "aokr/wavepacket.hpp"

namespace aokr {

/// Probability beyond half the grid's maximum momentum above which a run is
/// aborted with NyquistOverflow.
inline constexpr double kNyquistTailTolerance = 1e-6;

/// Precomputed phase arrays for one Floquet period F = U_free·U_kick.
///
/// With finite_pulse_substeps == 1 a kick is the single phase imprint
/// exp(-iφ_d cos 2k_L x). With s > 1 the kick is a block pulse of width τ,
/// split into s sub-kicks of area φ_d/s separated by free flight τ/s (half
/// steps at both ends); the remaining T - τ is flown freely afterwards.
class FloquetStepPlan {
 public:
  /// Validates the schedule (ConfigError) and requires substeps >= 1.
  FloquetStepPlan(SpatialGrid grid, KickSchedule schedule, PhysicalConstants constants = {},
                  int finite_pulse_substeps = 1);

  const SpatialGrid& grid() const { return grid_; }
  const KickSchedule& schedule() const { return schedule_; }
  const PhysicalConstants& constants() const { return constants_; }
  int finite_pulse_substeps() const { return substeps_; }
  const FourierTransform& transform() const { return fft_; }

  /// exp(-i·(φ_d/s)·cos(2k_L x_j)) over the position grid.
  std::span<const Complex> kick_phase() const { return kick_phase_; }
  /// exp(-i·p²·T_free/(2mħ)) over the momentum grid (FFT order), T_free = T - τ.
  std::span<const Complex> free_phase() const { return free_phase_; }
  double free_time() const { return schedule_.period_T - schedule_.pulse_width_tau; }

  /// Phase factors for an arbitrary free-flight time, same layout as
  /// free_phase().
  ComplexVector free_phase_for(double duration) const;

 private:
  friend void apply_kick_in_place(WavePacket&, const FloquetStepPlan&);
  friend void floquet_step_in_place(WavePacket&, const FloquetStepPlan&,
                                    const std::function<void(std::span<const Complex>)>&);

  SpatialGrid grid_;
  KickSchedule schedule_;
  PhysicalConstants constants_;
  int substeps_;
  FourierTransform fft_;
  ComplexVector kick_phase_;
  ComplexVector free_phase_;
  // Finite-pulse only: τ/(2s), τ/s and the merged τ/(2s) + (T - τ) flight.
  ComplexVector pulse_half_phase_;
  ComplexVector pulse_step_phase_;
  ComplexVector pulse_tail_phase_;
};

void apply_kick_in_place(WavePacket& psi, const FloquetStepPlan& plan);
void apply_free_in_place(WavePacket& psi, const FloquetStepPlan& plan);

/// One full period: kick, then free flight. `on_momentum` (may be empty) sees
/// the momentum-space amplitudes (FFT order, arbitrary overall scale) at the
/// end of the period, before the transform back to position space.
void floquet_step_in_place(WavePacket& psi, const FloquetStepPlan& plan,
                           const std::function<void(std::span<const Complex>)>& on_momentum = {});

WavePacket apply_kick(WavePacket psi, const FloquetStepPlan& plan);
WavePacket apply_free(WavePacket psi, const FloquetStepPlan& plan);

enum class RecordMode { kPerKick, kFinal };

struct KickRecord {
  int kick = 0;
  MomentumDistribution distribution;
  double energy = 0.0;  // E_rec
};

/// Applies plan.schedule().num_kicks Floquet periods to psi0.
///
/// Per-kick mode returns the initial state (kick 0) followed by one record
/// per kick; final mode returns only the last record. Throws NyquistOverflow
/// when more than kNyquistTailTolerance of the probability lies beyond half
/// the maximum grid momentum.
std::vector<KickRecord> run_kicks(WavePacket psi0, const FloquetStepPlan& plan, RecordMode mode);

/// Probability fraction with |p| > max_momentum/2, from momentum amplitudes in
/// FFT order.
double nyquist_tail_mass(const SpatialGrid& grid, std::span<const Complex> momentum_amplitudes);

}  // namespace aokr
