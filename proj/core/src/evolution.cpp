#include "aokr/evolution.hpp"

#include <fmt/format.h>

#include <cmath>

#include "aokr/error.hpp"

namespace aokr {

namespace {

void require_same_grid(const WavePacket& psi, const FloquetStepPlan& plan) {
  if (!(psi.grid() == plan.grid())) {
    throw ContractViolation("wave packet and Floquet plan are defined on different grids");
  }
}

void multiply(std::span<Complex> data, std::span<const Complex> phase, double scale) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= phase[i] * scale;
}

}  // namespace

FloquetStepPlan::FloquetStepPlan(SpatialGrid grid, KickSchedule schedule,
                                 PhysicalConstants constants, int finite_pulse_substeps)
    : grid_(grid),
      schedule_(schedule),
      constants_(constants),
      substeps_(finite_pulse_substeps),
      fft_(grid.num_points()) {
  schedule_.validate();
  if (substeps_ < 1) {
    throw ConfigError("kick.substeps", "finite-pulse substeps must be >= 1");
  }
  const std::size_t n = grid_.num_points();
  const double area = schedule_.phi_d / substeps_;
  kick_phase_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    kick_phase_[j] = std::polar(1.0, -area * std::cos(grid_.phase_argument(j)));
  }
  free_phase_ = free_phase_for(free_time());
  if (substeps_ > 1) {
    const double tau = schedule_.pulse_width_tau;
    pulse_half_phase_ = free_phase_for(tau / (2.0 * substeps_));
    pulse_step_phase_ = free_phase_for(tau / substeps_);
    pulse_tail_phase_ = free_phase_for(tau / (2.0 * substeps_) + free_time());
  }
}

ComplexVector FloquetStepPlan::free_phase_for(double duration) const {
  // p²T/(2mħ) with p = (p/p_rec)·ħk_L reduces to ω_rec·T·(p/p_rec)².
  const double rate = constants_.omega_rec() * duration;
  ComplexVector phase(grid_.num_points());
  for (std::size_t k = 0; k < phase.size(); ++k) {
    const double p = grid_.momentum(k);
    phase[k] = std::polar(1.0, -rate * p * p);
  }
  return phase;
}

void apply_kick_in_place(WavePacket& psi, const FloquetStepPlan& plan) {
  require_same_grid(psi, plan);
  auto data = psi.mutable_amplitudes();
  const int s = plan.substeps_;
  if (s == 1) {
    for (std::size_t j = 0; j < data.size(); ++j) data[j] *= plan.kick_phase_[j];
    return;
  }
  const auto& fft = plan.fft_;
  const double inv_n = 1.0 / static_cast<double>(data.size());
  auto fly = [&](const ComplexVector& phase) {
    fft.forward_unscaled(data);
    multiply(data, phase, inv_n);
    fft.inverse_unscaled(data);
  };
  fly(plan.pulse_half_phase_);
  for (int i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < data.size(); ++j) data[j] *= plan.kick_phase_[j];
    fly(i + 1 < s ? plan.pulse_step_phase_ : plan.pulse_half_phase_);
  }
}

void apply_free_in_place(WavePacket& psi, const FloquetStepPlan& plan) {
  require_same_grid(psi, plan);
  auto data = psi.mutable_amplitudes();
  const auto& fft = plan.transform();
  fft.forward_unscaled(data);
  multiply(data, plan.free_phase(), 1.0 / static_cast<double>(data.size()));
  fft.inverse_unscaled(data);
}

void floquet_step_in_place(WavePacket& psi, const FloquetStepPlan& plan,
                           const std::function<void(std::span<const Complex>)>& on_momentum) {
  require_same_grid(psi, plan);
  auto data = psi.mutable_amplitudes();
  const double inv_n = 1.0 / static_cast<double>(data.size());
  const int s = plan.substeps_;
  const auto& fft = plan.fft_;

  const ComplexVector* final_flight = &plan.free_phase_;
  if (s == 1) {
    for (std::size_t j = 0; j < data.size(); ++j) data[j] *= plan.kick_phase_[j];
  } else {
    // Same pulse as apply_kick_in_place, with the trailing half step merged
    // into the free flight.
    auto fly = [&](const ComplexVector& phase) {
      fft.forward_unscaled(data);
      multiply(data, phase, inv_n);
      fft.inverse_unscaled(data);
    };
    fly(plan.pulse_half_phase_);
    for (int i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < data.size(); ++j) data[j] *= plan.kick_phase_[j];
      if (i + 1 < s) fly(plan.pulse_step_phase_);
    }
    final_flight = &plan.pulse_tail_phase_;
  }
  fft.forward_unscaled(data);
  multiply(data, *final_flight, inv_n);
  if (on_momentum) on_momentum(data);
  fft.inverse_unscaled(data);
}

WavePacket apply_kick(WavePacket psi, const FloquetStepPlan& plan) {
  apply_kick_in_place(psi, plan);
  return psi;
}

WavePacket apply_free(WavePacket psi, const FloquetStepPlan& plan) {
  apply_free_in_place(psi, plan);
  return psi;
}

double nyquist_tail_mass(const SpatialGrid& grid, std::span<const Complex> momentum_amplitudes) {
  const double limit = 0.5 * grid.max_momentum();
  double tail = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < momentum_amplitudes.size(); ++k) {
    const double w = std::norm(momentum_amplitudes[k]);
    total += w;
    if (std::abs(grid.momentum(k)) > limit) tail += w;
  }
  return total > 0.0 ? tail / total : 0.0;
}

std::vector<KickRecord> run_kicks(WavePacket psi0, const FloquetStepPlan& plan, RecordMode mode) {
  require_same_grid(psi0, plan);
  const int num_kicks = plan.schedule().num_kicks;
  const double beta = psi0.quasimomentum();
  std::vector<KickRecord> records;

  auto record = [&](int kick, MomentumDistribution dist) {
    const double energy = kinetic_energy(dist);
    records.push_back({kick, std::move(dist), energy});
  };

  if (mode == RecordMode::kPerKick || num_kicks == 0) {
    record(0, momentum_distribution(psi0));
  }
  WavePacket psi = std::move(psi0);
  for (int kick = 1; kick <= num_kicks; ++kick) {
    const bool keep = mode == RecordMode::kPerKick || kick == num_kicks;
    floquet_step_in_place(psi, plan, [&](std::span<const Complex> momentum) {
      const double tail = nyquist_tail_mass(plan.grid(), momentum);
      if (tail > kNyquistTailTolerance) {
        throw NyquistOverflow(
            fmt::format("kick {}: probability {:.3e} beyond {:g} p_rec (half the grid's "
                        "maximum momentum); enlarge grid.num_points",
                        kick, tail, 0.5 * plan.grid().max_momentum()),
            tail);
      }
      if (keep) record(kick, distribution_from_momentum_amplitudes(plan.grid(), momentum, beta));
    });
  }
  return records;
}

}  // namespace aokr
