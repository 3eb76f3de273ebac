#include "aokr/wavepacket.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "aokr/error.hpp"

namespace aokr {

SpatialGrid::SpatialGrid(std::size_t num_points, std::size_t num_periods, double grating_period)
    : num_points_(num_points), num_periods_(num_periods), grating_period_(grating_period) {
  if (num_points < 4 || !std::has_single_bit(num_points)) {
    throw ConfigError("grid.num_points", "must be a power of two >= 4");
  }
  if (num_periods == 0) {
    throw ConfigError("grid.num_periods", "must be >= 1");
  }
  if (num_points < 4 * num_periods) {
    throw ConfigError("grid.num_points", "need at least 4 samples per grating period");
  }
  if (!std::isfinite(grating_period) || grating_period <= 0.0) {
    throw ConfigError("grid.grating_period", "must be positive");
  }
}

double SpatialGrid::position_periods(std::size_t j) const {
  const auto offset = static_cast<double>(static_cast<std::int64_t>(j) -
                                          static_cast<std::int64_t>(num_points_ / 2));
  return offset * static_cast<double>(num_periods_) / static_cast<double>(num_points_);
}

double SpatialGrid::position(std::size_t j) const { return position_periods(j) * grating_period_; }

double SpatialGrid::phase_argument(std::size_t j) const {
  return 2.0 * kPi * position_periods(j);
}

double SpatialGrid::momentum(std::size_t k) const {
  const auto n = static_cast<std::int64_t>(num_points_);
  auto m = static_cast<std::int64_t>(k);
  if (m >= n / 2) m -= n;
  return 2.0 * static_cast<double>(m) / static_cast<double>(num_periods_);
}

WavePacket::WavePacket(SpatialGrid grid, ComplexVector amplitudes, double quasimomentum)
    : grid_(grid), amplitudes_(std::move(amplitudes)), quasimomentum_(quasimomentum) {
  if (amplitudes_.size() != grid_.num_points()) {
    throw ContractViolation("WavePacket: amplitude count does not match grid");
  }
}

double WavePacket::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum * grid_.dx();
}

void WavePacket::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw DomainError("WavePacket: cannot normalise a zero or non-finite state");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes_) a *= scale;
}

WavePacket init_gaussian(const SpatialGrid& grid, double sigma_w_periods, double momentum_prec) {
  const double max_sigma = static_cast<double>(grid.num_periods()) / 8.0;
  if (!(sigma_w_periods >= 2.0 && sigma_w_periods <= max_sigma)) {
    throw ConfigError("grid.sigma_w",
                      fmt::format("packet width {} periods outside [2, {}] (wraparound/aliasing)",
                                  sigma_w_periods, max_sigma));
  }
  if (!std::isfinite(momentum_prec)) {
    throw ConfigError("kick.initial_momentum", "must be finite");
  }
  ComplexVector amplitudes(grid.num_points());
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma_w_periods * sigma_w_periods);
  for (std::size_t j = 0; j < amplitudes.size(); ++j) {
    const double x = grid.position_periods(j);
    // k_i·x = (p_i/p_rec)·k_L·x = (p_i/p_rec)·(2k_L x)/2
    amplitudes[j] = std::polar(std::exp(-x * x * inv_two_sigma2),
                               0.5 * momentum_prec * grid.phase_argument(j));
  }
  WavePacket psi(grid, std::move(amplitudes), momentum_to_ladder(momentum_prec).beta);
  psi.normalize();
  return psi;
}

int diffraction_order(double momentum_prec, double beta) {
  return static_cast<int>(std::floor(0.5 * (momentum_prec - 2.0 * beta) + 0.5));
}

MomentumDistribution MomentumDistribution::from_probabilities(std::vector<double> momenta,
                                                              std::vector<double> probability,
                                                              double beta) {
  if (momenta.size() != probability.size() || momenta.empty()) {
    throw DomainError("MomentumDistribution: momenta and probabilities differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < probability.size(); ++i) {
    if (!(probability[i] >= 0.0)) {
      throw DomainError("MomentumDistribution: negative or NaN probability");
    }
    if (i > 0 && !(momenta[i] > momenta[i - 1])) {
      throw DomainError("MomentumDistribution: momenta must be strictly ascending");
    }
    total += probability[i];
  }
  if (!(total > 0.0)) {
    throw DomainError("MomentumDistribution: zero total probability");
  }
  MomentumDistribution dist;
  dist.beta_ = beta;
  for (auto& p : probability) p /= total;
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    dist.orders_[diffraction_order(momenta[i], beta)] += probability[i];
  }
  dist.momenta_ = std::move(momenta);
  dist.probability_ = std::move(probability);
  return dist;
}

double MomentumDistribution::order_population(int order) const {
  const auto it = orders_.find(order);
  return it == orders_.end() ? 0.0 : it->second;
}

double MomentumDistribution::bin_width() const {
  if (momenta_.size() < 2) {
    throw DomainError("MomentumDistribution: bin width needs at least two bins");
  }
  return momenta_[1] - momenta_[0];
}

MomentumDistribution distribution_from_momentum_amplitudes(const SpatialGrid& grid,
                                                           std::span<const Complex> amplitudes,
                                                           double beta) {
  const std::size_t n = grid.num_points();
  if (amplitudes.size() != n) {
    throw ContractViolation("distribution: amplitude count does not match grid");
  }
  std::vector<double> momenta(n);
  std::vector<double> probability(n);
  // FFT order -> ascending momentum: bins n/2..n-1 are the negative half.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = (i + n / 2) % n;
    momenta[i] = grid.momentum(k);
    probability[i] = std::norm(amplitudes[k]);
  }
  return MomentumDistribution::from_probabilities(std::move(momenta), std::move(probability),
                                                  beta);
}

MomentumDistribution momentum_distribution(const WavePacket& psi) {
  ComplexVector work(psi.amplitudes().begin(), psi.amplitudes().end());
  FourierTransform(work.size()).forward_unscaled(work);
  return distribution_from_momentum_amplitudes(psi.grid(), work, psi.quasimomentum());
}

double momentum_moment(const MomentumDistribution& dist, int q) {
  if (q < 1 || q > 4) {
    throw DomainError("momentum_moment: q must be in 1..4");
  }
  const auto p = dist.momenta();
  const auto w = dist.probability();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double term = w[i];
    for (int k = 0; k < q; ++k) term *= p[i];
    sum += term;
  }
  return sum;
}

double kinetic_energy(const MomentumDistribution& dist) { return momentum_moment(dist, 2); }

void write_distribution_csv(std::ostream& out, const MomentumDistribution& dist) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "p_over_prec,probability\n");
  const auto p = dist.momenta();
  const auto w = dist.probability();
  for (std::size_t i = 0; i < p.size(); ++i) {
    fmt::format_to(std::back_inserter(buf), "{:.12g},{:.12e}\n", p[i], w[i]);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_order_populations_csv(std::ostream& out, const MomentumDistribution& dist) {
  out << "order,population\n";
  for (const auto& [order, population] : dist.order_populations()) {
    out << fmt::format("{},{:.12e}\n", order, population);
  }
}

}  // namespace aokr
