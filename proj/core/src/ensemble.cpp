#include "aokr/ensemble.hpp"

#include <cmath>

#include "aokr/error.hpp"
#include "aokr/parallel.hpp"

namespace aokr {

void EnsembleSpec::validate() const {
  if (!std::isfinite(center_momentum)) {
    throw ConfigError("ensemble.center", "must be finite");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("ensemble.sigma", "must be finite and >= 0");
  }
  if (sigma > 0.0 && (num_samples < 9 || num_samples % 2 == 0)) {
    throw ConfigError("ensemble.samples", "must be an odd integer >= 9");
  }
  if (!(span_sigmas > 0.0)) {
    throw ConfigError("ensemble.span", "must be > 0");
  }
}

std::vector<EnsembleSample> ensemble_samples(const EnsembleSpec& spec) {
  spec.validate();
  if (spec.sigma == 0.0) {
    return {{spec.center_momentum, 1.0}};
  }
  const int half = spec.num_samples / 2;
  const double step = spec.span_sigmas * spec.sigma / half;
  std::vector<EnsembleSample> samples;
  samples.reserve(static_cast<std::size_t>(spec.num_samples));
  double total = 0.0;
  for (int i = -half; i <= half; ++i) {
    const double offset = i * step;
    const double w = std::exp(-0.5 * offset * offset / (spec.sigma * spec.sigma));
    samples.push_back({spec.center_momentum + offset, w});
    total += w;
  }
  for (auto& s : samples) s.weight /= total;
  return samples;
}

EnsembleResult ensemble_average(const EnsembleSpec& spec, const FloquetStepPlan& plan,
                                double sigma_w_periods, unsigned threads) {
  const auto samples = ensemble_samples(spec);
  std::vector<MomentumDistribution> members(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    auto psi = init_gaussian(plan.grid(), sigma_w_periods, samples[i].momentum);
    auto records = run_kicks(std::move(psi), plan, RecordMode::kFinal);
    members[i] = std::move(records.back().distribution);
  });

  EnsembleResult result;
  if (members.size() == 1) {
    result.distribution = std::move(members.front());
    result.energy = kinetic_energy(result.distribution);
    result.member_energies = {result.energy};
    return result;
  }

  const auto momenta = members.front().momenta();
  std::vector<double> sum(momenta.size(), 0.0);
  result.member_energies.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto p = members[i].probability();
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += samples[i].weight * p[k];
    result.member_energies.push_back(kinetic_energy(members[i]));
  }
  result.distribution = MomentumDistribution::from_probabilities(
      {momenta.begin(), momenta.end()}, std::move(sum),
      momentum_to_ladder(spec.center_momentum).beta);
  result.energy = kinetic_energy(result.distribution);

  double mean = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    mean += samples[i].weight * result.member_energies[i];
  }
  double var = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = result.member_energies[i] - mean;
    var += samples[i].weight * d * d;
  }
  result.uncertainty = std::sqrt(var);
  return result;
}

}  // namespace aokr
