#pragma once

#include <vector>

#include "aokr/evolution.hpp"
#include "aokr/wavepacket.hpp"

namespace aokr {

/// Gaussian spread of initial momenta (p_rec units) sampled on an odd number
/// of equally spaced points over center ± span_sigmas·sigma.
struct EnsembleSpec {
  double center_momentum = 0.0;
  double sigma = 0.18;
  int num_samples = 21;
  double span_sigmas = 3.0;

  /// sigma == 0 is the single-sample (pure state) limit; otherwise requires
  /// an odd num_samples >= 9. Throws ConfigError.
  void validate() const;
};

struct EnsembleSample {
  double momentum = 0.0;  // p_rec
  double weight = 0.0;
};

/// Sample momenta with normalised Gaussian weights.
std::vector<EnsembleSample> ensemble_samples(const EnsembleSpec& spec);

struct EnsembleResult {
  MomentumDistribution distribution;
  double energy = 0.0;       // E_rec, of the averaged distribution
  double uncertainty = 0.0;  // weighted std. dev. of member energies
  std::vector<double> member_energies;
};

/// Runs the plan once per sampled initial momentum (Gaussian packets of width
/// sigma_w_periods) and sums the final momentum distributions incoherently.
EnsembleResult ensemble_average(const EnsembleSpec& spec, const FloquetStepPlan& plan,
                                double sigma_w_periods, unsigned threads = 1);

}  // namespace aokr
