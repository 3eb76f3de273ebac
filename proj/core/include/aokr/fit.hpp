#pragma once

#include <iosfwd>
#include <vector>

#include "aokr/wavepacket.hpp"

namespace aokr {

/// Orders whose window holds less than this fraction of the probability are
/// not fitted.
inline constexpr double kFitMinWindowMass = 2e-3;

struct OrderFit {
  int order = 0;
  double center = 0.0;     // p_rec, fixed at 2j + 2β
  double amplitude = 0.0;  // peak probability density per p_rec
  double width = 0.0;      // Gaussian σ, p_rec
  double weight = 0.0;     // integrated probability
  bool converged = true;   // false: windowed moments used instead of the fit
};

struct FitReport {
  std::vector<OrderFit> orders;
  double residual_norm = 0.0;
  double energy = 0.0;  // E_rec
};

/// Fits one Gaussian per diffraction order, centre fixed at (2j+2β) p_rec,
/// amplitude and width free, by least squares over the order window.
/// energy = Σ_j weight_j·(center_j² + width_j²).
FitReport fit_orders(const MomentumDistribution& dist, double beta);

/// `order,center_prec,amplitude,width_prec,weight`
void write_fit_report_csv(std::ostream& out, const FitReport& report);

}  // namespace aokr
