#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aokr/ensemble.hpp"
#include "aokr/units.hpp"
#include "aokr/wavepacket.hpp"

namespace aokr {

enum class ScanAxis { kPeriod, kNumKicks, kBeta, kCenterMomentum };
enum class EnergyEstimator { kDirectVariance, kGaussianFit };

/// "period", "num_kicks", "beta", "center_momentum"
std::string_view axis_name(ScanAxis axis);
std::optional<ScanAxis> parse_axis(std::string_view name);
/// "direct-variance", "gaussian-fit"
std::string_view estimator_name(EnergyEstimator estimator);
std::optional<EnergyEstimator> parse_estimator(std::string_view name);

/// Everything held fixed while one parameter is swept.
struct ScanSetup {
  PhysicalConstants constants;
  SpatialGrid grid;
  KickSchedule schedule;
  double sigma_w_periods = 10.0;
  /// sigma == 0 runs a single pure state. The centre is always taken from the
  /// schedule's initial momentum.
  EnsembleSpec ensemble{0.0, 0.0, 21, 3.0};
  EnergyEstimator estimator = EnergyEstimator::kDirectVariance;
  int finite_pulse_substeps = 1;
};

struct ScanRow {
  double value = 0.0;
  double energy = 0.0;       // E_rec
  double uncertainty = 0.0;  // E_rec, ensemble spread (0 for a pure state)
  bool ok = true;
  std::string error;
};

struct ScanResult {
  ScanAxis axis = ScanAxis::kPeriod;
  std::vector<ScanRow> rows;
};

/// Axis values are in SI seconds for kPeriod, a kick count for kNumKicks,
/// quasimomentum for kBeta and p_rec for kCenterMomentum.
KickSchedule schedule_at(const KickSchedule& base, ScanAxis axis, double value);

/// Final energy for one axis value. Physics failures propagate.
ScanRow evaluate_scan_point(ScanAxis axis, double value, const ScanSetup& setup);

/// Evaluates every axis value; values must be finite and ascending
/// (ConfigError). A point that fails is recorded with ok = false and the scan
/// continues. Rows come back in axis order for any thread count.
ScanResult energy_scan(ScanAxis axis, std::span<const double> values, const ScanSetup& setup,
                       unsigned threads = 1);

/// `axis,value,energy_Erec,uncertainty_Erec`; periods are written in μs under
/// the axis label `period_us`.
void write_scan_csv(std::ostream& out, const ScanResult& result);

}  // namespace aokr
