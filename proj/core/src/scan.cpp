#include "aokr/scan.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

#include "aokr/error.hpp"
#include "aokr/evolution.hpp"
#include "aokr/fit.hpp"
#include "aokr/parallel.hpp"

namespace aokr {

std::string_view axis_name(ScanAxis axis) {
  switch (axis) {
    case ScanAxis::kPeriod: return "period";
    case ScanAxis::kNumKicks: return "num_kicks";
    case ScanAxis::kBeta: return "beta";
    case ScanAxis::kCenterMomentum: return "center_momentum";
  }
  return "unknown";
}

std::optional<ScanAxis> parse_axis(std::string_view name) {
  for (auto axis : {ScanAxis::kPeriod, ScanAxis::kNumKicks, ScanAxis::kBeta,
                    ScanAxis::kCenterMomentum}) {
    if (axis_name(axis) == name) return axis;
  }
  if (name == "kicks") return ScanAxis::kNumKicks;
  return std::nullopt;
}

std::string_view estimator_name(EnergyEstimator estimator) {
  return estimator == EnergyEstimator::kGaussianFit ? "gaussian-fit" : "direct-variance";
}

std::optional<EnergyEstimator> parse_estimator(std::string_view name) {
  if (name == "direct-variance") return EnergyEstimator::kDirectVariance;
  if (name == "gaussian-fit") return EnergyEstimator::kGaussianFit;
  return std::nullopt;
}

KickSchedule schedule_at(const KickSchedule& base, ScanAxis axis, double value) {
  KickSchedule s = base;
  switch (axis) {
    case ScanAxis::kPeriod:
      s.period_T = value;
      break;
    case ScanAxis::kNumKicks:
      if (value < 0.0 || value != std::floor(value)) {
        throw ConfigError("scan.values", fmt::format("kick count {} is not a whole number", value));
      }
      s.num_kicks = static_cast<int>(value);
      break;
    case ScanAxis::kBeta:
      s.beta = value;
      break;
    case ScanAxis::kCenterMomentum: {
      const auto ladder = momentum_to_ladder(value);
      s.ladder_offset = ladder.ladder_offset;
      s.beta = ladder.beta;
      break;
    }
  }
  s.validate();
  return s;
}

ScanRow evaluate_scan_point(ScanAxis axis, double value, const ScanSetup& setup) {
  const KickSchedule schedule = schedule_at(setup.schedule, axis, value);
  const FloquetStepPlan plan(setup.grid, schedule, setup.constants, setup.finite_pulse_substeps);
  EnsembleSpec spec = setup.ensemble;
  spec.center_momentum = schedule.initial_momentum();
  const auto result = ensemble_average(spec, plan, setup.sigma_w_periods, 1);

  ScanRow row;
  row.value = value;
  row.uncertainty = result.uncertainty;
  row.energy = setup.estimator == EnergyEstimator::kGaussianFit
                   ? fit_orders(result.distribution, schedule.beta).energy
                   : result.energy;
  return row;
}

ScanResult energy_scan(ScanAxis axis, std::span<const double> values, const ScanSetup& setup,
                       unsigned threads) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ConfigError("scan.values", "axis values must be finite");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw ConfigError("scan.values", "axis values must be strictly ascending");
    }
  }
  ScanResult result;
  result.axis = axis;
  result.rows.resize(values.size());
  parallel_for(values.size(), threads, [&](std::size_t i) {
    try {
      result.rows[i] = evaluate_scan_point(axis, values[i], setup);
    } catch (const std::exception& e) {
      ScanRow failed;
      failed.value = values[i];
      failed.energy = std::nan("");
      failed.uncertainty = std::nan("");
      failed.ok = false;
      failed.error = e.what();
      result.rows[i] = std::move(failed);
    }
  });
  return result;
}

void write_scan_csv(std::ostream& out, const ScanResult& result) {
  const bool period = result.axis == ScanAxis::kPeriod;
  const std::string label = period ? "period_us" : std::string(axis_name(result.axis));
  const double scale = period ? 1e6 : 1.0;
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "axis,value,energy_Erec,uncertainty_Erec\n");
  for (const auto& row : result.rows) {
    fmt::format_to(std::back_inserter(buf), "{},{:.10g},{:.12g},{:.12g}\n", label,
                   row.value * scale, row.energy, row.uncertainty);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

}  // namespace aokr
