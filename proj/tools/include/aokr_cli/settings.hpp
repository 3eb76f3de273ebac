#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aokr/ensemble.hpp"
#include "aokr/evolution.hpp"
#include "aokr/scan.hpp"
#include "aokr/units.hpp"
#include "aokr/wavepacket.hpp"

namespace aokr::cli {

/// Flat "section.key" -> raw text. An empty value means unset.
using SettingsLayer = std::map<std::string, std::string>;

/// Every recognised key in file order, with its default.
const std::vector<std::pair<std::string, std::string>>& setting_defaults();

/// Reads an INI file into a layer. Throws ConfigError on unknown keys or
/// unreadable files.
SettingsLayer load_ini(const std::filesystem::path& path);

/// Defaults, then each layer in turn. Within one layer at most one key of
/// each alternative group (period/kbar, beta/p_init, step/steps) may be set;
/// a later layer setting one of them clears the others.
SettingsLayer merge_settings(const std::vector<SettingsLayer>& layers);

/// The merged settings as an INI file that reproduces the run.
void write_ini(std::ostream& out, const SettingsLayer& settings);

/// "66.3us", "0.5 ms", "TT/2", "3TT/2", "1.5TT"; a bare number is in μs.
double parse_time(const std::string& field, const std::string& text,
                  const PhysicalConstants& constants);
/// "4pi", "2π", "pi", "0.5pi" or a plain number.
double parse_kbar(const std::string& field, const std::string& text);
double parse_number(const std::string& field, const std::string& text);
long long parse_integer(const std::string& field, const std::string& text);

enum class Command { kEvolve, kScan, kOracle };

struct RunConfig {
  PhysicalConstants constants;
  SpatialGrid grid;
  double sigma_w_periods = 10.0;
  KickSchedule schedule;
  int finite_pulse_substeps = 1;
  EnsembleSpec ensemble;
  ScanAxis axis = ScanAxis::kPeriod;
  std::vector<double> scan_values;
  EnergyEstimator estimator = EnergyEstimator::kDirectVariance;
  std::optional<int> oracle_l;
  int fractions = 0;
  double max_ratio = 1.0;
  std::filesystem::path out_dir;
  RecordMode record = RecordMode::kPerKick;
  bool json = false;
  unsigned threads = 0;
};

/// Validates everything the command needs; throws ConfigError naming the key.
RunConfig resolve(const SettingsLayer& settings, Command command);

}  // namespace aokr::cli
