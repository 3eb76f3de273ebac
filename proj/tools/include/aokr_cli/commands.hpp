#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "aokr_cli/settings.hpp"

namespace aokr::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Files written by one command, relative to the output directory.
struct Artifacts {
  std::filesystem::path dir;
  std::vector<std::string> files;
};

Artifacts run_evolve(const RunConfig& config, const SettingsLayer& settings, std::ostream& log);
Artifacts run_scan(const RunConfig& config, const SettingsLayer& settings, std::ostream& log);
Artifacts run_oracle(const RunConfig& config, const SettingsLayer& settings, std::ostream& log);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace aokr::cli
