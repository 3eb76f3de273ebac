#include "aokr_cli/settings.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <regex>

#include "aokr/error.hpp"

namespace aokr::cli {

namespace {

const std::vector<std::vector<std::string>> kAlternatives{
    {"kick.period", "kick.kbar"}, {"kick.beta", "kick.p_init"}, {"scan.step", "scan.steps"}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_set(const SettingsLayer& layer, const std::string& key) {
  const auto it = layer.find(key);
  return it != layer.end() && !it->second.empty();
}

const std::string& get(const SettingsLayer& s, const std::string& key) {
  static const std::string empty;
  const auto it = s.find(key);
  return it == s.end() ? empty : it->second;
}

const std::string kNumber = R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";

}  // namespace

const std::vector<std::pair<std::string, std::string>>& setting_defaults() {
  static const std::vector<std::pair<std::string, std::string>> defaults{
      {"constants.wavelength", "7.8e-07"},
      {"constants.mass", "1.44316e-25"},
      {"grid.num_points", "65536"},
      {"grid.num_periods", "512"},
      {"grid.sigma_w", "10"},
      {"kick.phi_d", "1"},
      {"kick.period", "TT"},
      {"kick.kbar", ""},
      {"kick.kicks", "1"},
      {"kick.beta", "0"},
      {"kick.p_init", ""},
      {"kick.pulse_width", "0"},
      {"kick.substeps", "1"},
      {"ensemble.sigma", "0"},
      {"ensemble.samples", "21"},
      {"ensemble.span", "3"},
      {"scan.axis", "period"},
      {"scan.from", ""},
      {"scan.to", ""},
      {"scan.step", ""},
      {"scan.steps", ""},
      {"scan.estimator", "direct-variance"},
      {"oracle.l", ""},
      {"oracle.fractions", "0"},
      {"oracle.max_ratio", "1"},
      {"output.dir", "aokr_out"},
      {"output.record", "per-kick"},
      {"output.json", "false"},
      {"run.threads", "0"},
  };
  return defaults;
}

SettingsLayer load_ini(const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config", e.what());
  }
  const auto& defaults = setting_defaults();
  SettingsLayer layer;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(section, "settings must live inside a [section]");
    }
    for (const auto& [key, value] : body) {
      const std::string name = section + "." + key;
      const bool known = std::any_of(defaults.begin(), defaults.end(),
                                     [&](const auto& d) { return d.first == name; });
      if (!known) throw ConfigError(name, "unknown setting");
      layer[name] = trim(value.data());
    }
  }
  return layer;
}

SettingsLayer merge_settings(const std::vector<SettingsLayer>& layers) {
  SettingsLayer merged(setting_defaults().begin(), setting_defaults().end());
  for (const auto& layer : layers) {
    for (const auto& group : kAlternatives) {
      const auto count = std::count_if(group.begin(), group.end(),
                                       [&](const auto& k) { return is_set(layer, k); });
      if (count > 1) {
        throw ConfigError(group.front(),
                          fmt::format("give only one of {}", fmt::join(group, ", ")));
      }
      if (count == 1) {
        for (const auto& k : group) merged[k].clear();
      }
    }
    for (const auto& [key, value] : layer) {
      if (!merged.contains(key)) throw ConfigError(key, "unknown setting");
      if (!value.empty()) merged[key] = value;
    }
  }
  return merged;
}

void write_ini(std::ostream& out, const SettingsLayer& settings) {
  std::string section;
  for (const auto& [name, fallback] : setting_defaults()) {
    const auto dot = name.find('.');
    const std::string sec = name.substr(0, dot);
    if (sec != section) {
      out << (section.empty() ? "" : "\n") << '[' << sec << "]\n";
      section = sec;
    }
    const auto& value = get(settings, name);
    if (!value.empty()) out << name.substr(dot + 1) << " = " << value << '\n';
  }
}

double parse_number(const std::string& field, const std::string& text) {
  std::string t = trim(text);
  if (t.size() > 1 && t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(field, fmt::format("expected a number, got '{}'", text));
  }
  return v;
}

long long parse_integer(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field, fmt::format("expected an integer, got '{}'", text));
  }
  return v;
}

double parse_time(const std::string& field, const std::string& text,
                  const PhysicalConstants& constants) {
  const std::string t = trim(text);
  static const std::regex talbot("^" + kNumber + R"(?\s*\*?\s*TT(?:\s*/\s*)" + kNumber + ")?$");
  static const std::regex with_unit("^" + kNumber + R"(\s*(s|ms|us|µs|μs|ns)?$)");
  std::smatch m;
  if (std::regex_match(t, m, talbot)) {
    const double mult = m[1].matched ? parse_number(field, m[1]) : 1.0;
    const double div = m[2].matched ? parse_number(field, m[2]) : 1.0;
    if (div == 0.0) throw ConfigError(field, fmt::format("division by zero in '{}'", text));
    return mult * constants.T_talbot() / div;
  }
  if (std::regex_match(t, m, with_unit)) {
    const double v = parse_number(field, m[1]);
    const std::string unit = m[2].matched ? m[2].str() : "us";
    if (unit == "s") return v;
    if (unit == "ms") return v * 1e-3;
    if (unit == "ns") return v * 1e-9;
    return v * 1e-6;
  }
  throw ConfigError(field, fmt::format("expected a time such as 66.3us, 0.5ms or TT/2, got '{}'",
                                       text));
}

double parse_kbar(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  static const std::regex multiple("^" + kNumber + R"(?\s*\*?\s*(?:pi|π)$)");
  std::smatch m;
  if (std::regex_match(t, m, multiple)) {
    return (m[1].matched ? parse_number(field, m[1]) : 1.0) * kPi;
  }
  return parse_number(field, t);
}

RunConfig resolve(const SettingsLayer& s, Command command) {
  RunConfig c;
  c.constants = PhysicalConstants(parse_number("constants.wavelength", get(s, "constants.wavelength")),
                                  parse_number("constants.mass", get(s, "constants.mass")));

  const auto points = parse_integer("grid.num_points", get(s, "grid.num_points"));
  const auto periods = parse_integer("grid.num_periods", get(s, "grid.num_periods"));
  if (points <= 0) throw ConfigError("grid.num_points", "must be positive");
  if (periods <= 0) throw ConfigError("grid.num_periods", "must be positive");
  c.grid = SpatialGrid(static_cast<std::size_t>(points), static_cast<std::size_t>(periods),
                       c.constants.grating_period());
  c.sigma_w_periods = parse_number("grid.sigma_w", get(s, "grid.sigma_w"));
  if (c.sigma_w_periods < 2.0 || c.sigma_w_periods > static_cast<double>(periods) / 8.0) {
    throw ConfigError("grid.sigma_w", fmt::format("must lie in [2, num_periods/8 = {:g}]",
                                                  static_cast<double>(periods) / 8.0));
  }

  auto& k = c.schedule;
  k.phi_d = parse_number("kick.phi_d", get(s, "kick.phi_d"));
  if (is_set(s, "kick.kbar")) {
    const double kbar = parse_kbar("kick.kbar", get(s, "kick.kbar"));
    if (!(kbar > 0.0)) throw ConfigError("kick.kbar", "must be positive");
    k.period_T = kbar_to_period(kbar, c.constants);
  } else {
    k.period_T = parse_time("kick.period", get(s, "kick.period"), c.constants);
  }
  const auto kicks = parse_integer("kick.kicks", get(s, "kick.kicks"));
  if (kicks < 0 || kicks > 100000) throw ConfigError("kick.kicks", "must be in [0, 100000]");
  k.num_kicks = static_cast<int>(kicks);
  if (is_set(s, "kick.p_init")) {
    const auto ladder = momentum_to_ladder(parse_number("kick.p_init", get(s, "kick.p_init")));
    k.ladder_offset = ladder.ladder_offset;
    k.beta = ladder.beta;
  } else {
    k.beta = parse_number("kick.beta", get(s, "kick.beta"));
  }
  k.pulse_width_tau = parse_time("kick.pulse_width", get(s, "kick.pulse_width"), c.constants);
  const auto substeps = parse_integer("kick.substeps", get(s, "kick.substeps"));
  if (substeps < 1 || substeps > 4096) throw ConfigError("kick.substeps", "must be in [1, 4096]");
  c.finite_pulse_substeps = static_cast<int>(substeps);
  if (k.pulse_width_tau > 0.0 && c.finite_pulse_substeps == 1) {
    throw ConfigError("kick.substeps", "a finite pulse width needs substeps > 1");
  }
  k.validate();

  c.ensemble.center_momentum = k.initial_momentum();
  c.ensemble.sigma = parse_number("ensemble.sigma", get(s, "ensemble.sigma"));
  c.ensemble.num_samples =
      static_cast<int>(parse_integer("ensemble.samples", get(s, "ensemble.samples")));
  c.ensemble.span_sigmas = parse_number("ensemble.span", get(s, "ensemble.span"));
  c.ensemble.validate();

  const auto estimator = parse_estimator(get(s, "scan.estimator"));
  if (!estimator) {
    throw ConfigError("scan.estimator", "expected direct-variance or gaussian-fit");
  }
  c.estimator = *estimator;

  if (command == Command::kScan) {
    const auto axis = parse_axis(get(s, "scan.axis"));
    if (!axis) {
      throw ConfigError("scan.axis", "expected period, num_kicks, beta or center_momentum");
    }
    c.axis = *axis;
    auto value = [&](const std::string& key) {
      if (!is_set(s, key)) throw ConfigError(key, "required for a scan");
      return c.axis == ScanAxis::kPeriod ? parse_time(key, get(s, key), c.constants)
                                         : parse_number(key, get(s, key));
    };
    const double from = value("scan.from");
    const double to = value("scan.to");
    if (!(to > from)) throw ConfigError("scan.to", "must be greater than scan.from");
    if (is_set(s, "scan.steps")) {
      const auto n = parse_integer("scan.steps", get(s, "scan.steps"));
      if (n < 1 || n > 1000000) throw ConfigError("scan.steps", "must be in [1, 1000000]");
      for (long long i = 0; i < n; ++i) {
        c.scan_values.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(n));
      }
    } else if (is_set(s, "scan.step")) {
      const double step = value("scan.step");
      if (!(step > 0.0)) throw ConfigError("scan.step", "must be positive");
      const double count = std::floor((to - from) / step + 1e-9);
      if (count > 1e6) throw ConfigError("scan.step", "more than a million scan points");
      for (long long i = 0; i <= static_cast<long long>(count); ++i) {
        c.scan_values.push_back(from + step * static_cast<double>(i));
      }
    } else {
      throw ConfigError("scan.step", "give scan.step or scan.steps");
    }
  }

  if (is_set(s, "oracle.l")) {
    const auto l = parse_integer("oracle.l", get(s, "oracle.l"));
    if (l < 1 || l > 1000) throw ConfigError("oracle.l", "must be in [1, 1000]");
    c.oracle_l = static_cast<int>(l);
  }
  const auto fractions = parse_integer("oracle.fractions", get(s, "oracle.fractions"));
  if (fractions != 0 && (fractions < 2 || fractions > 1000)) {
    throw ConfigError("oracle.fractions", "must be 0 (off) or in [2, 1000]");
  }
  c.fractions = static_cast<int>(fractions);
  c.max_ratio = parse_number("oracle.max_ratio", get(s, "oracle.max_ratio"));
  if (!(c.max_ratio > 0.0)) throw ConfigError("oracle.max_ratio", "must be positive");

  c.out_dir = get(s, "output.dir");
  if (c.out_dir.empty()) throw ConfigError("output.dir", "must not be empty");
  const auto& record = get(s, "output.record");
  if (record == "per-kick") {
    c.record = RecordMode::kPerKick;
  } else if (record == "final") {
    c.record = RecordMode::kFinal;
  } else {
    throw ConfigError("output.record", "expected per-kick or final");
  }
  const auto& json = get(s, "output.json");
  if (json == "true" || json == "1") {
    c.json = true;
  } else if (json == "false" || json == "0") {
    c.json = false;
  } else {
    throw ConfigError("output.json", "expected true or false");
  }
  const auto threads = parse_integer("run.threads", get(s, "run.threads"));
  if (threads < 0 || threads > 1024) throw ConfigError("run.threads", "must be in [0, 1024]");
  c.threads = static_cast<unsigned>(threads);
  return c;
}

}  // namespace aokr::cli
