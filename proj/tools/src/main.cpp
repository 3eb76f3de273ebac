#include <CLI11.hpp>

#include <iostream>

#include "aokr/error.hpp"
#include "aokr_cli/commands.hpp"

namespace {

using namespace aokr;
using namespace aokr::cli;

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kPhysics = 3, kIo = 4 };

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

const Flag kFlags[] = {
    {"--wavelength", "constants.wavelength", "laser wavelength in metres"},
    {"--mass", "constants.mass", "atomic mass in kg"},
    {"--num-points", "grid.num_points", "grid points (power of two)"},
    {"--num-periods", "grid.num_periods", "grid length in standing-wave periods"},
    {"--sigma-w", "grid.sigma_w", "packet width in standing-wave periods"},
    {"--phi-d", "kick.phi_d", "kick strength (pulse area)"},
    {"--period", "kick.period", "kick period: 66.3us, 0.5ms, TT, TT/2, 3TT/2 (bare number = us)"},
    {"--kbar", "kick.kbar", "effective Planck constant instead of --period: 4pi, 2pi, 12.5"},
    {"--kicks", "kick.kicks", "number of kicks"},
    {"--beta", "kick.beta", "quasimomentum in [0,1)"},
    {"--p-init", "kick.p_init", "initial momentum in p_rec instead of --beta"},
    {"--pulse-width", "kick.pulse_width", "finite pulse width (time)"},
    {"--substeps", "kick.substeps", "sub-kicks per finite pulse"},
    {"--ensemble-sigma", "ensemble.sigma", "initial momentum spread in p_rec (0 = pure state)"},
    {"--ensemble-samples", "ensemble.samples", "odd number of ensemble members"},
    {"--ensemble-span", "ensemble.span", "sampled range in sigmas"},
    {"--axis", "scan.axis", "period | num_kicks | beta | center_momentum"},
    {"--from", "scan.from", "first axis value"},
    {"--to", "scan.to", "last axis value"},
    {"--step", "scan.step", "axis step (inclusive of --to)"},
    {"--steps", "scan.steps", "number of points in [from, to)"},
    {"--estimator", "scan.estimator", "direct-variance | gaussian-fit"},
    {"--l", "oracle.l", "half-Talbot multiple for the oracle (default: from --period)"},
    {"--fractions", "oracle.fractions", "tabulate l/m Talbot fractions up to this denominator"},
    {"--max-ratio", "oracle.max_ratio", "largest l/m in the fraction table"},
    {"--out", "output.dir", "output directory"},
    {"--record", "output.record", "per-kick | final"},
    {"--threads", "run.threads", "worker threads (0 = all cores)"},
};

struct Invocation {
  std::string config_path;
  SettingsLayer overrides;
  bool json = false;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* help, Invocation& inv) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--config", inv.config_path, "INI file; flags override its values");
  for (const auto& f : kFlags) {
    const std::string key = f.key;
    sub->add_option_function<std::string>(
        f.name, [&inv, key](const std::string& v) { inv.overrides[key] = v; }, f.help);
  }
  sub->add_flag("--json", inv.json, "also write plot-ready JSON");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atom-optics kicked rotor simulator"};
  app.require_subcommand(1);
  Invocation inv;
  auto* evolve = add_command(app, "evolve", "per-kick momentum distributions and energies", inv);
  auto* scan = add_command(app, "scan", "final energy along a swept parameter", inv);
  auto* oracle = add_command(app, "oracle", "closed-form populations at T = l*TT/2", inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    std::vector<SettingsLayer> layers;
    if (!inv.config_path.empty()) layers.push_back(load_ini(inv.config_path));
    if (inv.json) inv.overrides["output.json"] = "true";
    layers.push_back(inv.overrides);
    const auto settings = merge_settings(layers);

    if (evolve->parsed()) {
      run_evolve(resolve(settings, Command::kEvolve), settings, std::cout);
    } else if (scan->parsed()) {
      run_scan(resolve(settings, Command::kScan), settings, std::cout);
    } else if (oracle->parsed()) {
      run_oracle(resolve(settings, Command::kOracle), settings, std::cout);
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const NyquistOverflow& e) {
    std::cerr << "physics abort: " << e.what() << '\n';
    return kPhysics;
  } catch (const DomainError& e) {
    std::cerr << "physics abort: " << e.what() << '\n';
    return kPhysics;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}
