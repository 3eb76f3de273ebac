#include "aokr_cli/commands.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "aokr/error.hpp"
#include "aokr/fit.hpp"
#include "aokr/oracle.hpp"
#include "aokr/parallel.hpp"

namespace aokr::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Writer {
 public:
  explicit Writer(fs::path dir) : artifacts_{std::move(dir), {}} {
    std::error_code ec;
    fs::create_directories(artifacts_.dir, ec);
    if (ec) {
      throw IoError(fmt::format("cannot create output directory {}: {}", artifacts_.dir.string(),
                                ec.message()));
    }
  }

  template <class Fn>
  void write(const std::string& name, Fn&& fill) {
    const fs::path path = artifacts_.dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open {} for writing", path.string()));
    fill(out);
    out.flush();
    if (!out) throw IoError(fmt::format("write to {} failed", path.string()));
    artifacts_.files.push_back(name);
  }

  void write_json(const std::string& name, const json& doc) {
    write(name, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
  }

  // Resolved config, then a checksum manifest over everything written.
  Artifacts finish(const SettingsLayer& settings) {
    write("config.ini", [&](std::ostream& out) { write_ini(out, settings); });
    std::vector<std::string> names = artifacts_.files;
    std::sort(names.begin(), names.end());
    std::ostringstream manifest;
    for (const auto& name : names) {
      manifest << sha256_file(artifacts_.dir / name) << "  " << name << '\n';
    }
    write("manifest.sha256", [&](std::ostream& out) { out << manifest.str(); });
    return artifacts_;
  }

 private:
  Artifacts artifacts_;
};

struct Averaged {
  MomentumDistribution distribution;
  double energy = 0.0;
  double uncertainty = 0.0;
};

// Weighted incoherent sum of member distributions on a common grid.
Averaged combine(const std::vector<EnsembleSample>& samples,
                 const std::vector<const MomentumDistribution*>& members, double beta) {
  if (members.size() == 1) {
    Averaged a{*members.front(), kinetic_energy(*members.front()), 0.0};
    return a;
  }
  const auto momenta = members.front()->momenta();
  std::vector<double> sum(momenta.size(), 0.0);
  double mean = 0.0;
  std::vector<double> energies;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto p = members[i]->probability();
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += samples[i].weight * p[k];
    energies.push_back(kinetic_energy(*members[i]));
    mean += samples[i].weight * energies.back();
  }
  double var = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    var += samples[i].weight * (energies[i] - mean) * (energies[i] - mean);
  }
  Averaged a;
  a.distribution = MomentumDistribution::from_probabilities({momenta.begin(), momenta.end()},
                                                           std::move(sum), beta);
  a.energy = kinetic_energy(a.distribution);
  a.uncertainty = std::sqrt(var);
  return a;
}

std::string kick_file(int kick) { return fmt::format("kick_{:03d}.csv", kick); }

json distribution_json(const MomentumDistribution& d) {
  json orders = json::array();
  for (const auto& [order, pop] : d.order_populations()) orders.push_back({order, pop});
  return {{"order_populations", orders}};
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read {}", path.string()));
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 initialisation failed");
  }
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

Artifacts run_evolve(const RunConfig& c, const SettingsLayer& settings, std::ostream& log) {
  const FloquetStepPlan plan(c.grid, c.schedule, c.constants, c.finite_pulse_substeps);
  const auto samples = ensemble_samples(c.ensemble);
  const double beta = c.schedule.beta;

  std::vector<std::vector<KickRecord>> runs(samples.size());
  std::vector<MomentumDistribution> initial(samples.size());
  parallel_for(samples.size(), c.threads, [&](std::size_t i) {
    auto psi = init_gaussian(c.grid, c.sigma_w_periods, samples[i].momentum);
    initial[i] = momentum_distribution(psi);
    runs[i] = run_kicks(std::move(psi), plan, c.record);
  });

  // Per-kick mode already starts at kick 0; final mode has only the last.
  const bool has_initial = runs.front().front().kick == 0;
  const std::size_t first = has_initial ? 1 : 0;

  Writer writer(c.out_dir);
  std::vector<std::pair<int, Averaged>> rows;
  auto averaged = [&](std::size_t r) {
    std::vector<const MomentumDistribution*> members;
    for (const auto& run : runs) members.push_back(&run[r].distribution);
    return combine(samples, members, beta);
  };
  {
    std::vector<const MomentumDistribution*> members;
    for (const auto& d : initial) members.push_back(&d);
    rows.emplace_back(0, combine(samples, members, beta));
  }
  writer.write("initial_distribution.csv",
               [&](std::ostream& out) { write_distribution_csv(out, rows.back().second.distribution); });
  for (std::size_t r = first; r < runs.front().size(); ++r) {
    const int kick = runs.front()[r].kick;
    rows.emplace_back(kick, averaged(r));
    writer.write(kick_file(kick), [&](std::ostream& out) {
      write_distribution_csv(out, rows.back().second.distribution);
    });
  }

  writer.write("summary.csv", [&](std::ostream& out) {
    out << "kick,energy_Erec,uncertainty_Erec\n";
    for (const auto& [kick, a] : rows) {
      out << fmt::format("{},{:.12g},{:.12g}\n", kick, a.energy, a.uncertainty);
    }
  });
  const auto& last = rows.back().second;
  writer.write("final_orders.csv",
               [&](std::ostream& out) { write_order_populations_csv(out, last.distribution); });
  if (c.estimator == EnergyEstimator::kGaussianFit) {
    writer.write("final_fit.csv", [&](std::ostream& out) {
      write_fit_report_csv(out, fit_orders(last.distribution, beta));
    });
  }
  if (c.json) {
    json doc;
    doc["kbar"] = c.schedule.kbar(c.constants);
    doc["period_us"] = c.schedule.period_T * 1e6;
    doc["phi_d"] = c.schedule.phi_d;
    doc["beta"] = beta;
    doc["kicks"] = json::array();
    for (const auto& [kick, a] : rows) {
      json row = distribution_json(a.distribution);
      row["kick"] = kick;
      row["energy_Erec"] = a.energy;
      row["uncertainty_Erec"] = a.uncertainty;
      doc["kicks"].push_back(row);
    }
    writer.write_json("summary.json", doc);
  }
  const auto artifacts = writer.finish(settings);
  log << fmt::format("evolve: {} kicks, final energy {:.6g} E_rec; {} files in {}\n",
                     c.schedule.num_kicks, last.energy, artifacts.files.size(), c.out_dir.string());
  return artifacts;
}

Artifacts run_scan(const RunConfig& c, const SettingsLayer& settings, std::ostream& log) {
  ScanSetup setup;
  setup.constants = c.constants;
  setup.grid = c.grid;
  setup.schedule = c.schedule;
  setup.sigma_w_periods = c.sigma_w_periods;
  setup.ensemble = c.ensemble;
  setup.estimator = c.estimator;
  setup.finite_pulse_substeps = c.finite_pulse_substeps;
  const auto result = energy_scan(c.axis, c.scan_values, setup, c.threads);

  Writer writer(c.out_dir);
  writer.write("scan.csv", [&](std::ostream& out) { write_scan_csv(out, result); });

  std::size_t failed = 0;
  for (const auto& row : result.rows) {
    if (!row.ok) {
      ++failed;
      log << fmt::format("scan: {} = {:g} failed: {}\n", axis_name(c.axis), row.value, row.error);
    }
  }

  // Closed-form overlay for quasimomentum sweeps at T = l·T_T/2.
  const int l = half_talbot_multiple(c.schedule.period_T, c.constants);
  const bool overlay = c.axis == ScanAxis::kBeta && l > 0;
  std::vector<double> oracle_energy;
  if (overlay) {
    for (const double beta : c.scan_values) {
      if (!(beta >= 0.0 && beta < 1.0)) {
        oracle_energy.push_back(std::nan(""));
        continue;
      }
      const ResonanceContext ctx{l, beta, c.schedule.phi_d, c.schedule.num_kicks};
      oracle_energy.push_back(two_photon_moment_to_erec(
          momentum_moment(ctx, 2, static_cast<int>(c.schedule.ladder_offset))));
    }
    writer.write("oracle_overlay.csv", [&](std::ostream& out) {
      out << "beta,energy_Erec\n";
      for (std::size_t i = 0; i < c.scan_values.size(); ++i) {
        out << fmt::format("{:.10g},{:.12g}\n", c.scan_values[i], oracle_energy[i]);
      }
    });
  }
  if (c.json) {
    const bool period = c.axis == ScanAxis::kPeriod;
    json doc;
    doc["axis"] = period ? "period_us" : std::string(axis_name(c.axis));
    doc["estimator"] = std::string(estimator_name(c.estimator));
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const auto& row = result.rows[i];
      json r{{"value", row.value * (period ? 1e6 : 1.0)}, {"ok", row.ok}};
      if (row.ok) {
        r["energy_Erec"] = row.energy;
        r["uncertainty_Erec"] = row.uncertainty;
      } else {
        r["error"] = row.error;
      }
      if (overlay) r["oracle_energy_Erec"] = oracle_energy[i];
      doc["rows"].push_back(r);
    }
    writer.write_json("scan.json", doc);
  }
  const auto artifacts = writer.finish(settings);
  log << fmt::format("scan: {} points along {} ({} failed); {} files in {}\n", result.rows.size(),
                     axis_name(c.axis), failed, artifacts.files.size(), c.out_dir.string());
  return artifacts;
}

Artifacts run_oracle(const RunConfig& c, const SettingsLayer& settings, std::ostream& log) {
  int l = c.oracle_l.value_or(0);
  if (l == 0) {
    l = half_talbot_multiple(c.schedule.period_T, c.constants);
    if (l == 0) {
      throw ConfigError(
          "kick.period",
          fmt::format("the closed-form ladder amplitudes hold only at T = l*TT/2 for integer "
                      "l >= 1 (TT = {:.6g} us); {:.6g} us is {:.6g} TT. Use --period TT/2, "
                      "TT, 3TT/2, ... or give --l",
                      c.constants.T_talbot() * 1e6, c.schedule.period_T * 1e6,
                      c.schedule.period_T / c.constants.T_talbot()));
    }
  }
  const ResonanceContext ctx{l, c.schedule.beta, c.schedule.phi_d, c.schedule.num_kicks};
  const auto amps = ladder_amplitudes(ctx);
  const int offset = static_cast<int>(c.schedule.ladder_offset);
  const double arg = effective_argument(ctx);
  const double energy = two_photon_moment_to_erec(momentum_moment(ctx, 2, offset));

  Writer writer(c.out_dir);
  writer.write("oracle_populations.csv", [&](std::ostream& out) {
    out << "order,population\n";
    for (int j = -amps.max_order(); j <= amps.max_order(); ++j) {
      out << fmt::format("{},{:.12e}\n", j + offset, amps.population(j));
    }
  });
  writer.write("oracle_summary.csv", [&](std::ostream& out) {
    out << "l,beta,kicks,phi_d,effective_argument,energy_Erec\n";
    out << fmt::format("{},{:.10g},{},{:.10g},{:.12g},{:.12g}\n", l, ctx.beta, ctx.n, ctx.phi_d,
                       arg, energy);
  });
  std::vector<FractionalTime> fractions;
  if (c.fractions > 0) {
    fractions = fractional_times(c.fractions, c.constants, c.max_ratio);
    writer.write("fractional_times.csv", [&](std::ostream& out) {
      out << "l,m,ratio,time_us\n";
      for (const auto& f : fractions) {
        out << fmt::format("{},{},{:.10g},{:.10g}\n", f.l, f.m, static_cast<double>(f.l) / f.m,
                           f.time * 1e6);
      }
    });
  }
  if (c.json) {
    json doc{{"l", l},           {"beta", ctx.beta}, {"kicks", ctx.n},
             {"phi_d", ctx.phi_d}, {"effective_argument", arg}, {"energy_Erec", energy}};
    json pops = json::array();
    for (int j = -amps.max_order(); j <= amps.max_order(); ++j) {
      if (amps.population(j) > 1e-16) pops.push_back({j + offset, amps.population(j)});
    }
    doc["populations"] = pops;
    if (!fractions.empty()) {
      json table = json::array();
      for (const auto& f : fractions) table.push_back({{"l", f.l}, {"m", f.m}, {"time_us", f.time * 1e6}});
      doc["fractional_times"] = table;
    }
    writer.write_json("oracle.json", doc);
  }
  const auto artifacts = writer.finish(settings);
  log << fmt::format("oracle: l = {}, effective argument {:.6g}, energy {:.6g} E_rec; {} files in {}\n",
                     l, arg, energy, artifacts.files.size(), c.out_dir.string());
  return artifacts;
}

}  // namespace aokr::cli
