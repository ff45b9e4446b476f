// Command-line front end: single runs, seed sweeps and the protocol comparison.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wsn/engine.hpp"
#include "wsn/io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> rounds;
  std::string out_dir;
};

/// Precedence: flags > config file > built-in defaults.
wsn::NetworkConfig load_config(const CommonOptions& opt) {
  wsn::NetworkConfig cfg;
  if (!opt.config_path.empty()) cfg = wsn::io::parse_config(opt.config_path);
  if (opt.seed) cfg.rng_seed = *opt.seed;
  if (opt.rounds) cfg.max_rounds = *opt.rounds;
  wsn::validate(cfg);
  return cfg;
}

wsn::Protocol protocol_or_throw(const std::string& name) {
  auto p = wsn::parse_protocol(name);
  if (!p) throw wsn::ConfigError("protocol", "unknown protocol '" + name + "'");
  return *p;
}

std::vector<wsn::Protocol> parse_protocol_list(const std::string& list) {
  std::vector<wsn::Protocol> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(protocol_or_throw(item));
  }
  if (out.empty()) throw wsn::ConfigError("protocols", "no protocol given");
  return out;
}

std::string run_stem(wsn::Protocol p, std::uint64_t seed) {
  return std::string(wsn::to_string(p)) + "_seed" + std::to_string(seed);
}

std::string round_or_dash(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : "-";
}

void write_run(const fs::path& dir, const wsn::RunOutput& out, const wsn::NetworkConfig& cfg,
               wsn::Protocol protocol) {
  fs::create_directories(dir);
  const std::string stem = run_stem(protocol, cfg.rng_seed);
  wsn::io::emit_csv(out.summary, dir / (stem + ".csv"));
  wsn::io::RunProvenance prov{cfg, protocol, out.pairing, wsn::io::kEngineVersion,
                              wsn::io::provenance_timestamp()};
  wsn::io::emit_provenance(prov, out.summary, dir / (stem + ".json"));
}

void print_summary(const char* protocol, std::uint64_t seed, const wsn::SimSummary& s) {
  std::printf("%s seed=%llu FND=%s LND=%s instability=%s packets_to_bs=%llu rounds=%llu\n",
              protocol, static_cast<unsigned long long>(seed),
              round_or_dash(s.first_death_round).c_str(), round_or_dash(s.last_death_round).c_str(),
              round_or_dash(s.instability).c_str(),
              static_cast<unsigned long long>(s.cumulative_packets_to_bs),
              static_cast<unsigned long long>(s.rounds_simulated));
}

std::vector<wsn::BatchJob> make_jobs(const wsn::NetworkConfig& cfg,
                                     const std::vector<wsn::Protocol>& protocols,
                                     std::uint64_t seeds) {
  std::vector<wsn::BatchJob> jobs;
  for (wsn::Protocol p : protocols) {
    for (std::uint64_t i = 0; i < seeds; ++i) jobs.push_back({cfg, p, cfg.rng_seed + i});
  }
  return jobs;
}

int report_failures(const wsn::BatchResult& result) {
  int failures = 0;
  for (const auto& jr : result.jobs) {
    if (jr.output) continue;
    ++failures;
    std::cerr << "job " << wsn::to_string(jr.job.protocol) << " seed " << jr.job.seed
              << " failed: " << jr.error << '\n';
  }
  return failures;
}

void print_table(const std::vector<wsn::ProtocolAggregate>& aggs) {
  const wsn::ProtocolAggregate* leach = nullptr;
  for (const auto& a : aggs) {
    if (a.protocol == wsn::Protocol::Leach) leach = &a;
  }
  std::printf("%-8s %5s %10s %10s %12s %14s %10s %10s\n", "protocol", "runs", "FND mean",
              "LND mean", "instability", "packets mean", "FND/LEACH", "LND/LEACH");
  for (const auto& a : aggs) {
    const double inst = a.last_death.mean - a.first_death.mean;
    std::string fnd_ratio = "-";
    std::string lnd_ratio = "-";
    if (leach && leach->first_death.mean > 0) {
      fnd_ratio = std::to_string(a.first_death.mean / leach->first_death.mean).substr(0, 5);
    }
    if (leach && leach->last_death.mean > 0) {
      lnd_ratio = std::to_string(a.last_death.mean / leach->last_death.mean).substr(0, 5);
    }
    std::printf("%-8s %5zu %10.1f %10.1f %12.1f %14.1f %10s %10s\n", wsn::to_string(a.protocol),
                a.runs, a.first_death.mean, a.last_death.mean, inst, a.packets_to_bs.mean,
                fnd_ratio.c_str(), lnd_ratio.c_str());
  }
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file (missing keys use defaults)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opt.seed, "RNG seed (first seed of a sweep)");
  cmd->add_option("--rounds", opt.rounds, "Maximum number of rounds");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round-based simulator for EESAA, LEACH, SEP and DEEC sensor networks"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonOptions run_opt;
  std::string run_protocol = "eesaa";
  auto* run_cmd = app.add_subcommand("run", "Simulate one protocol for one seed");
  add_common(run_cmd, run_opt);
  run_cmd->add_option("--protocol", run_protocol, "eesaa, leach, sep or deec");
  run_cmd->add_option("--out", run_opt.out_dir, "Directory for CSV and provenance JSON");

  CommonOptions batch_opt;
  std::string batch_protocols = "eesaa,leach,sep,deec";
  std::uint64_t batch_seeds = 10;
  auto* batch_cmd = app.add_subcommand("batch", "Seed sweep over several protocols");
  add_common(batch_cmd, batch_opt);
  batch_cmd->add_option("--protocols", batch_protocols, "Comma-separated protocol list");
  batch_cmd->add_option("--seeds", batch_seeds, "Number of consecutive seeds")
      ->check(CLI::PositiveNumber);
  batch_cmd->add_option("--out", batch_opt.out_dir, "Directory for per-run files and aggregate.csv");

  CommonOptions cmp_opt;
  std::uint64_t cmp_seeds = 10;
  auto* cmp_cmd =
      app.add_subcommand("compare", "Run all four protocols and print the comparison table");
  add_common(cmp_cmd, cmp_opt);
  cmp_cmd->add_option("--seeds", cmp_seeds, "Number of consecutive seeds")
      ->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--out", cmp_opt.out_dir, "Directory for plots and aggregate.csv");

  std::string replay_path;
  std::string replay_out = ".";
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a simulation from its provenance JSON");
  replay_cmd->add_option("--provenance", replay_path, "Provenance JSON written by run/batch")
      ->required()
      ->check(CLI::ExistingFile);
  replay_cmd->add_option("--out", replay_out, "Directory for the regenerated files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    return kExitConfig;
  }

  try {
    if (*run_cmd) {
      const auto cfg = load_config(run_opt);
      const auto protocol = protocol_or_throw(run_protocol);
      const auto out = wsn::run_simulation_full(cfg, protocol);
      write_run(run_opt.out_dir.empty() ? fs::path(".") : fs::path(run_opt.out_dir), out, cfg,
                protocol);
      print_summary(wsn::to_string(protocol), cfg.rng_seed, out.summary);
      return 0;
    }

    if (*batch_cmd) {
      const auto cfg = load_config(batch_opt);
      const auto protocols = parse_protocol_list(batch_protocols);
      const auto result = wsn::run_batch(make_jobs(cfg, protocols, batch_seeds));
      const fs::path dir = batch_opt.out_dir.empty() ? fs::path(".") : fs::path(batch_opt.out_dir);
      for (const auto& jr : result.jobs) {
        if (!jr.output) continue;
        auto job_cfg = jr.job.cfg;
        job_cfg.rng_seed = jr.job.seed;
        write_run(dir, *jr.output, job_cfg, jr.job.protocol);
        print_summary(wsn::to_string(jr.job.protocol), jr.job.seed, jr.output->summary);
      }
      wsn::io::write_file(dir / "aggregate.csv", wsn::io::format_aggregate_csv(result.aggregates));
      return report_failures(result) ? kExitRuntime : 0;
    }

    if (*cmp_cmd) {
      const auto cfg = load_config(cmp_opt);
      const std::vector<wsn::Protocol> protocols = {wsn::Protocol::Eesaa, wsn::Protocol::Leach,
                                                    wsn::Protocol::Sep, wsn::Protocol::Deec};
      const auto result = wsn::run_batch(make_jobs(cfg, protocols, cmp_seeds));
      print_table(result.aggregates);
      if (!cmp_opt.out_dir.empty()) {
        const fs::path dir(cmp_opt.out_dir);
        fs::create_directories(dir);
        wsn::io::SummaryGroups groups;
        for (wsn::Protocol p : protocols) {
          std::vector<const wsn::SimSummary*> runs;
          for (const auto& jr : result.jobs) {
            if (jr.job.protocol == p && jr.output) runs.push_back(&jr.output->summary);
          }
          if (!runs.empty()) groups.emplace_back(wsn::to_string(p), std::move(runs));
        }
        wsn::io::emit_plots(groups, dir);
        wsn::io::write_file(dir / "aggregate.csv",
                            wsn::io::format_aggregate_csv(result.aggregates));
      }
      return report_failures(result) ? kExitRuntime : 0;
    }

    if (*replay_cmd) {
      const auto prov = wsn::io::parse_provenance(replay_path);
      const auto out = wsn::run_simulation_full(prov.cfg, prov.protocol);
      if (prov.protocol == wsn::Protocol::Eesaa && !(out.pairing == prov.pairing)) {
        std::cerr << "replay: pairing table differs from the recorded one\n";
        return kExitRuntime;
      }
      fs::create_directories(replay_out);
      const std::string stem = run_stem(prov.protocol, prov.cfg.rng_seed);
      wsn::io::emit_csv(out.summary, fs::path(replay_out) / (stem + ".csv"));
      wsn::io::emit_provenance(prov, out.summary, fs::path(replay_out) / (stem + ".json"));
      print_summary(wsn::to_string(prov.protocol), prov.cfg.rng_seed, out.summary);
      return 0;
    }
  } catch (const wsn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
