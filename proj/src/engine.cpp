#include "wsn/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "wsn/baselines.hpp"

namespace wsn {

const char* to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::Eesaa: return "eesaa";
    case Protocol::Leach: return "leach";
    case Protocol::Sep: return "sep";
    case Protocol::Deec: return "deec";
  }
  return "?";
}

std::optional<Protocol> parse_protocol(std::string_view name) {
  for (Protocol p : {Protocol::Eesaa, Protocol::Leach, Protocol::Sep, Protocol::Deec}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

SimSummary compute_summary(std::vector<RoundRecord> records) {
  SimSummary s;
  for (const auto& r : records) {
    if (!s.first_death_round && r.dead > 0) s.first_death_round = r.round;
    if (!s.last_death_round && r.alive == 0) s.last_death_round = r.round;
    s.cumulative_packets_to_bs += r.packets_to_bs;
  }
  if (s.first_death_round && s.last_death_round) {
    s.instability = *s.last_death_round - *s.first_death_round;
  }
  s.rounds_simulated = records.empty() ? 0 : records.back().round;
  s.per_round = std::move(records);
  return s;
}

Network deploy(const NetworkConfig& cfg, Protocol protocol, Rng& rng) {
  std::vector<NodeState> nodes(cfg.n_nodes);
  for (auto& n : nodes) {
    n.position.x = rng.uniform(0.0, cfg.field_width);
    n.position.y = rng.uniform(0.0, cfg.field_height);
    n.residual_energy = cfg.initial_energy;
    n.mode = Mode::Active;
  }
  if (cfg.app_type_count > 1) {
    for (auto& n : nodes) n.app_type = static_cast<std::uint32_t>(rng.index(cfg.app_type_count));
  }

  Network net = make_network(cfg, std::move(nodes));
  switch (protocol) {
    case Protocol::Eesaa:
      net.pairing = compute_pairs(net.nodes, cfg.pairing_range);
      initial_modes(net.nodes, net.pairing, cfg.bs_position);
      break;
    case Protocol::Sep:
      baseline::assign_sep_tiers(net);
      break;
    case Protocol::Leach:
    case Protocol::Deec:
      break;
  }
  return net;
}

namespace {

const NetworkConfig& validated(const NetworkConfig& cfg) {
  validate(cfg);
  return cfg;
}

}  // namespace

Simulation::Simulation(const NetworkConfig& cfg, Protocol protocol)
    : protocol_(protocol),
      rng_(validated(cfg).rng_seed),
      net_(deploy(cfg, protocol, rng_)) {}

RoundResult Simulation::step(RoundTrace* trace) {
  const std::uint64_t round = round_ + 1;
  RoundResult result;
  switch (protocol_) {
    case Protocol::Eesaa: result = eesaa::run_round(net_, round, rng_, trace); break;
    case Protocol::Leach: result = baseline::run_round(baseline::Kind::Leach, net_, round, rng_, trace); break;
    case Protocol::Sep: result = baseline::run_round(baseline::Kind::Sep, net_, round, rng_, trace); break;
    case Protocol::Deec: result = baseline::run_round(baseline::Kind::Deec, net_, round, rng_, trace); break;
  }
  if (!result.terminal) round_ = round;
  return result;
}

RunOutput run_simulation_full(const NetworkConfig& cfg, Protocol protocol) {
  Simulation sim(cfg, protocol);
  std::vector<RoundRecord> records;
  for (std::uint64_t r = 1; r <= cfg.max_rounds; ++r) {
    const RoundResult res = sim.step();
    if (res.terminal) break;
    records.push_back(res.record);
    if (res.record.alive == 0) break;
  }
  return {compute_summary(std::move(records)), sim.network().pairing};
}

SimSummary run_simulation(const NetworkConfig& cfg, Protocol protocol) {
  return run_simulation_full(cfg, protocol).summary;
}

MetricStats describe(const std::vector<double>& values) {
  MetricStats s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  s.min = values.front();
  s.max = values.front();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

BatchResult run_batch(const std::vector<BatchJob>& jobs, unsigned threads) {
  BatchResult out;
  out.jobs.resize(jobs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      JobResult& slot = out.jobs[i];
      slot.job = jobs[i];
      try {
        NetworkConfig cfg = jobs[i].cfg;
        cfg.rng_seed = jobs[i].seed;
        slot.output = run_simulation_full(cfg, jobs[i].protocol);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& jr : out.jobs) {
    auto it = std::find_if(out.aggregates.begin(), out.aggregates.end(),
                           [&](const ProtocolAggregate& a) { return a.protocol == jr.job.protocol; });
    if (it == out.aggregates.end()) {
      out.aggregates.push_back({jr.job.protocol, 0, {}, {}, {}});
    }
  }
  for (auto& agg : out.aggregates) {
    std::vector<double> fnd, lnd, pkts;
    for (const auto& jr : out.jobs) {
      if (jr.job.protocol != agg.protocol || !jr.output) continue;
      ++agg.runs;
      const SimSummary& s = jr.output->summary;
      if (s.first_death_round) fnd.push_back(static_cast<double>(*s.first_death_round));
      if (s.last_death_round) lnd.push_back(static_cast<double>(*s.last_death_round));
      pkts.push_back(static_cast<double>(s.cumulative_packets_to_bs));
    }
    agg.first_death = describe(fnd);
    agg.last_death = describe(lnd);
    agg.packets_to_bs = describe(pkts);
  }
  return out;
}

}  // namespace wsn
