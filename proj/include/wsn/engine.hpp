#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsn/eesaa.hpp"
#include "wsn/network.hpp"
#include "wsn/rng.hpp"

namespace wsn {

enum class Protocol { Eesaa, Leach, Sep, Deec };

const char* to_string(Protocol p) noexcept;
/// Accepts lower-case names: eesaa, leach, sep, deec.
std::optional<Protocol> parse_protocol(std::string_view name);

/// Derived metrics of one run. Death rounds are empty when never reached.
struct SimSummary {
  std::optional<std::uint64_t> first_death_round;
  std::optional<std::uint64_t> last_death_round;
  std::optional<std::uint64_t> instability;
  std::uint64_t cumulative_packets_to_bs = 0;
  std::uint64_t rounds_simulated = 0;
  std::vector<RoundRecord> per_round;

  friend bool operator==(const SimSummary&, const SimSummary&) = default;
};

SimSummary compute_summary(std::vector<RoundRecord> records);

/// Deploys nodes uniformly in the field, assigns app types and applies the
/// protocol's start-up (ACNM coupling for EESAA, tiers for SEP).
Network deploy(const NetworkConfig& cfg, Protocol protocol, Rng& rng);

/// A single run, advanced one round at a time.
class Simulation {
 public:
  /// Validates `cfg` (throws ConfigError) and deploys the network.
  Simulation(const NetworkConfig& cfg, Protocol protocol);

  /// Runs the next round, optionally recording its cluster layout.
  RoundResult step(RoundTrace* trace = nullptr);

  const Network& network() const noexcept { return net_; }
  Protocol protocol() const noexcept { return protocol_; }
  std::uint64_t next_round() const noexcept { return round_ + 1; }

 private:
  Protocol protocol_;
  Rng rng_;
  Network net_;
  std::uint64_t round_ = 0;
};

/// Runs until every node is dead or `cfg.max_rounds` rounds have run.
SimSummary run_simulation(const NetworkConfig& cfg, Protocol protocol);

/// Same, also returning the coupling table the run used.
struct RunOutput {
  SimSummary summary;
  PairingTable pairing;
};
RunOutput run_simulation_full(const NetworkConfig& cfg, Protocol protocol);

struct BatchJob {
  NetworkConfig cfg;
  Protocol protocol = Protocol::Eesaa;
  std::uint64_t seed = 1;  // overrides cfg.rng_seed
};

struct JobResult {
  BatchJob job;
  std::optional<RunOutput> output;
  std::string error;  // set when output is empty
};

struct MetricStats {
  std::size_t count = 0;  // runs where the metric was reached
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

MetricStats describe(const std::vector<double>& values);

struct ProtocolAggregate {
  Protocol protocol = Protocol::Eesaa;
  std::size_t runs = 0;
  MetricStats first_death;
  MetricStats last_death;
  MetricStats packets_to_bs;
};

struct BatchResult {
  std::vector<JobResult> jobs;              // input order
  std::vector<ProtocolAggregate> aggregates;  // first-appearance order of protocols
};

/// Runs jobs on up to `threads` workers (0 = hardware concurrency). A job
/// that throws is reported in its JobResult; the rest still run.
BatchResult run_batch(const std::vector<BatchJob>& jobs, unsigned threads = 0);

}  // namespace wsn
