#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace wsn {

using NodeId = std::uint32_t;

/// Thrown when a parameter or configuration value violates its invariant.
/// `key()` names the offending field in lower_snake_case.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct Position {
  double x = 0.0;  // meters
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

/// First-order radio constants. All values are per bit (E_amp per bit per m²).
struct RadioParams {
  double e_elec_tx = 50e-9;
  double e_elec_rx = 50e-9;
  double e_amp = 100e-12;
  double e_agg = 50e-12;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

enum class DeecEstimator {
  Exact,         // mean residual energy read from simulator state
  LifetimeModel  // E_total/N * (1 - r/R), R = deec_rounds_estimate
};

struct BaselineParams {
  double sep_advanced_fraction = 0.0;  // m
  double sep_energy_factor = 1.0;      // alpha
  std::uint64_t deec_rounds_estimate = 5000;
  DeecEstimator deec_estimator = DeecEstimator::Exact;

  friend bool operator==(const BaselineParams&, const BaselineParams&) = default;
};

/// Simulation inputs. Defaults reproduce the 100 m x 100 m, 100-node setup.
struct NetworkConfig {
  std::uint32_t n_nodes = 100;
  double field_width = 100.0;
  double field_height = 100.0;
  Position bs_position{50.0, 175.0};
  double initial_energy = 0.5;  // joules
  double p_desired = 0.1;
  std::uint64_t packet_bits = 4000;
  std::uint64_t aggregated_bits = 4000;
  double pairing_range = 15.0;
  std::uint32_t app_type_count = 1;
  std::uint64_t max_rounds = 10000;
  std::uint64_t rng_seed = 1;
  RadioParams radio{};
  double sleep_energy = 0.0;  // joules debited per round to each Sleep node
  BaselineParams baselines{};

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// Throws ConfigError naming the first violated field.
void validate(const RadioParams& radio);
void validate(const BaselineParams& params);
void validate(const NetworkConfig& cfg);

enum class Mode : std::uint8_t { Active, Sleep, Dead };

const char* to_string(Mode mode) noexcept;

struct NodeState {
  NodeId id = 0;
  Position position{};
  std::uint32_t app_type = 0;
  double residual_energy = 0.0;
  Mode mode = Mode::Active;
  std::optional<NodeId> partner;
  bool is_ch = false;
  bool cch_flag = false;  // acts as CH next round
  std::optional<NodeId> cluster_of;

  bool alive() const noexcept { return mode != Mode::Dead; }
};

double distance(const Position& a, const Position& b) noexcept;

// First-order radio model, free-space (d²) loss only.
double tx_energy(const RadioParams& radio, double bits, double d) noexcept;
double rx_energy(const RadioParams& radio, double bits) noexcept;
double agg_energy(const RadioParams& radio, double bits_per_source,
                  double sources) noexcept;

/// Average non-CH members per cluster, N/K - 1. Throws ConfigError for k = 0.
double expected_cluster_members(std::uint64_t n, std::uint64_t k);

/// Energy a cluster head spends in one round: receive from `members`,
/// aggregate members + its own stream, send `agg_bits` to the BS.
double ch_round_energy(const RadioParams& radio, double members, double bits,
                       double agg_bits, double d_to_bs) noexcept;

}  // namespace wsn
