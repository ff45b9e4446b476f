#include "wsn/model.hpp"

#include <cmath>

namespace wsn {

namespace {

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const RadioParams& radio) {
  require(positive_finite(radio.e_elec_tx), "radio.e_elec_tx", "must be positive and finite");
  require(positive_finite(radio.e_elec_rx), "radio.e_elec_rx", "must be positive and finite");
  require(positive_finite(radio.e_amp), "radio.e_amp", "must be positive and finite");
  require(positive_finite(radio.e_agg), "radio.e_agg", "must be positive and finite");
}

void validate(const BaselineParams& p) {
  require(std::isfinite(p.sep_advanced_fraction) && p.sep_advanced_fraction >= 0.0 &&
              p.sep_advanced_fraction <= 1.0,
          "baselines.sep_advanced_fraction", "must lie in [0, 1]");
  require(std::isfinite(p.sep_energy_factor) && p.sep_energy_factor >= 0.0,
          "baselines.sep_energy_factor", "must be >= 0");
  require(p.deec_rounds_estimate >= 1, "baselines.deec_rounds_estimate", "must be >= 1");
}

void validate(const NetworkConfig& cfg) {
  require(cfg.n_nodes >= 1, "n_nodes", "must be >= 1");
  require(positive_finite(cfg.field_width), "field_width", "must be positive and finite");
  require(positive_finite(cfg.field_height), "field_height", "must be positive and finite");
  require(std::isfinite(cfg.bs_position.x) && std::isfinite(cfg.bs_position.y),
          "bs_position", "coordinates must be finite");
  require(positive_finite(cfg.initial_energy), "initial_energy", "must be positive and finite");
  require(std::isfinite(cfg.p_desired) && cfg.p_desired > 0.0 && cfg.p_desired < 1.0,
          "p_desired", "must lie strictly between 0 and 1");
  require(cfg.packet_bits > 0, "packet_bits", "must be > 0");
  require(cfg.aggregated_bits > 0, "aggregated_bits", "must be > 0");
  require(positive_finite(cfg.pairing_range), "pairing_range", "must be positive and finite");
  require(cfg.app_type_count >= 1, "app_type_count", "must be >= 1");
  require(std::isfinite(cfg.sleep_energy) && cfg.sleep_energy >= 0.0, "sleep_energy",
          "must be >= 0");
  validate(cfg.radio);
  validate(cfg.baselines);
}

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Active: return "active";
    case Mode::Sleep: return "sleep";
    case Mode::Dead: return "dead";
  }
  return "?";
}

double distance(const Position& a, const Position& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double tx_energy(const RadioParams& radio, double bits, double d) noexcept {
  return radio.e_elec_tx * bits + radio.e_amp * bits * (d * d);
}

double rx_energy(const RadioParams& radio, double bits) noexcept {
  return radio.e_elec_rx * bits;
}

double agg_energy(const RadioParams& radio, double bits_per_source, double sources) noexcept {
  return radio.e_agg * bits_per_source * sources;
}

double expected_cluster_members(std::uint64_t n, std::uint64_t k) {
  if (k == 0) throw ConfigError("k", "cluster count must be >= 1");
  return static_cast<double>(n) / static_cast<double>(k) - 1.0;
}

double ch_round_energy(const RadioParams& radio, double members, double bits,
                       double agg_bits, double d_to_bs) noexcept {
  const double e_rec = rx_energy(radio, bits) * members;
  const double e_agr = agg_energy(radio, bits, members + 1.0);
  const double e_t = tx_energy(radio, agg_bits, d_to_bs);
  return e_rec + e_agr + e_t;
}

}  // namespace wsn
