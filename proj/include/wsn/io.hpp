#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wsn/engine.hpp"

namespace wsn::io {

inline constexpr const char* kEngineVersion = "eesaa-sim 1.0.0";

inline constexpr const char* kCsvHeader =
    "round,alive,dead,ch_count,packets_to_bs,packets_to_ch,energy_dissipated,total_residual";

/// Parses a JSON config document. Absent keys keep their defaults; unknown
/// keys, wrong types and invariant violations throw ConfigError naming the
/// key. Malformed JSON throws ConfigError with key "config".
NetworkConfig parse_config_text(std::string_view text);
NetworkConfig parse_config(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const NetworkConfig& cfg);
nlohmann::ordered_json to_json(const PairingTable& table);
nlohmann::ordered_json to_json(const SimSummary& summary);  // scalar metrics only

/// Per-round CSV: header row, then one row per record. Doubles use 12
/// significant digits; lines end in LF.
std::string format_csv(const SimSummary& summary);
void emit_csv(const SimSummary& summary, const std::filesystem::path& path);

/// Everything needed to replay a run.
struct RunProvenance {
  NetworkConfig cfg;  // cfg.rng_seed is the run's seed
  Protocol protocol = Protocol::Eesaa;
  PairingTable pairing;
  std::string engine_version = kEngineVersion;
  std::optional<std::string> timestamp;
};

/// Reads SOURCE_DATE_EPOCH (seconds) if set; otherwise no timestamp, so
/// repeated runs produce identical provenance bytes.
std::optional<std::string> provenance_timestamp();

nlohmann::ordered_json to_json(const RunProvenance& prov, const SimSummary& summary);
std::string format_provenance(const RunProvenance& prov, const SimSummary& summary);
void emit_provenance(const RunProvenance& prov, const SimSummary& summary,
                     const std::filesystem::path& path);
RunProvenance parse_provenance(const std::filesystem::path& path);

/// One row per protocol with mean/min/max/stddev of FND, LND and packets.
std::string format_aggregate_csv(const std::vector<ProtocolAggregate>& aggregates);

/// Writes alive.svg, dead.svg, ch_count.svg and packets_to_bs.svg into
/// `out_dir`. Each protocol contributes one series: the per-round mean over
/// its runs, with finished runs held at their final values. Throws
/// std::invalid_argument on an empty group. Returns the written paths.
using SummaryGroups = std::vector<std::pair<std::string, std::vector<const SimSummary*>>>;
std::vector<std::filesystem::path> emit_plots(const SummaryGroups& groups,
                                              const std::filesystem::path& out_dir);

/// Writes `text` to `path`, throwing std::runtime_error naming the path on failure.
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace wsn::io
