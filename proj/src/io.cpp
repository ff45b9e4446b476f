#include "wsn/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wsn::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---- config ingestion -----------------------------------------------------

class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ConfigError(name(""), "expected a JSON object");
  }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(name(key), "expected a number");
      out = v->get<double>();
    }
  }

  template <typename Int>
  void count(const char* key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        throw ConfigError(name(key), "expected a non-negative integer");
      }
      const auto raw = v->get<std::uint64_t>();
      if (raw > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
        throw ConfigError(name(key), "value out of range");
      }
      out = static_cast<Int>(raw);
    }
  }

  const json* object(const char* key) {
    const json* v = find(key);
    if (v && !v->is_object()) throw ConfigError(name(key), "expected a JSON object");
    return v;
  }

  const json* string(const char* key) {
    const json* v = find(key);
    if (v && !v->is_string()) throw ConfigError(name(key), "expected a string");
    return v;
  }

  /// Call after reading every known key.
  void reject_unknown() const {
    for (const auto& [k, _] : obj_.items()) {
      if (!seen_.contains(k)) throw ConfigError(name(k), "unknown key");
    }
  }

  std::string name(std::string_view key) const {
    if (prefix_.empty()) return key.empty() ? "config" : std::string(key);
    if (key.empty()) return prefix_;
    return prefix_ + "." + std::string(key);
  }

 private:
  const json* find(const char* key) {
    seen_.emplace(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& obj_;
  std::string prefix_;
  std::set<std::string, std::less<>> seen_;
};

void read_config(const json& doc, NetworkConfig& cfg) {
  Reader r(doc, "");
  r.count("n_nodes", cfg.n_nodes);
  r.number("field_width", cfg.field_width);
  r.number("field_height", cfg.field_height);
  if (const json* bs = r.object("bs_position")) {
    Reader b(*bs, "bs_position");
    b.number("x", cfg.bs_position.x);
    b.number("y", cfg.bs_position.y);
    b.reject_unknown();
  }
  r.number("initial_energy", cfg.initial_energy);
  r.number("p_desired", cfg.p_desired);
  r.count("packet_bits", cfg.packet_bits);
  r.count("aggregated_bits", cfg.aggregated_bits);
  r.number("pairing_range", cfg.pairing_range);
  r.count("app_type_count", cfg.app_type_count);
  r.count("max_rounds", cfg.max_rounds);
  r.count("rng_seed", cfg.rng_seed);
  if (const json* radio = r.object("radio")) {
    Reader rr(*radio, "radio");
    rr.number("e_elec_tx", cfg.radio.e_elec_tx);
    rr.number("e_elec_rx", cfg.radio.e_elec_rx);
    rr.number("e_amp", cfg.radio.e_amp);
    rr.number("e_agg", cfg.radio.e_agg);
    rr.reject_unknown();
  }
  r.number("sleep_energy", cfg.sleep_energy);
  if (const json* bl = r.object("baselines")) {
    Reader b(*bl, "baselines");
    b.number("sep_advanced_fraction", cfg.baselines.sep_advanced_fraction);
    b.number("sep_energy_factor", cfg.baselines.sep_energy_factor);
    b.count("deec_rounds_estimate", cfg.baselines.deec_rounds_estimate);
    if (const json* est = b.string("deec_estimator")) {
      const auto s = est->get<std::string>();
      if (s == "exact") {
        cfg.baselines.deec_estimator = DeecEstimator::Exact;
      } else if (s == "lifetime_model") {
        cfg.baselines.deec_estimator = DeecEstimator::LifetimeModel;
      } else {
        throw ConfigError("baselines.deec_estimator", "expected \"exact\" or \"lifetime_model\"");
      }
    }
    b.reject_unknown();
  }
  r.reject_unknown();
}

const char* to_string(DeecEstimator e) {
  return e == DeecEstimator::Exact ? "exact" : "lifetime_model";
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ordered_json optional_round(const std::optional<std::uint64_t>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

NetworkConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  NetworkConfig cfg;
  read_config(doc, cfg);
  validate(cfg);
  return cfg;
}

NetworkConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

ordered_json to_json(const NetworkConfig& cfg) {
  ordered_json j;
  j["n_nodes"] = cfg.n_nodes;
  j["field_width"] = cfg.field_width;
  j["field_height"] = cfg.field_height;
  j["bs_position"] = {{"x", cfg.bs_position.x}, {"y", cfg.bs_position.y}};
  j["initial_energy"] = cfg.initial_energy;
  j["p_desired"] = cfg.p_desired;
  j["packet_bits"] = cfg.packet_bits;
  j["aggregated_bits"] = cfg.aggregated_bits;
  j["pairing_range"] = cfg.pairing_range;
  j["app_type_count"] = cfg.app_type_count;
  j["max_rounds"] = cfg.max_rounds;
  j["rng_seed"] = cfg.rng_seed;
  j["radio"] = {{"e_elec_tx", cfg.radio.e_elec_tx},
                {"e_elec_rx", cfg.radio.e_elec_rx},
                {"e_amp", cfg.radio.e_amp},
                {"e_agg", cfg.radio.e_agg}};
  j["sleep_energy"] = cfg.sleep_energy;
  j["baselines"] = {{"sep_advanced_fraction", cfg.baselines.sep_advanced_fraction},
                    {"sep_energy_factor", cfg.baselines.sep_energy_factor},
                    {"deec_rounds_estimate", cfg.baselines.deec_rounds_estimate},
                    {"deec_estimator", to_string(cfg.baselines.deec_estimator)}};
  return j;
}

ordered_json to_json(const PairingTable& table) {
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : table.pairs) pairs.push_back({a, b});
  return {{"pairs", pairs}, {"isolated", table.isolated}};
}

ordered_json to_json(const SimSummary& s) {
  return {{"first_death_round", optional_round(s.first_death_round)},
          {"last_death_round", optional_round(s.last_death_round)},
          {"instability", optional_round(s.instability)},
          {"cumulative_packets_to_bs", s.cumulative_packets_to_bs},
          {"rounds_simulated", s.rounds_simulated}};
}

std::string format_csv(const SimSummary& summary) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : summary.per_round) {
    out += std::to_string(r.round) + ',' + std::to_string(r.alive) + ',' + std::to_string(r.dead) +
           ',' + std::to_string(r.ch_count) + ',' + std::to_string(r.packets_to_bs) + ',' +
           std::to_string(r.packets_to_ch) + ',' + fmt_double(r.energy_dissipated) + ',' +
           fmt_double(r.total_residual) + '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void emit_csv(const SimSummary& summary, const std::filesystem::path& path) {
  write_file(path, format_csv(summary));
}

std::optional<std::string> provenance_timestamp() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const long long secs = std::strtoll(env, &end, 10);
  if (*end != '\0' || secs < 0) return std::nullopt;
  const std::time_t t = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json to_json(const RunProvenance& prov, const SimSummary& summary) {
  ordered_json j;
  j["engine_version"] = prov.engine_version;
  j["rng_algorithm"] = Rng::kAlgorithm;
  j["protocol"] = wsn::to_string(prov.protocol);
  j["seed"] = prov.cfg.rng_seed;
  j["timestamp"] = prov.timestamp ? ordered_json(*prov.timestamp) : ordered_json(nullptr);
  j["config"] = to_json(prov.cfg);
  if (prov.protocol == Protocol::Eesaa) j["pairing"] = to_json(prov.pairing);
  j["summary"] = to_json(summary);
  return j;
}

std::string format_provenance(const RunProvenance& prov, const SimSummary& summary) {
  return to_json(prov, summary).dump(2) + '\n';
}

void emit_provenance(const RunProvenance& prov, const SimSummary& summary,
                     const std::filesystem::path& path) {
  write_file(path, format_provenance(prov, summary));
}

RunProvenance parse_provenance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("provenance", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("provenance", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("config") || !doc.contains("protocol")) {
    throw ConfigError("provenance", "missing config or protocol");
  }
  RunProvenance prov;
  read_config(doc.at("config"), prov.cfg);
  validate(prov.cfg);
  const auto proto = parse_protocol(doc.at("protocol").get<std::string>());
  if (!proto) throw ConfigError("protocol", "unknown protocol");
  prov.protocol = *proto;
  if (doc.contains("engine_version")) prov.engine_version = doc["engine_version"].get<std::string>();
  if (doc.contains("timestamp") && doc["timestamp"].is_string()) {
    prov.timestamp = doc["timestamp"].get<std::string>();
  }
  if (doc.contains("pairing")) {
    for (const auto& p : doc["pairing"]["pairs"]) {
      prov.pairing.pairs.emplace_back(p.at(0).get<NodeId>(), p.at(1).get<NodeId>());
    }
    prov.pairing.isolated = doc["pairing"]["isolated"].get<std::vector<NodeId>>();
  }
  return prov;
}

std::string format_aggregate_csv(const std::vector<ProtocolAggregate>& aggregates) {
  std::string out =
      "protocol,runs,fnd_count,fnd_mean,fnd_min,fnd_max,fnd_stddev,"
      "lnd_count,lnd_mean,lnd_min,lnd_max,lnd_stddev,"
      "packets_mean,packets_min,packets_max,packets_stddev\n";
  auto stats = [](const MetricStats& s, bool with_count) {
    std::string row;
    if (with_count) row += std::to_string(s.count) + ',';
    row += fmt_double(s.mean) + ',' + fmt_double(s.min) + ',' + fmt_double(s.max) + ',' +
           fmt_double(s.stddev);
    return row;
  };
  for (const auto& a : aggregates) {
    out += std::string(wsn::to_string(a.protocol)) + ',' + std::to_string(a.runs) + ',' +
           stats(a.first_death, true) + ',' + stats(a.last_death, true) + ',' +
           stats(a.packets_to_bs, false) + '\n';
  }
  return out;
}

}  // namespace wsn::io
