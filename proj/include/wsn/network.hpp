#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wsn/model.hpp"
#include "wsn/pairing.hpp"

namespace wsn {

struct RoundRecord {
  std::uint64_t round = 0;
  std::uint32_t alive = 0;
  std::uint32_t dead = 0;
  std::uint32_t ch_count = 0;
  std::uint64_t packets_to_bs = 0;
  std::uint64_t packets_to_ch = 0;
  double energy_dissipated = 0.0;
  double total_residual = 0.0;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

/// A protocol round either runs or reports that nobody is left to run it.
struct RoundResult {
  RoundRecord record;
  bool terminal = false;
};

/// Whole-network simulator state. `nodes[i].id == i` always holds; the
/// protocol functions look nodes up by id.
struct Network {
  NetworkConfig cfg;
  std::vector<NodeState> nodes;
  PairingTable pairing;

  // Election bookkeeping shared by the threshold-based protocols.
  std::vector<std::int64_t> elected_epoch;     // -1 = never elected
  std::vector<std::uint64_t> eligible_from;    // DEEC cool-down, first eligible round
  std::vector<std::uint8_t> advanced;          // SEP two-tier flag

  std::uint32_t alive_count() const;
  double total_residual() const;
};

/// Builds a network from explicit node states (ids are reassigned to
/// indices). Bookkeeping vectors are sized and reset.
Network make_network(const NetworkConfig& cfg, std::vector<NodeState> nodes);

/// Removes `amount` joules from `node`. A debit that meets or exceeds the
/// residual leaves the node Dead with 0 J and cleared CH flags. Returns the
/// energy actually removed.
double debit(NodeState& node, double amount);

RoundRecord make_record(const Network& net, std::uint64_t round);

}  // namespace wsn
