#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsn/model.hpp"
#include "wsn/network.hpp"

namespace wsn {

struct ClusterAssignment {
  NodeId ch_id = 0;
  std::vector<NodeId> member_ids;  // ascending
  std::optional<NodeId> next_cch;

  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

/// Joins every alive Active non-CH node to its nearest CH (lower CH id on a
/// distance tie). Clusters come back in ascending CH id order. `nodes` is
/// indexed by id; `chs` must be non-empty.
std::vector<ClusterAssignment> associate_members(std::span<const NodeId> chs,
                                                 std::span<const NodeState> nodes);

/// What happened inside a round, for inspection by callers.
struct RoundTrace {
  bool reelection = false;  // EESAA only: CHs came from an election
  std::vector<ClusterAssignment> clusters;
  std::vector<Mode> modes_before_ntp;
};

struct NtpTally {
  std::uint64_t packets_to_ch = 0;
  std::uint64_t packets_to_bs = 0;
  double energy_dissipated = 0.0;
};

/// Data transmission phase. Clusters run in order; within a cluster each
/// member sends one packet to its CH (ascending id), then the CH receives,
/// aggregates and forwards one packet to the BS. A node that dies on its own
/// debit does not deliver. Sleep nodes pay `cfg.sleep_energy`.
NtpTally run_ntp(std::span<const ClusterAssignment> clusters, std::span<NodeState> nodes,
                 const NetworkConfig& cfg);

/// Node among `candidates` with the most residual energy, lowest id on ties.
std::optional<NodeId> max_energy_node(std::span<const NodeId> candidates,
                                      std::span<const NodeState> nodes);

/// Number of rounds in one election epoch, ceil(1/p).
std::uint64_t epoch_length(double p);

}  // namespace wsn
