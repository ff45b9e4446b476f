#pragma once

#include <span>
#include <utility>
#include <vector>

#include "wsn/model.hpp"

namespace wsn {

/// Result of BS-side coupling. Pairs are stored as (lower id, higher id) and
/// listed in the order they were matched; isolated ids ascend.
struct PairingTable {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<NodeId> isolated;

  friend bool operator==(const PairingTable&, const PairingTable&) = default;
};

/// Greedy global-minimum-distance coupling. Candidate edges join nodes of the
/// same app_type no more than `pairing_range` apart; they are taken in order
/// of (distance, lower id, higher id) whenever both ends are still free.
/// The result depends only on node ids and attributes, not input order.
PairingTable compute_pairs(std::span<const NodeState> nodes, double pairing_range);

/// Writes `partner` links from `table` and sets the starting modes: the pair
/// member strictly nearer the BS is Active (lower id on ties), the other
/// Sleep; isolated nodes are Active. Nodes are addressed by id, so `nodes`
/// must be indexed by id.
void initial_modes(std::span<NodeState> nodes, const PairingTable& table, const Position& bs);

/// Sum of intra-pair distances.
double total_pair_distance(std::span<const NodeState> nodes, const PairingTable& table);

}  // namespace wsn
