#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wsn/cluster.hpp"
#include "wsn/network.hpp"
#include "wsn/rng.hpp"

namespace wsn::eesaa {

/// Election threshold for an eligible Active node:
/// p / (1 - p * (round mod ceil(1/p))), capped at 1.
/// Throws ConfigError("p_desired") unless 0 < p < 1.
double election_threshold(double p_desired, std::uint64_t round);

/// Parent cluster-head election. Alive Active nodes not flagged in
/// `excluded` (indexed by id; empty = nobody excluded) draw u in [0, 1) in
/// ascending id order and are elected when u < threshold. If nobody is
/// elected, the alive Active node with the most residual energy (lowest id on
/// ties) becomes the only PCH.
std::vector<NodeId> elect_pchs(std::span<const NodeState> nodes, double p_desired,
                               std::uint64_t round, Rng& rng,
                               std::span<const std::uint8_t> excluded = {});

/// Chooses the child cluster head for the next round among the CH and its
/// members: most residual energy, then nearest to the CH, then lowest id.
/// Sets the winner's cch_flag and `cluster.next_cch`. A CH without members
/// is its own successor.
std::optional<NodeId> select_cch(ClusterAssignment& cluster, std::span<NodeState> nodes);

/// End-of-round mode switch for paired nodes:
///
///   coupled, partner dead         -> Active
///   coupled, Active, own CCH      -> Active
///   coupled, Active, no CCH       -> Sleep
///   coupled, Sleep, partner CCH   -> Sleep
///   coupled, Sleep, partner no CCH-> Active
///   uncoupled                     -> Active
///
/// All decisions read the pre-switch state. Dead nodes are left alone.
void node_mode_setup(std::span<NodeState> nodes);

/// One full round: CH determination (CCH handover, or election when no
/// live CCH exists), association, CCH selection, data transmission, mode
/// switch. Returns a terminal result without touching state when every
/// node is dead.
RoundResult run_round(Network& net, std::uint64_t round, Rng& rng,
                      RoundTrace* trace = nullptr);

}  // namespace wsn::eesaa
