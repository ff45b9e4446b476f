#include "wsn/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wsn {

std::vector<ClusterAssignment> associate_members(std::span<const NodeId> chs,
                                                 std::span<const NodeState> nodes) {
  std::vector<NodeId> heads(chs.begin(), chs.end());
  std::sort(heads.begin(), heads.end());
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());

  std::vector<ClusterAssignment> clusters;
  clusters.reserve(heads.size());
  for (NodeId h : heads) clusters.push_back({h, {}, std::nullopt});
  if (heads.empty()) return clusters;

  for (const auto& node : nodes) {
    if (node.mode != Mode::Active) continue;
    if (std::binary_search(heads.begin(), heads.end(), node.id)) continue;
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < heads.size(); ++c) {
      const double d = distance(node.position, nodes[heads[c]].position);
      // Strict '<' keeps the lower CH id on ties since heads ascend.
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    clusters[best].member_ids.push_back(node.id);
  }
  return clusters;
}

NtpTally run_ntp(std::span<const ClusterAssignment> clusters, std::span<NodeState> nodes,
                 const NetworkConfig& cfg) {
  NtpTally tally;
  const auto bits = static_cast<double>(cfg.packet_bits);
  const auto agg_bits = static_cast<double>(cfg.aggregated_bits);

  for (const auto& cluster : clusters) {
    NodeState& ch = nodes[cluster.ch_id];
    if (!ch.alive()) continue;
    std::uint64_t delivered = 0;
    for (NodeId m : cluster.member_ids) {
      NodeState& member = nodes[m];
      if (!member.alive()) continue;
      const double e = tx_energy(cfg.radio, bits, distance(member.position, ch.position));
      tally.energy_dissipated += debit(member, e);
      if (member.alive()) ++delivered;
    }
    tally.packets_to_ch += delivered;
    const double e = ch_round_energy(cfg.radio, static_cast<double>(delivered), bits, agg_bits,
                                     distance(ch.position, cfg.bs_position));
    tally.energy_dissipated += debit(ch, e);
    if (ch.alive()) ++tally.packets_to_bs;
  }

  if (cfg.sleep_energy > 0.0) {
    for (auto& node : nodes) {
      if (node.mode == Mode::Sleep) tally.energy_dissipated += debit(node, cfg.sleep_energy);
    }
  }
  return tally;
}

std::optional<NodeId> max_energy_node(std::span<const NodeId> candidates,
                                      std::span<const NodeState> nodes) {
  std::optional<NodeId> best;
  for (NodeId id : candidates) {
    const NodeState& n = nodes[id];
    if (!n.alive()) continue;
    if (!best) {
      best = id;
      continue;
    }
    const NodeState& b = nodes[*best];
    if (n.residual_energy > b.residual_energy ||
        (n.residual_energy == b.residual_energy && id < *best)) {
      best = id;
    }
  }
  return best;
}

std::uint64_t epoch_length(double p) {
  const double inv = std::min(1.0 / p, 1e15);
  auto k = static_cast<std::uint64_t>(std::ceil(inv));
  // 1/p can land a hair above an integer (e.g. p = 1/3 rounded); treat as exact.
  if (k > 1 && inv - static_cast<double>(k - 1) < 1e-9 * inv) --k;
  return std::max<std::uint64_t>(k, 1);
}

}  // namespace wsn
