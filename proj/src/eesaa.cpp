#include "wsn/eesaa.hpp"

#include <algorithm>
#include <tuple>

namespace wsn::eesaa {

double election_threshold(double p_desired, std::uint64_t round) {
  if (!(p_desired > 0.0 && p_desired < 1.0)) {
    throw ConfigError("p_desired", "must lie strictly between 0 and 1");
  }
  const std::uint64_t phase = round % epoch_length(p_desired);
  const double t = p_desired / (1.0 - p_desired * static_cast<double>(phase));
  return std::min(t, 1.0);
}

std::vector<NodeId> elect_pchs(std::span<const NodeState> nodes, double p_desired,
                               std::uint64_t round, Rng& rng,
                               std::span<const std::uint8_t> excluded) {
  const double threshold = election_threshold(p_desired, round);
  std::vector<NodeId> elected;
  std::vector<NodeId> active;
  for (const auto& n : nodes) {
    if (n.mode != Mode::Active) continue;
    active.push_back(n.id);
    if (!excluded.empty() && excluded[n.id]) continue;
    if (rng.uniform01() < threshold) elected.push_back(n.id);
  }
  if (elected.empty()) {
    if (auto fallback = max_energy_node(active, nodes)) elected.push_back(*fallback);
  }
  return elected;
}

std::optional<NodeId> select_cch(ClusterAssignment& cluster, std::span<NodeState> nodes) {
  cluster.next_cch.reset();
  const Position ch_pos = nodes[cluster.ch_id].position;
  std::optional<NodeId> best;
  double best_e = 0.0;
  double best_d = 0.0;
  auto consider = [&](NodeId id) {
    const NodeState& n = nodes[id];
    if (!n.alive()) return;
    const double e = n.residual_energy;
    const double d = distance(n.position, ch_pos);
    // Larger energy wins, then smaller distance, then smaller id.
    if (!best || std::tie(e, best_d, *best) > std::tie(best_e, d, id)) {
      best = id;
      best_e = e;
      best_d = d;
    }
  };
  consider(cluster.ch_id);
  for (NodeId m : cluster.member_ids) consider(m);

  if (best) {
    nodes[*best].cch_flag = true;
    cluster.next_cch = best;
  }
  return best;
}

void node_mode_setup(std::span<NodeState> nodes) {
  std::vector<Mode> next(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeState& n = nodes[i];
    next[i] = n.mode;
    if (!n.alive()) continue;
    if (!n.partner) {
      next[i] = Mode::Active;
      continue;
    }
    const NodeState& partner = nodes[*n.partner];
    if (!partner.alive()) {
      next[i] = Mode::Active;
    } else if (n.mode == Mode::Active) {
      next[i] = n.cch_flag ? Mode::Active : Mode::Sleep;
    } else {
      next[i] = partner.cch_flag ? Mode::Sleep : Mode::Active;
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].mode = next[i];
}

RoundResult run_round(Network& net, std::uint64_t round, Rng& rng, RoundTrace* trace) {
  auto& nodes = net.nodes;
  if (net.alive_count() == 0) return {make_record(net, round), true};

  std::vector<NodeId> heads;
  for (auto& n : nodes) {
    if (n.alive() && n.cch_flag) heads.push_back(n.id);
    n.cch_flag = false;
    n.is_ch = false;
    n.cluster_of.reset();
  }

  const bool reelection = heads.empty();
  if (reelection) {
    const auto epoch = static_cast<std::int64_t>(round / epoch_length(net.cfg.p_desired));
    std::vector<std::uint8_t> excluded(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) excluded[i] = net.elected_epoch[i] == epoch;
    heads = elect_pchs(nodes, net.cfg.p_desired, round, rng, excluded);
    for (NodeId h : heads) net.elected_epoch[h] = epoch;
  }

  for (NodeId h : heads) nodes[h].is_ch = true;
  auto clusters = associate_members(heads, nodes);
  for (const auto& c : clusters) {
    nodes[c.ch_id].cluster_of = c.ch_id;
    for (NodeId m : c.member_ids) nodes[m].cluster_of = c.ch_id;
  }
  // Members report residual energy with their join request, before sending data.
  for (auto& c : clusters) select_cch(c, nodes);

  if (trace) {
    trace->reelection = reelection;
    trace->clusters = clusters;
    trace->modes_before_ntp.clear();
    for (const auto& n : nodes) trace->modes_before_ntp.push_back(n.mode);
  }

  const NtpTally tally = run_ntp(clusters, nodes, net.cfg);
  node_mode_setup(nodes);
  for (auto& n : nodes) n.is_ch = false;

  RoundRecord rec = make_record(net, round);
  rec.ch_count = static_cast<std::uint32_t>(heads.size());
  rec.packets_to_bs = tally.packets_to_bs;
  rec.packets_to_ch = tally.packets_to_ch;
  rec.energy_dissipated = tally.energy_dissipated;
  return {rec, false};
}

}  // namespace wsn::eesaa
