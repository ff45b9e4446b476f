#include "wsn/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wsn/cluster.hpp"

namespace wsn::baseline {

namespace {

double rotating_threshold(double p, std::uint64_t round) {
  const std::uint64_t phase = round % epoch_length(p);
  return std::min(p / (1.0 - p * static_cast<double>(phase)), 1.0);
}

}  // namespace

double leach_threshold(double p, std::uint64_t round, bool eligible) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p_desired", "must lie strictly between 0 and 1");
  return eligible ? rotating_threshold(p, round) : 0.0;
}

double sep_normal_probability(double p, double m, double alpha) {
  return p / (1.0 + alpha * m);
}

double sep_advanced_probability(double p, double m, double alpha) {
  return std::min(p * (1.0 + alpha) / (1.0 + alpha * m), 1.0);
}

double deec_probability(double p, double residual, double average) {
  if (!(average > 0.0) || !(residual > 0.0)) return 0.0;
  return std::min(p * (residual / average), 1.0);
}

double deec_reference_energy(const Network& net, std::uint64_t round) {
  const double n = static_cast<double>(net.nodes.size());
  if (net.cfg.baselines.deec_estimator == DeecEstimator::LifetimeModel) {
    const double total = net.cfg.initial_energy * n;
    const double r = static_cast<double>(round);
    const double big_r = static_cast<double>(net.cfg.baselines.deec_rounds_estimate);
    return std::max(total / n * (1.0 - r / big_r), 0.0);
  }
  return net.total_residual() / n;
}

void assign_sep_tiers(Network& net) {
  const auto& b = net.cfg.baselines;
  const auto n_adv = static_cast<std::size_t>(
      std::llround(b.sep_advanced_fraction * static_cast<double>(net.nodes.size())));
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    net.advanced[i] = i < n_adv;
    net.nodes[i].residual_energy =
        net.cfg.initial_energy * (net.advanced[i] ? 1.0 + b.sep_energy_factor : 1.0);
  }
}

RoundResult run_round(Kind kind, Network& net, std::uint64_t round, Rng& rng,
                      RoundTrace* trace) {
  auto& nodes = net.nodes;
  if (net.alive_count() == 0) return {make_record(net, round), true};

  const double p = net.cfg.p_desired;
  const auto& b = net.cfg.baselines;
  const double deec_avg = kind == Kind::Deec ? deec_reference_energy(net, round) : 0.0;

  std::vector<NodeId> heads;
  std::vector<NodeId> alive;
  for (auto& n : nodes) {
    n.is_ch = false;
    n.cch_flag = false;
    n.cluster_of.reset();
    if (!n.alive()) continue;
    n.mode = Mode::Active;
    alive.push_back(n.id);

    double node_p = p;
    bool eligible = true;
    switch (kind) {
      case Kind::Leach:
        eligible = net.elected_epoch[n.id] != static_cast<std::int64_t>(round / epoch_length(p));
        break;
      case Kind::Sep:
        node_p = net.advanced[n.id] ? sep_advanced_probability(p, b.sep_advanced_fraction,
                                                               b.sep_energy_factor)
                                    : sep_normal_probability(p, b.sep_advanced_fraction,
                                                             b.sep_energy_factor);
        eligible = net.elected_epoch[n.id] !=
                   static_cast<std::int64_t>(round / epoch_length(node_p));
        break;
      case Kind::Deec:
        node_p = deec_probability(p, n.residual_energy, deec_avg);
        eligible = node_p > 0.0 && round >= net.eligible_from[n.id];
        break;
    }
    if (!eligible) continue;

    const double threshold = node_p >= 1.0 ? 1.0 : rotating_threshold(node_p, round);
    if (rng.uniform01() < threshold) {
      heads.push_back(n.id);
      net.elected_epoch[n.id] = static_cast<std::int64_t>(round / epoch_length(node_p));
      net.eligible_from[n.id] = round + epoch_length(node_p);
    }
  }
  if (heads.empty()) {
    if (auto fallback = max_energy_node(alive, nodes)) heads.push_back(*fallback);
  }

  for (NodeId h : heads) nodes[h].is_ch = true;
  const auto clusters = associate_members(heads, nodes);
  for (const auto& c : clusters) {
    nodes[c.ch_id].cluster_of = c.ch_id;
    for (NodeId m : c.member_ids) nodes[m].cluster_of = c.ch_id;
  }
  if (trace) {
    trace->reelection = true;
    trace->clusters = clusters;
    trace->modes_before_ntp.clear();
    for (const auto& n : nodes) trace->modes_before_ntp.push_back(n.mode);
  }
  const NtpTally tally = run_ntp(clusters, nodes, net.cfg);
  for (auto& n : nodes) n.is_ch = false;

  RoundRecord rec = make_record(net, round);
  rec.ch_count = static_cast<std::uint32_t>(heads.size());
  rec.packets_to_bs = tally.packets_to_bs;
  rec.packets_to_ch = tally.packets_to_ch;
  rec.energy_dissipated = tally.energy_dissipated;
  return {rec, false};
}

}  // namespace wsn::baseline
