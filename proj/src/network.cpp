#include "wsn/network.hpp"

namespace wsn {

std::uint32_t Network::alive_count() const {
  std::uint32_t n = 0;
  for (const auto& node : nodes) n += node.alive() ? 1 : 0;
  return n;
}

double Network::total_residual() const {
  double sum = 0.0;
  for (const auto& node : nodes) sum += node.residual_energy;
  return sum;
}

Network make_network(const NetworkConfig& cfg, std::vector<NodeState> nodes) {
  Network net;
  net.cfg = cfg;
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].id = static_cast<NodeId>(i);
  net.nodes = std::move(nodes);
  net.elected_epoch.assign(net.nodes.size(), -1);
  net.eligible_from.assign(net.nodes.size(), 0);
  net.advanced.assign(net.nodes.size(), 0);
  return net;
}

double debit(NodeState& node, double amount) {
  if (!node.alive() || amount <= 0.0) return 0.0;
  const double before = node.residual_energy;
  if (amount >= before) {
    node.residual_energy = 0.0;
    node.mode = Mode::Dead;
    node.is_ch = false;
    node.cch_flag = false;
    return before;
  }
  node.residual_energy = before - amount;
  return before - node.residual_energy;
}

RoundRecord make_record(const Network& net, std::uint64_t round) {
  RoundRecord rec;
  rec.round = round;
  rec.alive = net.alive_count();
  rec.dead = static_cast<std::uint32_t>(net.nodes.size()) - rec.alive;
  rec.total_residual = net.total_residual();
  return rec;
}

}  // namespace wsn
