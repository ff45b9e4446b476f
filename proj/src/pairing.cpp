#include "wsn/pairing.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

namespace wsn {

namespace {

struct Candidate {
  double dist_sq;
  NodeId a;  // a < b
  NodeId b;
};

}  // namespace

PairingTable compute_pairs(std::span<const NodeState> nodes, double pairing_range) {
  std::vector<const NodeState*> sorted;
  sorted.reserve(nodes.size());
  for (const auto& n : nodes) sorted.push_back(&n);
  std::sort(sorted.begin(), sorted.end(),
            [](const NodeState* l, const NodeState* r) { return l->id < r->id; });

  const double range_sq = pairing_range * pairing_range;
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const NodeState& u = *sorted[i];
      const NodeState& v = *sorted[j];
      if (u.app_type != v.app_type) continue;
      const double dx = u.position.x - v.position.x;
      const double dy = u.position.y - v.position.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 > range_sq) continue;
      candidates.push_back({d2, u.id, v.id});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) {
    return std::tie(l.dist_sq, l.a, l.b) < std::tie(r.dist_sq, r.a, r.b);
  });

  PairingTable table;
  std::unordered_set<NodeId> matched;
  for (const auto& c : candidates) {
    if (matched.contains(c.a) || matched.contains(c.b)) continue;
    matched.insert(c.a);
    matched.insert(c.b);
    table.pairs.emplace_back(c.a, c.b);
  }
  for (const NodeState* n : sorted) {
    if (!matched.contains(n->id)) table.isolated.push_back(n->id);
  }
  return table;
}

void initial_modes(std::span<NodeState> nodes, const PairingTable& table, const Position& bs) {
  for (NodeId id : table.isolated) {
    NodeState& n = nodes[id];
    n.partner.reset();
    if (n.alive()) n.mode = Mode::Active;
  }
  for (const auto& [a_id, b_id] : table.pairs) {
    NodeState& a = nodes[a_id];
    NodeState& b = nodes[b_id];
    a.partner = b_id;
    b.partner = a_id;
    const double da = distance(a.position, bs);
    const double db = distance(b.position, bs);
    // a has the lower id, so it wins ties.
    const bool a_active = da <= db;
    if (a.alive()) a.mode = a_active ? Mode::Active : Mode::Sleep;
    if (b.alive()) b.mode = a_active ? Mode::Sleep : Mode::Active;
  }
}

double total_pair_distance(std::span<const NodeState> nodes, const PairingTable& table) {
  double sum = 0.0;
  for (const auto& [a, b] : table.pairs) sum += distance(nodes[a].position, nodes[b].position);
  return sum;
}

}  // namespace wsn
