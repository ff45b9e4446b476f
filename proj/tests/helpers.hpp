#pragma once

#include <vector>

#include "wsn/network.hpp"

namespace testing {

inline wsn::NodeState node(double x, double y, double energy = 0.5,
                           wsn::Mode mode = wsn::Mode::Active, std::uint32_t app_type = 0) {
  wsn::NodeState n;
  n.position = {x, y};
  n.residual_energy = energy;
  n.mode = mode;
  n.app_type = app_type;
  return n;
}

/// Assigns ids 0..n-1 in order.
inline std::vector<wsn::NodeState> with_ids(std::vector<wsn::NodeState> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].id = static_cast<wsn::NodeId>(i);
  return nodes;
}

inline void couple(std::vector<wsn::NodeState>& nodes, wsn::NodeId a, wsn::NodeId b) {
  nodes[a].partner = b;
  nodes[b].partner = a;
}

}  // namespace testing
