#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "wsn/eesaa.hpp"
#include "wsn/engine.hpp"

using namespace wsn;
using testing::couple;
using testing::node;
using testing::with_ids;

TEST_CASE("election_threshold") {
  CHECK(eesaa::election_threshold(0.1, 10) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(eesaa::election_threshold(0.1, 20) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(eesaa::election_threshold(0.1, 3) == doctest::Approx(0.1 / 0.7).epsilon(1e-14));
  CHECK(eesaa::election_threshold(0.1, 13) == doctest::Approx(0.142857142857).epsilon(1e-11));
  CHECK(eesaa::election_threshold(0.1, 9) == doctest::Approx(1.0));
  CHECK(eesaa::election_threshold(0.1, 9) <= 1.0);
  CHECK_THROWS_AS(eesaa::election_threshold(0.0, 1), ConfigError);
  CHECK_THROWS_AS(eesaa::election_threshold(1.0, 1), ConfigError);
  CHECK_THROWS_AS(eesaa::election_threshold(-0.2, 1), ConfigError);
}

TEST_CASE("epoch_length tolerates reciprocal rounding") {
  CHECK(epoch_length(0.1) == 10);
  CHECK(epoch_length(1.0 / 3.0) == 3);
  CHECK(epoch_length(0.3) == 4);
  CHECK(epoch_length(0.05) == 20);
}

TEST_CASE("elect_pchs") {
  SUBCASE("a lone Active node is elected by fallback when its draw fails") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto nodes = with_ids({node(10, 10)});
      Rng rng(seed);
      CHECK(eesaa::elect_pchs(nodes, 0.1, 1, rng) == std::vector<NodeId>{0});
    }
  }
  SUBCASE("fallback picks the most energetic Active node, lowest id on ties") {
    auto nodes = with_ids({node(0, 0, 0.2), node(1, 0, 0.4), node(2, 0, 0.4), node(3, 0, 0.9, Mode::Sleep)});
    const std::vector<std::uint8_t> excluded = {1, 1, 1, 1};
    Rng rng(1);
    CHECK(eesaa::elect_pchs(nodes, 0.1, 1, rng, excluded) == std::vector<NodeId>{1});
  }
  SUBCASE("Sleep and Dead nodes are never elected") {
    std::vector<NodeState> nodes;
    for (int i = 0; i < 100; ++i) {
      const Mode m = i % 3 == 0 ? Mode::Active : (i % 3 == 1 ? Mode::Sleep : Mode::Dead);
      nodes.push_back(node(i, 0, m == Mode::Dead ? 0.0 : 0.5, m));
    }
    nodes = with_ids(std::move(nodes));
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng rng(seed);
      for (NodeId id : eesaa::elect_pchs(nodes, 0.1, 9, rng)) CHECK(nodes[id].mode == Mode::Active);
    }
  }
  SUBCASE("mean PCH count over 1000 trials is near N * P") {
    std::vector<NodeState> nodes;
    for (int i = 0; i < 100; ++i) nodes.push_back(node(i, i));
    nodes = with_ids(std::move(nodes));
    double total = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      Rng rng(seed);
      total += static_cast<double>(eesaa::elect_pchs(nodes, 0.1, 10, rng).size());
    }
    const double mean = total / 1000;
    CHECK(mean >= 8.0);
    CHECK(mean <= 12.0);
  }
  SUBCASE("same seed, same result") {
    std::vector<NodeState> nodes;
    for (int i = 0; i < 100; ++i) nodes.push_back(node(i, 0));
    nodes = with_ids(std::move(nodes));
    Rng a(77), b(77);
    CHECK(eesaa::elect_pchs(nodes, 0.1, 4, a) == eesaa::elect_pchs(nodes, 0.1, 4, b));
  }
}

TEST_CASE("associate_members") {
  SUBCASE("one CH takes every Active node") {
    const auto nodes = with_ids({node(0, 0), node(50, 50), node(90, 10), node(5, 5, 0.5, Mode::Sleep)});
    const std::vector<NodeId> chs = {1};
    const auto clusters = associate_members(chs, nodes);
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].ch_id == 1);
    CHECK(clusters[0].member_ids == std::vector<NodeId>{0, 2});
  }
  SUBCASE("equidistant member joins the lower CH id") {
    std::vector<NodeState> nodes;
    for (int i = 0; i < 8; ++i) nodes.push_back(node(100, 100));
    nodes[3].position = {0, 0};
    nodes[7].position = {10, 0};
    nodes[0].position = {5, 3};
    for (int i : {1, 2, 4, 5, 6}) nodes[static_cast<std::size_t>(i)].mode = Mode::Sleep;
    nodes = with_ids(std::move(nodes));
    const std::vector<NodeId> chs = {7, 3};
    const auto clusters = associate_members(chs, nodes);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].ch_id == 3);
    CHECK(clusters[0].member_ids == std::vector<NodeId>{0});
    CHECK(clusters[1].member_ids.empty());
  }
  SUBCASE("nearest of three CHs") {
    const auto nodes = with_ids({node(0, 0), node(50, 50), node(100, 100), node(10, 10)});
    const std::vector<NodeId> chs = {0, 1, 2};
    const auto clusters = associate_members(chs, nodes);
    CHECK(clusters[0].member_ids == std::vector<NodeId>{3});
    CHECK(clusters[1].member_ids.empty());
    CHECK(clusters[2].member_ids.empty());
  }
}

TEST_CASE("select_cch") {
  SUBCASE("unique maximum energy wins") {
    auto nodes = with_ids({node(0, 0, 0.30), node(5, 0, 0.40), node(9, 0, 0.35)});
    ClusterAssignment c{0, {1, 2}, std::nullopt};
    CHECK(eesaa::select_cch(c, nodes) == NodeId{1});
    CHECK(nodes[1].cch_flag);
    CHECK_FALSE(nodes[0].cch_flag);
    CHECK(c.next_cch == NodeId{1});
  }
  SUBCASE("energy tie goes to the node nearer the CH") {
    auto nodes = with_ids({node(0, 0, 0.10), node(7, 0, 0.40), node(0, 3, 0.40)});
    ClusterAssignment c{0, {1, 2}, std::nullopt};
    CHECK(eesaa::select_cch(c, nodes) == NodeId{2});
  }
  SUBCASE("single-member cluster: member or CH, whichever has more") {
    auto nodes = with_ids({node(0, 0, 0.2), node(4, 0, 0.3)});
    ClusterAssignment c{0, {1}, std::nullopt};
    CHECK(eesaa::select_cch(c, nodes) == NodeId{1});
    auto nodes2 = with_ids({node(0, 0, 0.3), node(4, 0, 0.2)});
    ClusterAssignment c2{0, {1}, std::nullopt};
    CHECK(eesaa::select_cch(c2, nodes2) == NodeId{0});
  }
  SUBCASE("a CH without members keeps the role") {
    auto nodes = with_ids({node(0, 0, 0.1)});
    ClusterAssignment c{0, {}, std::nullopt};
    CHECK(eesaa::select_cch(c, nodes) == NodeId{0});
  }
  SUBCASE("full tie falls back to the lowest id") {
    auto nodes = with_ids({node(0, 0, 0.1), node(0, 5, 0.4), node(5, 0, 0.4)});
    ClusterAssignment c{0, {1, 2}, std::nullopt};
    CHECK(eesaa::select_cch(c, nodes) == NodeId{1});
  }
}

TEST_CASE("run_ntp") {
  NetworkConfig cfg;
  cfg.bs_position = {0, 100};

  SUBCASE("Sleep nodes keep their energy") {
    auto nodes = with_ids({node(0, 0), node(5, 0), node(6, 0, 0.5, Mode::Sleep)});
    const std::vector<ClusterAssignment> clusters = {{0, {1}, std::nullopt}};
    run_ntp(clusters, nodes, cfg);
    CHECK(nodes[2].residual_energy == 0.5);
    CHECK(nodes[1].residual_energy < 0.5);
    CHECK(nodes[0].residual_energy < 0.5);
  }
  SUBCASE("a member that cannot afford its packet dies and does not deliver") {
    auto nodes = with_ids({node(0, 0), node(5, 0, 1e-9)});
    const std::vector<ClusterAssignment> clusters = {{0, {1}, std::nullopt}};
    const auto tally = run_ntp(clusters, nodes, cfg);
    CHECK(nodes[1].mode == Mode::Dead);
    CHECK(nodes[1].residual_energy == 0.0);
    CHECK(tally.packets_to_ch == 0);
    CHECK(tally.packets_to_bs == 1);
    // The CH then aggregates only its own stream.
    const double ch_cost = ch_round_energy(cfg.radio, 0, 4000, 4000, 100);
    CHECK(nodes[0].residual_energy == doctest::Approx(0.5 - ch_cost).epsilon(1e-14));
    CHECK(tally.energy_dissipated == doctest::Approx(1e-9 + ch_cost).epsilon(1e-14));
  }
  SUBCASE("CH with nine members 100 m from the BS pays 6.002e-3 J") {
    std::vector<NodeState> nodes = {node(0, 0)};
    for (int i = 0; i < 9; ++i) nodes.push_back(node(1, 0));
    nodes = with_ids(std::move(nodes));
    ClusterAssignment c{0, {1, 2, 3, 4, 5, 6, 7, 8, 9}, std::nullopt};
    const std::vector<ClusterAssignment> clusters = {c};
    const auto tally = run_ntp(clusters, nodes, cfg);
    CHECK(std::abs((0.5 - nodes[0].residual_energy) - 6.002e-3) <= 1e-15);
    CHECK(tally.packets_to_ch == 9);
    CHECK(tally.packets_to_bs == 1);
  }
  SUBCASE("a CH that dies while forwarding delivers nothing to the BS") {
    auto nodes = with_ids({node(0, 0, 1e-4), node(5, 0)});
    const std::vector<ClusterAssignment> clusters = {{0, {1}, std::nullopt}};
    const auto tally = run_ntp(clusters, nodes, cfg);
    CHECK(nodes[0].mode == Mode::Dead);
    CHECK(tally.packets_to_ch == 1);
    CHECK(tally.packets_to_bs == 0);
  }
  SUBCASE("sleep energy override is charged to Sleep nodes") {
    cfg.sleep_energy = 1e-5;
    auto nodes = with_ids({node(0, 0), node(6, 0, 0.5, Mode::Sleep)});
    const std::vector<ClusterAssignment> clusters = {{0, {}, std::nullopt}};
    run_ntp(clusters, nodes, cfg);
    CHECK(nodes[1].residual_energy == doctest::Approx(0.5 - 1e-5));
  }
}

// Expected modes transcribed from the node-mode-setup algorithm, with the
// dead-partner rule checked before the four live-partner branches.
TEST_CASE("node_mode_setup truth table") {
  struct Row {
    bool coupled;
    Mode mode;
    bool own_cch;
    bool partner_cch;
    bool partner_dead;
    Mode expected;
  };
  std::vector<Row> rows;
  for (bool coupled : {false, true}) {
    for (Mode mode : {Mode::Active, Mode::Sleep}) {
      for (bool own : {false, true}) {
        for (bool partner : {false, true}) {
          for (bool dead : {false, true}) {
            if (!coupled && (partner || dead)) continue;
            if (dead && partner) continue;  // dead nodes carry no flags
            if (mode == Mode::Sleep && own) continue;  // CCHs are always Active
            if (mode == Mode::Active && partner) continue;  // so a Sleep partner has no flag
            Mode expected;
            if (!coupled || dead) {
              expected = Mode::Active;
            } else if (mode == Mode::Active) {
              expected = own ? Mode::Active : Mode::Sleep;
            } else {
              expected = partner ? Mode::Sleep : Mode::Active;
            }
            rows.push_back({coupled, mode, own, partner, dead, expected});
          }
        }
      }
    }
  }
  CHECK(rows.size() == 10);
  for (const auto& r : rows) {
    CAPTURE(r.coupled);
    CAPTURE(static_cast<int>(r.mode));
    CAPTURE(r.own_cch);
    CAPTURE(r.partner_cch);
    CAPTURE(r.partner_dead);
    auto nodes = with_ids({node(0, 0, 0.5, r.mode), node(1, 0, 0.5, Mode::Active)});
    nodes[0].cch_flag = r.own_cch;
    if (r.coupled) {
      couple(nodes, 0, 1);
      nodes[1].mode = r.partner_dead ? Mode::Dead : (r.mode == Mode::Active ? Mode::Sleep : Mode::Active);
      if (r.partner_dead) nodes[1].residual_energy = 0.0;
      nodes[1].cch_flag = r.partner_cch;
    }
    eesaa::node_mode_setup(nodes);
    CHECK(nodes[0].mode == r.expected);
  }
}

TEST_CASE("node_mode_setup leaves dead nodes alone") {
  auto nodes = with_ids({node(0, 0, 0.0, Mode::Dead), node(1, 0)});
  couple(nodes, 0, 1);
  eesaa::node_mode_setup(nodes);
  CHECK(nodes[0].mode == Mode::Dead);
  CHECK(nodes[1].mode == Mode::Active);
}

TEST_CASE("run_round") {
  NetworkConfig cfg;

  SUBCASE("all dead at entry is terminal") {
    Network net = make_network(cfg, with_ids({node(0, 0, 0.0, Mode::Dead), node(1, 1, 0.0, Mode::Dead)}));
    Rng rng(1);
    const auto res = eesaa::run_round(net, 5, rng);
    CHECK(res.terminal);
    CHECK(res.record.alive == 0);
    CHECK(res.record.dead == 2);
  }

  SUBCASE("fresh network: round 1 has a CH and clusters every Active node") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      cfg.rng_seed = seed;
      Simulation sim(cfg, Protocol::Eesaa);
      RoundTrace trace;
      const auto res = sim.step(&trace);
      CHECK(trace.reelection);
      CHECK(res.record.ch_count >= 1);
      std::set<NodeId> clustered;
      for (const auto& c : trace.clusters) {
        clustered.insert(c.ch_id);
        clustered.insert(c.member_ids.begin(), c.member_ids.end());
      }
      std::size_t active = 0;
      for (Mode m : trace.modes_before_ntp) active += m == Mode::Active;
      CHECK(clustered.size() == active);
    }
  }

  SUBCASE("a pair that never becomes CCH alternates every round") {
    // Node 2 is isolated, richer than the pair and already designated, so it
    // heads every round and always wins the CCH selection.
    auto nodes = with_ids({node(10, 10), node(12, 10), node(90, 90, 5.0)});
    Network net = make_network(cfg, nodes);
    net.pairing = compute_pairs(net.nodes, cfg.pairing_range);
    REQUIRE(net.pairing.pairs.size() == 1);
    initial_modes(net.nodes, net.pairing, cfg.bs_position);
    net.nodes[2].cch_flag = true;
    const Mode first = net.nodes[0].mode;
    Rng rng(3);
    for (std::uint64_t r = 1; r <= 4; ++r) {
      RoundTrace trace;
      eesaa::run_round(net, r, rng, &trace);
      CHECK_FALSE(trace.reelection);
      REQUIRE(trace.clusters.size() == 1);
      CHECK(trace.clusters[0].ch_id == 2);
      CHECK(trace.clusters[0].next_cch == NodeId{2});
      const Mode expected = (r % 2 == 1) == (first == Mode::Active) ? Mode::Sleep : Mode::Active;
      CHECK(net.nodes[0].mode == expected);
      CHECK(net.nodes[1].mode != net.nodes[0].mode);
    }
  }
}

namespace {

struct InvariantCounts {
  std::size_t rounds = 0;
  std::size_t pair_violations = 0;
};

// Runs a full EESAA simulation and checks the per-round invariants.
InvariantCounts check_full_run(NetworkConfig cfg) {
  InvariantCounts counts;
  Simulation sim(cfg, Protocol::Eesaa);
  const auto& nodes = sim.network().nodes;
  const auto& pairing = sim.network().pairing;

  std::vector<NodeId> expected_heads;
  std::vector<bool> promoted(nodes.size(), false);
  for (std::uint64_t r = 1; r <= cfg.max_rounds; ++r) {
    std::vector<double> before;
    for (const auto& n : nodes) before.push_back(n.residual_energy);
    const double total_before = sim.network().total_residual();

    RoundTrace trace;
    const auto res = sim.step(&trace);
    if (res.terminal) break;
    ++counts.rounds;

    // CH containment.
    std::vector<NodeId> heads;
    for (const auto& c : trace.clusters) heads.push_back(c.ch_id);
    if (!trace.reelection) CHECK(heads == expected_heads);
    expected_heads.clear();
    for (const auto& c : trace.clusters) {
      if (c.next_cch && nodes[*c.next_cch].alive()) expected_heads.push_back(*c.next_cch);
    }
    std::sort(expected_heads.begin(), expected_heads.end());

    // Eligibility: heads, members and CCHs were Active when chosen.
    for (const auto& c : trace.clusters) {
      CHECK(trace.modes_before_ntp[c.ch_id] == Mode::Active);
      for (NodeId m : c.member_ids) CHECK(trace.modes_before_ntp[m] == Mode::Active);
      if (c.next_cch) CHECK(trace.modes_before_ntp[*c.next_cch] == Mode::Active);
    }

    // Monotonicity and per-round conservation.
    double debits = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(nodes[i].residual_energy <= before[i]);
      CHECK(nodes[i].residual_energy >= 0.0);
      CHECK((nodes[i].mode == Mode::Dead) == (nodes[i].residual_energy == 0.0));
      if (trace.modes_before_ntp[i] == Mode::Active && before[i] > 0) {
        CHECK(nodes[i].residual_energy < before[i]);
      }
      if (trace.modes_before_ntp[i] == Mode::Sleep) CHECK(nodes[i].residual_energy == before[i]);
      debits += before[i] - nodes[i].residual_energy;
    }
    const double total_after = sim.network().total_residual();
    CHECK(std::abs((total_before - total_after) - res.record.energy_dissipated) <= 1e-12 * total_before + 1e-15);
    CHECK(std::abs(debits - res.record.energy_dissipated) <= 1e-12 * total_before + 1e-15);

    // Pair exclusivity and survivor promotion.
    for (const auto& [a, b] : pairing.pairs) {
      const auto& na = nodes[a];
      const auto& nb = nodes[b];
      if (na.alive() && nb.alive()) {
        const int active = (na.mode == Mode::Active) + (nb.mode == Mode::Active);
        if (active != 1) ++counts.pair_violations;
      }
      for (const auto* pair : {&na, &nb}) {
        const auto& partner = nodes[*pair->partner];
        if (pair->alive() && !partner.alive()) promoted[pair->id] = true;
        if (promoted[pair->id] && pair->alive()) CHECK(pair->mode == Mode::Active);
      }
    }
    for (NodeId id : pairing.isolated) {
      if (nodes[id].alive()) CHECK(nodes[id].mode == Mode::Active);
    }

    // Record invariants.
    CHECK(res.record.alive + res.record.dead == cfg.n_nodes);
    CHECK(res.record.ch_count <= cfg.n_nodes);
    CHECK(res.record.packets_to_bs <= res.record.ch_count);
    if (res.record.alive == 0) break;
  }
  return counts;
}

}  // namespace

TEST_CASE("EESAA invariants over full runs") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    NetworkConfig cfg;
    cfg.rng_seed = seed;
    const auto counts = check_full_run(cfg);
    CHECK(counts.rounds > 100);
    CHECK(counts.pair_violations == 0);
  }
  SUBCASE("several application types") {
    NetworkConfig cfg;
    cfg.app_type_count = 3;
    cfg.rng_seed = 12;
    CHECK(check_full_run(cfg).pair_violations == 0);
  }
}
