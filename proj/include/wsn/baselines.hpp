#pragma once

#include <cstdint>

#include "wsn/cluster.hpp"
#include "wsn/network.hpp"
#include "wsn/rng.hpp"

namespace wsn::baseline {

enum class Kind { Leach, Sep, Deec };

/// LEACH threshold: p / (1 - p * (round mod ceil(1/p))) for a node that has
/// not served as CH in the current epoch, 0 otherwise.
double leach_threshold(double p, std::uint64_t round, bool eligible);

/// SEP per-tier election probabilities.
double sep_normal_probability(double p, double advanced_fraction, double energy_factor);
double sep_advanced_probability(double p, double advanced_fraction, double energy_factor);

/// DEEC election probability p * residual / average, clamped to (0, 1].
double deec_probability(double p, double residual, double average);

/// Average energy DEEC compares each node against this round.
double deec_reference_energy(const Network& net, std::uint64_t round);

/// Sets SEP tiers: the first round(m * N) node ids become advanced nodes
/// with initial energy E_o * (1 + alpha). Consumes no random draws.
void assign_sep_tiers(Network& net);

/// One round of the given baseline: every alive node is awake, elects by its
/// protocol threshold (ascending id, eligible nodes draw once), falls back to
/// the most energetic node when nobody is elected, then runs association and
/// data transmission exactly like EESAA.
RoundResult run_round(Kind kind, Network& net, std::uint64_t round, Rng& rng,
                      RoundTrace* trace = nullptr);

inline RoundResult run_leach_round(Network& net, std::uint64_t round, Rng& rng) {
  return run_round(Kind::Leach, net, round, rng);
}
inline RoundResult run_sep_round(Network& net, std::uint64_t round, Rng& rng) {
  return run_round(Kind::Sep, net, round, rng);
}
inline RoundResult run_deec_round(Network& net, std::uint64_t round, Rng& rng) {
  return run_round(Kind::Deec, net, round, rng);
}

}  // namespace wsn::baseline
