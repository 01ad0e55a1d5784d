#pragma once

#include <vector>

#include "ldcflow/network.hpp"

namespace ldc {

struct MaxFlowResult {
  Rational value;
  /// Net flow per edge (network edge order), positive from Edge::a to Edge::b.
  std::vector<Rational> edge_flow;
  /// Injection per node (network node order): supply at generators, intake at loads.
  std::vector<Rational> supply;
};

/// Classical max flow from all generators to all loads, ignoring susceptance.
/// Upper-bounds the potential flow of the network and of every sub-network.
MaxFlowResult max_flow_detail(const Network& n);

Rational classical_max_flow(const Network& n);

/// Same bound on the network restricted to edges with `active[e]` set.
Rational classical_max_flow(const Network& n, const std::vector<bool>& active);

}  // namespace ldc
