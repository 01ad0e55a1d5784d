#pragma once

#include <cstddef>
#include <vector>

#include "ldcflow/network.hpp"

namespace ldc {

/// Component label per node (network node order), numbered from 0 in order
/// of each component's smallest node.
std::vector<std::size_t> components(const Network& n);
std::vector<std::size_t> components(const Network& n, const std::vector<bool>& active);

bool is_connected(const Network& n);

/// Connected and acyclic. Networks with zero or one node count as trees.
bool is_tree(const Network& n);

/// Every biconnected component is a single edge or a simple cycle, i.e. no
/// edge lies on two distinct simple cycles. Connectivity is not required.
bool is_cactus(const Network& n);

std::size_t max_degree(const Network& n);

/// Edges whose removal disconnects their endpoints within the active edges.
std::vector<bool> bridges(const Network& n, const std::vector<bool>& active);

}  // namespace ldc
