#pragma once

// Maximum Potential Flow: the largest total generation of an LDC network with
// fixed topology and susceptances.

#include <optional>
#include <span>
#include <vector>

#include "ldcflow/lp.hpp"
#include "ldcflow/network.hpp"

namespace ldc {

struct MpfOutcome {
  Rational value;
  Solution solution;
};

/// How an edge enters a flow model.
///  Kept:    power law and capacity.
///  Relaxed: free flow within capacity, no power law (upper-bounds both
///           keeping and removing the edge).
///  Removed: absent.
enum class EdgeMode { Kept, Relaxed, Removed };

struct FlowModel {
  LinearProgram lp;
  std::vector<VarId> angle;                        // per node
  std::vector<std::optional<VarId>> gen;           // per node, generators only
  std::vector<std::optional<VarId>> load;          // per node, loads only
  std::vector<std::optional<VarId>> relaxed_flow;  // per edge, relaxed edges only
};

/// Angles per node (one pinned to zero per component of kept edges, at its
/// lexicographically smallest node), generation and load variables, Kirchhoff
/// rows and capacity rows; objective is total generation. Kept edges must
/// have fixed susceptance.
FlowModel build_flow_model(const Network& n, std::span<const EdgeMode> modes);

LinearProgram formulate_mpf(const Network& n);

MpfOutcome solve_mpf(const Network& n);

/// Optimal value of the flow model for the given edge modes.
Rational flow_model_value(const Network& n, std::span<const EdgeMode> modes);

/// Potential flow of a tree from its classical max flow, without the LP.
MpfOutcome solve_tree(const Network& n);

}  // namespace ldc
