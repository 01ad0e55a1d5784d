#pragma once

// Maximum Switching Flow: the best potential flow over all sub-networks.
//
// Switch sets are ordered lexicographically as sorted lists of canonical
// edges, a proper prefix coming first: the empty set is the smallest, and
// {e1, e5} < {e1, e7} < {e2}. Every solver returns the smallest optimal
// switch set in this order.

#include <cstddef>
#include <string>
#include <vector>

#include "ldcflow/lp.hpp"
#include "ldcflow/mpf.hpp"
#include "ldcflow/network.hpp"

namespace ldc {

struct MsfOutcome {
  Rational value;
  SwitchSet switched;
  /// Optimal solution on subnetwork(n, switched).
  Solution solution;
};

inline constexpr std::size_t kDefaultExhaustiveEdgeLimit = 20;

MsfOutcome solve_msf_exhaustive(const Network& n, std::size_t edge_limit = kDefaultExhaustiveEdgeLimit);

/// Every optimal switch set with its solution, in switch-set order.
std::vector<MsfOutcome> msf_optima(const Network& n, std::size_t edge_limit = kDefaultExhaustiveEdgeLimit);

struct BnbStats {
  std::size_t nodes = 0;
  std::size_t lp_solves = 0;
  std::size_t pruned = 0;
};

/// Depth-first branch and bound over remove/keep decisions in canonical edge
/// order. A branch is pruned when the classical max flow of its not-removed
/// edges, or the flow model with undecided edges relaxed, cannot beat the
/// incumbent. Same value and switch set as the exhaustive search.
MsfOutcome solve_msf_bnb(const Network& n, BnbStats* stats = nullptr);

/// True iff MSF(n) >= x.
bool decide_msf(const Network& n, const Rational& x);

/// Big-M mixed-integer formulation. One binary per edge (1 = in service):
///   |f_e| <= cap_e z_e,   |f_e - s_e (theta_b - theta_a)| <= M_e (1 - z_e),
/// with M_e = s_e * Theta and Theta = sum over edges of cap_e / s_e.
struct MsfMilp {
  LinearProgram lp;
  std::vector<VarId> binaries;  // per edge
  std::vector<VarId> flow;      // per edge
  Rational angle_spread;        // Theta
};

MsfMilp build_msf_milp(const Network& n);

std::string export_milp(const Network& n);

}  // namespace ldc
