#pragma once

// Maximum FACTS Flow: the best potential flow over susceptance choices within
// each FACTS edge's interval. The search enumerates candidate susceptances,
// so its value is a lower bound unless the network has no FACTS edges.

#include <cstddef>
#include <map>
#include <vector>

#include "ldcflow/mpf.hpp"
#include "ldcflow/network.hpp"

namespace ldc {

/// Susceptance per FACTS edge.
struct SusAssignment {
  std::map<EdgeKey, Rational> values;
  friend bool operator==(const SusAssignment&, const SusAssignment&) = default;
};

struct MffOutcome {
  Rational value;
  SusAssignment assignment;
  /// Solution on the original network; susceptances taken from `assignment`.
  Solution solution;
  /// True only without FACTS edges, where the value is the exact optimum.
  bool certified = false;
};

inline constexpr std::size_t kDefaultFactsLimit = 12;

/// Copy of `n` with each FACTS edge fixed to its assigned susceptance.
Network apply_assignment(const Network& n, const SusAssignment& assignment);

/// Best MPF over all {s_min, s_max} combinations. Ties go to the
/// lexicographically smallest assignment vector (FACTS edges in canonical
/// order, smaller susceptance first).
MffOutcome solve_mff_endpoints(const Network& n, std::size_t facts_limit = kDefaultFactsLimit);

/// Same over the k+1 evenly spaced points of every interval, endpoints included.
MffOutcome solve_mff_grid(const Network& n, std::size_t k, std::size_t facts_limit = kDefaultFactsLimit);

/// Every endpoint combination attaining the endpoint optimum, in tie-break order.
std::vector<MffOutcome> mff_endpoint_optima(const Network& n, std::size_t facts_limit = kDefaultFactsLimit);

enum class MffDecision { Yes, Unknown };

const char* to_string(MffDecision d);

/// Yes when the endpoint search (or the grid, if k > 0) reaches x.
MffDecision decide_mff(const Network& n, const Rational& x, std::size_t grid_k = 0);

}  // namespace ldc
