#pragma once

// Linear-DC / FACTS network model: nodes with roles, undirected edges carrying
// a susceptance interval and a capacity, and solutions that assign angles,
// flows, generation and load.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ldcflow/rational.hpp"

namespace ldc {

using NodeId = std::string;

enum class NodeRole { Generator, Load, Plain };

const char* to_string(NodeRole role);

/// Unordered node pair in canonical (lexicographic) order. Flow on an edge is
/// positive when it goes from `first` to `second`.
using EdgeKey = std::pair<NodeId, NodeId>;

EdgeKey make_key(const NodeId& u, const NodeId& v);
std::string to_string(const EdgeKey& key);

struct Node {
  NodeId id;
  NodeRole role = NodeRole::Plain;
  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId a;
  NodeId b;
  Rational s_min;
  Rational s_max;
  Rational cap;

  EdgeKey key() const { return {a, b}; }
  bool fixed() const { return s_min == s_max; }
  /// Susceptance of a fixed edge.
  const Rational& susceptance() const { return s_min; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A network is a plain container kept in canonical order (nodes by id, edges
/// by key). It may hold structurally invalid content so that validate_network
/// can report it; solvers call require_valid first.
class Network {
 public:
  Network& add_node(const NodeId& id, NodeRole role = NodeRole::Plain);
  /// Edge with fixed susceptance.
  Network& add_edge(const NodeId& u, const NodeId& v, const Rational& s, const Rational& cap);
  /// FACTS edge with susceptance interval [s_min, s_max].
  Network& add_edge(const NodeId& u, const NodeId& v, const Rational& s_min,
                    const Rational& s_max, const Rational& cap);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_node(const NodeId& id) const { return node_index(id).has_value(); }
  std::optional<std::size_t> node_index(const NodeId& id) const;
  std::optional<std::size_t> edge_index(const NodeId& u, const NodeId& v) const;
  std::optional<NodeRole> role(const NodeId& id) const;

  /// All susceptances fixed (an LDC network in the strict sense).
  bool is_ldc() const;
  std::vector<std::size_t> facts_edges() const;

  /// Replace the susceptance interval of an existing edge.
  void set_susceptance(std::size_t edge, const Rational& s_min, const Rational& s_max);

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

struct SwitchSet {
  std::set<EdgeKey> removed;
  friend bool operator==(const SwitchSet&, const SwitchSet&) = default;
};

struct Solution {
  std::map<EdgeKey, Rational> susceptance;
  std::map<EdgeKey, Rational> flow;
  std::map<NodeId, Rational> angle;
  std::map<NodeId, Rational> gen;
  std::map<NodeId, Rational> load;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// The all-zero solution (susceptances at s_min).
Solution zero_solution(const Network& n);

/// Signed flow from `from` to `to` over the edge joining them.
Rational directed_flow(const Solution& sol, const NodeId& from, const NodeId& to);

enum class ViolationKind { Kirchhoff, PowerLaw, SusceptanceBound, CapacityBound, RoleBound, Structural };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::variant<NodeId, EdgeKey> location;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

ValidationReport validate_network(const Network& n);

/// Throws Error(InvalidNetwork) listing the structural violations, if any.
void require_valid(const Network& n);

Network subnetwork(const Network& n, const SwitchSet& s);

/// Union of two networks sharing node ids; edges must not overlap.
Network sum(const Network& n1, const Network& n2);

ValidationReport validate_solution(const Network& n, const Solution& sol);

Rational total_generation(const Solution& sol);

}  // namespace ldc
