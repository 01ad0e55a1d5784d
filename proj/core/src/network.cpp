#include "ldcflow/network.hpp"

#include <algorithm>
#include <sstream>

#include "ldcflow/errors.hpp"

namespace ldc {

const char* to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Generator: return "generator";
    case NodeRole::Load: return "load";
    case NodeRole::Plain: return "plain";
  }
  return "plain";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Kirchhoff: return "Kirchhoff";
    case ViolationKind::PowerLaw: return "PowerLaw";
    case ViolationKind::SusceptanceBound: return "SusceptanceBound";
    case ViolationKind::CapacityBound: return "CapacityBound";
    case ViolationKind::RoleBound: return "RoleBound";
    case ViolationKind::Structural: return "Structural";
  }
  return "Structural";
}

EdgeKey make_key(const NodeId& u, const NodeId& v) {
  return u <= v ? EdgeKey{u, v} : EdgeKey{v, u};
}

std::string to_string(const EdgeKey& key) { return key.first + "--" + key.second; }

Network& Network::add_node(const NodeId& id, NodeRole role) {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), id,
                             [](const NodeId& x, const Node& n) { return x < n.id; });
  nodes_.insert(it, Node{id, role});
  return *this;
}

Network& Network::add_edge(const NodeId& u, const NodeId& v, const Rational& s,
                           const Rational& cap) {
  return add_edge(u, v, s, s, cap);
}

Network& Network::add_edge(const NodeId& u, const NodeId& v, const Rational& s_min,
                           const Rational& s_max, const Rational& cap) {
  auto key = make_key(u, v);
  Edge e{key.first, key.second, s_min, s_max, cap};
  auto it = std::upper_bound(edges_.begin(), edges_.end(), key,
                             [](const EdgeKey& k, const Edge& x) { return k < x.key(); });
  edges_.insert(it, std::move(e));
  return *this;
}

std::optional<std::size_t> Network::node_index(const NodeId& id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, const NodeId& x) { return n.id < x; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::optional<std::size_t> Network::edge_index(const NodeId& u, const NodeId& v) const {
  const auto key = make_key(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                             [](const Edge& e, const EdgeKey& k) { return e.key() < k; });
  if (it == edges_.end() || it->key() != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::optional<NodeRole> Network::role(const NodeId& id) const {
  if (auto i = node_index(id)) return nodes_[*i].role;
  return std::nullopt;
}

bool Network::is_ldc() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.fixed(); });
}

std::vector<std::size_t> Network::facts_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!edges_[i].fixed()) out.push_back(i);
  }
  return out;
}

void Network::set_susceptance(std::size_t edge, const Rational& s_min, const Rational& s_max) {
  edges_.at(edge).s_min = s_min;
  edges_.at(edge).s_max = s_max;
}

Solution zero_solution(const Network& n) {
  Solution sol;
  for (const auto& node : n.nodes()) {
    sol.angle[node.id] = 0;
    sol.gen[node.id] = 0;
    sol.load[node.id] = 0;
  }
  for (const auto& e : n.edges()) {
    sol.susceptance[e.key()] = e.s_min;
    sol.flow[e.key()] = 0;
  }
  return sol;
}

Rational directed_flow(const Solution& sol, const NodeId& from, const NodeId& to) {
  const auto key = make_key(from, to);
  auto it = sol.flow.find(key);
  if (it == sol.flow.end()) return 0;
  return key.first == from ? it->second : -it->second;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << to_string(v.kind) << " at ";
    if (const auto* node = std::get_if<NodeId>(&v.location)) {
      os << "node " << *node;
    } else {
      os << "edge " << to_string(std::get<EdgeKey>(v.location));
    }
    os << ": " << v.detail << '\n';
  }
  return os.str();
}

ValidationReport validate_network(const Network& n) {
  ValidationReport report;
  auto structural = [&](std::variant<NodeId, EdgeKey> loc, std::string detail) {
    report.violations.push_back({ViolationKind::Structural, std::move(loc), std::move(detail)});
  };

  const auto& nodes = n.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id.empty()) structural(nodes[i].id, "empty node id");
    if (i > 0 && nodes[i].id == nodes[i - 1].id) {
      structural(nodes[i].id, nodes[i].role == nodes[i - 1].role
                                  ? "node declared twice"
                                  : "role conflict: node declared with two roles");
    }
  }

  const auto& edges = n.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.a == e.b) structural(e.key(), "self-loop");
    if (!n.has_node(e.a)) structural(e.key(), "endpoint '" + e.a + "' is not a declared node");
    if (e.b != e.a && !n.has_node(e.b)) {
      structural(e.key(), "endpoint '" + e.b + "' is not a declared node");
    }
    if (e.s_min.sign() <= 0) structural(e.key(), "susceptance lower limit must be positive");
    if (e.s_max < e.s_min) structural(e.key(), "susceptance interval is inverted");
    if (e.cap.sign() <= 0) structural(e.key(), "capacity must be positive");
    if (i > 0 && edges[i - 1].key() == e.key()) {
      structural(e.key(), "two edges connect the same pair of nodes");
    }
  }
  return report;
}

void require_valid(const Network& n) {
  auto report = validate_network(n);
  if (!report.ok()) throw Error(ErrorCode::InvalidNetwork, report.summary());
}

Network subnetwork(const Network& n, const SwitchSet& s) {
  for (const auto& key : s.removed) {
    if (!n.edge_index(key.first, key.second)) {
      throw Error(ErrorCode::UnknownEdge, "switch set names missing edge " + to_string(key));
    }
  }
  Network out;
  for (const auto& node : n.nodes()) out.add_node(node.id, node.role);
  for (const auto& e : n.edges()) {
    if (!s.removed.contains(e.key())) out.add_edge(e.a, e.b, e.s_min, e.s_max, e.cap);
  }
  return out;
}

Network sum(const Network& n1, const Network& n2) {
  Network out;
  std::map<NodeId, NodeRole> roles;
  for (const auto* part : {&n1, &n2}) {
    for (const auto& node : part->nodes()) {
      auto [it, inserted] = roles.emplace(node.id, node.role);
      if (inserted || it->second == node.role || node.role == NodeRole::Plain) continue;
      if (it->second == NodeRole::Plain) {
        it->second = node.role;
        continue;
      }
      throw Error(ErrorCode::RoleConflict, "node '" + node.id + "' would be generator and load");
    }
  }
  for (const auto& [id, role] : roles) out.add_node(id, role);

  for (const auto& e : n1.edges()) {
    if (n2.edge_index(e.a, e.b)) {
      throw Error(ErrorCode::EdgeOverlap, "both networks contain edge " + to_string(e.key()));
    }
    out.add_edge(e.a, e.b, e.s_min, e.s_max, e.cap);
  }
  for (const auto& e : n2.edges()) out.add_edge(e.a, e.b, e.s_min, e.s_max, e.cap);
  return out;
}

ValidationReport validate_solution(const Network& n, const Solution& sol) {
  ValidationReport report;
  auto add = [&](ViolationKind k, std::variant<NodeId, EdgeKey> loc, std::string detail) {
    report.violations.push_back({k, std::move(loc), std::move(detail)});
  };

  // Domains must match the network exactly.
  auto check_edge_domain = [&](const std::map<EdgeKey, Rational>& m, const char* what) {
    for (const auto& [key, value] : m) {
      if (!n.edge_index(key.first, key.second) || key != make_key(key.first, key.second)) {
        add(ViolationKind::Structural, key, std::string(what) + " given for unknown edge");
      }
    }
    for (const auto& e : n.edges()) {
      if (!m.contains(e.key())) add(ViolationKind::Structural, e.key(), std::string("missing ") + what);
    }
  };
  auto check_node_domain = [&](const std::map<NodeId, Rational>& m, const char* what) {
    for (const auto& [id, value] : m) {
      if (!n.has_node(id)) add(ViolationKind::Structural, id, std::string(what) + " given for unknown node");
    }
    for (const auto& node : n.nodes()) {
      if (!m.contains(node.id)) add(ViolationKind::Structural, node.id, std::string("missing ") + what);
    }
  };
  check_edge_domain(sol.susceptance, "susceptance");
  check_edge_domain(sol.flow, "flow");
  check_node_domain(sol.angle, "angle");
  check_node_domain(sol.gen, "generation");
  check_node_domain(sol.load, "load");

  auto value_or_zero = [](const auto& m, const auto& key) -> Rational {
    auto it = m.find(key);
    return it == m.end() ? Rational{} : it->second;
  };

  std::map<NodeId, Rational> net_out;
  for (const auto& e : n.edges()) {
    const auto key = e.key();
    const auto flow_it = sol.flow.find(key);
    const auto sus_it = sol.susceptance.find(key);
    const auto a_it = sol.angle.find(e.a);
    const auto b_it = sol.angle.find(e.b);
    if (flow_it == sol.flow.end()) continue;
    const Rational& f = flow_it->second;
    net_out[e.a] += f;
    net_out[e.b] -= f;

    if (f.abs() > e.cap) {
      add(ViolationKind::CapacityBound, key, "|flow| " + f.abs().str() + " exceeds capacity " + e.cap.str());
    }
    if (sus_it == sol.susceptance.end()) continue;
    const Rational& s = sus_it->second;
    if (s < e.s_min || s > e.s_max) {
      add(ViolationKind::SusceptanceBound, key,
          "susceptance " + s.str() + " outside [" + e.s_min.str() + ", " + e.s_max.str() + "]");
    }
    if (a_it == sol.angle.end() || b_it == sol.angle.end()) continue;
    const Rational expected = s * (b_it->second - a_it->second);
    if (f != expected) {
      add(ViolationKind::PowerLaw, key, "flow " + f.str() + " but susceptance times angle difference is " + expected.str());
    }
  }

  for (const auto& node : n.nodes()) {
    const Rational g = value_or_zero(sol.gen, node.id);
    const Rational l = value_or_zero(sol.load, node.id);
    if (g.sign() < 0) add(ViolationKind::RoleBound, node.id, "negative generation");
    if (l.sign() < 0) add(ViolationKind::RoleBound, node.id, "negative load");
    if (node.role != NodeRole::Generator && !g.is_zero()) {
      add(ViolationKind::RoleBound, node.id, "generation at a non-generator");
    }
    if (node.role != NodeRole::Load && !l.is_zero()) {
      add(ViolationKind::RoleBound, node.id, "load at a non-load");
    }
    const Rational out = value_or_zero(net_out, node.id);
    if (out != g - l) {
      add(ViolationKind::Kirchhoff, node.id,
          "net outflow " + out.str() + " but generation minus load is " + (g - l).str());
    }
  }
  return report;
}

Rational total_generation(const Solution& sol) {
  Rational total;
  for (const auto& [id, g] : sol.gen) total += g;
  return total;
}

}  // namespace ldc
