#include "ldcflow/mpf.hpp"

#include <deque>

#include "ldcflow/classify.hpp"
#include "ldcflow/errors.hpp"
#include "ldcflow/max_flow.hpp"

namespace ldc {
namespace {

void require_fixed(const Network& n) {
  for (const auto& e : n.edges()) {
    if (!e.fixed()) {
      throw Error(ErrorCode::NotFixedSusceptance,
                  "edge " + to_string(e.key()) + " has susceptance interval [" + e.s_min.str() + ", " +
                      e.s_max.str() + "]");
    }
  }
}

}  // namespace

FlowModel build_flow_model(const Network& n, std::span<const EdgeMode> modes) {
  const auto& nodes = n.nodes();
  const auto& edges = n.edges();
  FlowModel m;

  std::vector<bool> kept(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    kept[i] = modes[i] == EdgeMode::Kept;
    if (kept[i] && !edges[i].fixed()) {
      throw Error(ErrorCode::NotFixedSusceptance, "edge " + to_string(edges[i].key()) + " is not fixed");
    }
  }
  const auto label = components(n, kept);
  std::vector<bool> pinned_component(n.node_count(), false);

  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const bool pin = !pinned_component[label[v]];
    pinned_component[label[v]] = true;
    m.angle.push_back(pin ? m.lp.add_variable("theta(" + nodes[v].id + ")", Rational{}, Rational{})
                          : m.lp.add_variable("theta(" + nodes[v].id + ")", std::nullopt, std::nullopt));
  }
  m.gen.resize(nodes.size());
  m.load.resize(nodes.size());
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].role == NodeRole::Generator) m.gen[v] = m.lp.add_variable("gen(" + nodes[v].id + ")");
    if (nodes[v].role == NodeRole::Load) m.load[v] = m.lp.add_variable("load(" + nodes[v].id + ")");
  }
  m.relaxed_flow.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (modes[i] == EdgeMode::Relaxed) {
      m.relaxed_flow[i] = m.lp.add_variable("flow(" + edges[i].a + "," + edges[i].b + ")", -edges[i].cap,
                                            edges[i].cap);
    }
  }

  // Net outflow per node, expressed in the model's variables.
  std::vector<LinearExpr> outflow(nodes.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (modes[i] == EdgeMode::Removed) continue;
    const std::size_t a = *n.node_index(e.a);
    const std::size_t b = *n.node_index(e.b);
    if (modes[i] == EdgeMode::Relaxed) {
      outflow[a].push_back({*m.relaxed_flow[i], 1});
      outflow[b].push_back({*m.relaxed_flow[i], -1});
      continue;
    }
    const Rational& s = e.susceptance();
    // flow(a,b) = s * (theta_b - theta_a)
    LinearExpr flow{{m.angle[b], s}, {m.angle[a], -s}};
    outflow[a].push_back({m.angle[b], s});
    outflow[a].push_back({m.angle[a], -s});
    outflow[b].push_back({m.angle[b], -s});
    outflow[b].push_back({m.angle[a], s});
    const std::string tag = e.a + "," + e.b;
    m.lp.add_constraint(flow, Relation::LessEq, e.cap, "cap+(" + tag + ")");
    m.lp.add_constraint(std::move(flow), Relation::GreaterEq, -e.cap, "cap-(" + tag + ")");
  }

  LinearExpr objective;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    LinearExpr row = std::move(outflow[v]);
    if (m.gen[v]) {
      row.push_back({*m.gen[v], -1});
      objective.push_back({*m.gen[v], 1});
    }
    if (m.load[v]) row.push_back({*m.load[v], 1});
    if (row.empty()) continue;
    m.lp.add_constraint(std::move(row), Relation::Equal, 0, "kirchhoff(" + nodes[v].id + ")");
  }
  m.lp.set_objective(std::move(objective));
  return m;
}

LinearProgram formulate_mpf(const Network& n) {
  require_valid(n);
  require_fixed(n);
  std::vector<EdgeMode> modes(n.edge_count(), EdgeMode::Kept);
  return build_flow_model(n, modes).lp;
}

Rational flow_model_value(const Network& n, std::span<const EdgeMode> modes) {
  const FlowModel m = build_flow_model(n, modes);
  const LpResult r = solve_lp(m.lp);
  if (r.status != LpStatus::Optimal) {
    throw std::logic_error(std::string("flow model is ") + to_string(r.status));
  }
  return r.value;
}

MpfOutcome solve_mpf(const Network& n) {
  require_valid(n);
  require_fixed(n);

  // With no classical flow the zero solution is optimal; skip the LP.
  if (classical_max_flow(n).is_zero()) return {Rational{}, zero_solution(n)};

  std::vector<EdgeMode> modes(n.edge_count(), EdgeMode::Kept);
  const FlowModel m = build_flow_model(n, modes);
  const LpResult r = solve_lp(m.lp);
  if (r.status != LpStatus::Optimal) {
    throw std::logic_error(std::string("potential-flow LP is ") + to_string(r.status));
  }

  MpfOutcome out;
  out.value = r.value;
  Solution& sol = out.solution;
  for (std::size_t v = 0; v < n.node_count(); ++v) {
    const NodeId& id = n.nodes()[v].id;
    sol.angle[id] = r[m.angle[v]];
    sol.gen[id] = m.gen[v] ? r[*m.gen[v]] : Rational{};
    sol.load[id] = m.load[v] ? r[*m.load[v]] : Rational{};
  }
  for (const auto& e : n.edges()) {
    sol.susceptance[e.key()] = e.susceptance();
    sol.flow[e.key()] = e.susceptance() * (sol.angle[e.b] - sol.angle[e.a]);
  }
  return out;
}

MpfOutcome solve_tree(const Network& n) {
  require_valid(n);
  require_fixed(n);
  if (!is_tree(n)) throw Error(ErrorCode::NotATree, "network has a cycle or is disconnected");

  const MaxFlowResult flow = max_flow_detail(n);
  MpfOutcome out;
  out.value = flow.value;
  Solution& sol = out.solution;

  std::vector<std::vector<std::size_t>> incident(n.node_count());
  for (std::size_t i = 0; i < n.edge_count(); ++i) {
    incident[*n.node_index(n.edges()[i].a)].push_back(i);
    incident[*n.node_index(n.edges()[i].b)].push_back(i);
  }
  // Walk out from the smallest node: theta_b = theta_a + flow(a,b) / s.
  std::vector<bool> seen(n.node_count(), false);
  std::vector<Rational> angle(n.node_count());
  std::deque<std::size_t> queue;
  if (n.node_count() > 0) {
    queue.push_back(0);
    seen[0] = true;
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t i : incident[v]) {
      const Edge& e = n.edges()[i];
      const std::size_t a = *n.node_index(e.a);
      const std::size_t b = *n.node_index(e.b);
      const std::size_t w = a == v ? b : a;
      if (seen[w]) continue;
      const Rational delta = flow.edge_flow[i] / e.susceptance();
      angle[w] = a == v ? angle[v] + delta : angle[v] - delta;
      seen[w] = true;
      queue.push_back(w);
    }
  }

  for (std::size_t v = 0; v < n.node_count(); ++v) {
    const Node& node = n.nodes()[v];
    sol.angle[node.id] = angle[v];
    sol.gen[node.id] = node.role == NodeRole::Generator ? flow.supply[v] : Rational{};
    sol.load[node.id] = node.role == NodeRole::Load ? flow.supply[v] : Rational{};
  }
  for (std::size_t i = 0; i < n.edge_count(); ++i) {
    const Edge& e = n.edges()[i];
    sol.susceptance[e.key()] = e.susceptance();
    sol.flow[e.key()] = flow.edge_flow[i];
  }
  return out;
}

}  // namespace ldc
