#include "ldcflow/max_flow.hpp"

#include <deque>
#include <limits>

namespace ldc {
namespace {

// Residual graph with arcs stored in pairs; arc i and i^1 are mutual reverses.
// An undirected edge of capacity c becomes a pair whose both arcs carry c.
struct Residual {
  struct Arc {
    std::size_t to;
    Rational cap;
    Rational flow;
  };

  explicit Residual(std::size_t n) : adj(n) {}

  std::size_t add(std::size_t u, std::size_t v, const Rational& cap_uv, const Rational& cap_vu) {
    const std::size_t id = arcs.size();
    arcs.push_back({v, cap_uv, 0});
    arcs.push_back({u, cap_vu, 0});
    adj[u].push_back(id);
    adj[v].push_back(id + 1);
    return id;
  }

  Rational residual(std::size_t arc) const { return arcs[arc].cap - arcs[arc].flow; }

  Rational run(std::size_t s, std::size_t t) {
    Rational total;
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    for (;;) {
      std::vector<std::size_t> via(adj.size(), none);
      std::deque<std::size_t> queue{s};
      std::vector<bool> seen(adj.size(), false);
      seen[s] = true;
      while (!queue.empty() && !seen[t]) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t arc : adj[u]) {
          const std::size_t v = arcs[arc].to;
          if (seen[v] || residual(arc).sign() <= 0) continue;
          seen[v] = true;
          via[v] = arc;
          queue.push_back(v);
        }
      }
      if (!seen[t]) return total;

      Rational push;
      bool first = true;
      for (std::size_t v = t; v != s; v = arcs[via[v] ^ 1].to) {
        const Rational r = residual(via[v]);
        if (first || r < push) push = r;
        first = false;
      }
      for (std::size_t v = t; v != s; v = arcs[via[v] ^ 1].to) {
        arcs[via[v]].flow += push;
        arcs[via[v] ^ 1].flow -= push;
      }
      total += push;
    }
  }

  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> adj;
};

MaxFlowResult solve(const Network& n, const std::vector<bool>* active) {
  const std::size_t nodes = n.node_count();
  const std::size_t source = nodes;
  const std::size_t sink = nodes + 1;
  Residual graph(nodes + 2);

  // Any finite value above the total edge capacity acts as infinity.
  Rational unbounded = 1;
  for (const auto& e : n.edges()) unbounded += e.cap;

  std::vector<std::size_t> edge_arc(n.edge_count(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < n.edge_count(); ++i) {
    if (active && !(*active)[i]) continue;
    const Edge& e = n.edges()[i];
    const auto a = n.node_index(e.a);
    const auto b = n.node_index(e.b);
    if (!a || !b || *a == *b) continue;
    edge_arc[i] = graph.add(*a, *b, e.cap, e.cap);
  }
  std::vector<std::size_t> node_arc(nodes, std::numeric_limits<std::size_t>::max());
  for (std::size_t v = 0; v < nodes; ++v) {
    switch (n.nodes()[v].role) {
      case NodeRole::Generator: node_arc[v] = graph.add(source, v, unbounded, 0); break;
      case NodeRole::Load: node_arc[v] = graph.add(v, sink, unbounded, 0); break;
      case NodeRole::Plain: break;
    }
  }

  MaxFlowResult result;
  result.value = graph.run(source, sink);
  result.edge_flow.assign(n.edge_count(), Rational{});
  for (std::size_t i = 0; i < n.edge_count(); ++i) {
    if (edge_arc[i] != std::numeric_limits<std::size_t>::max()) {
      result.edge_flow[i] = graph.arcs[edge_arc[i]].flow;
    }
  }
  result.supply.assign(nodes, Rational{});
  for (std::size_t v = 0; v < nodes; ++v) {
    if (node_arc[v] != std::numeric_limits<std::size_t>::max()) {
      result.supply[v] = graph.arcs[node_arc[v]].flow;
    }
  }
  return result;
}

}  // namespace

MaxFlowResult max_flow_detail(const Network& n) { return solve(n, nullptr); }

Rational classical_max_flow(const Network& n) { return solve(n, nullptr).value; }

Rational classical_max_flow(const Network& n, const std::vector<bool>& active) {
  return solve(n, &active).value;
}

}  // namespace ldc
