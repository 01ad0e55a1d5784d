#include "ldcflow/classify.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>

namespace ldc {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Endpoints {
  std::size_t a;
  std::size_t b;
};

// Edge endpoints as node indices; edges touching undeclared nodes are skipped.
std::vector<Endpoints> endpoints(const Network& n) {
  std::vector<Endpoints> out;
  out.reserve(n.edge_count());
  for (const auto& e : n.edges()) {
    const auto a = n.node_index(e.a);
    const auto b = n.node_index(e.b);
    out.push_back({a.value_or(kNone), b.value_or(kNone)});
  }
  return out;
}

struct DisjointSet {
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (y < x) std::swap(x, y);
    parent[y] = x;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

std::vector<std::size_t> components(const Network& n, const std::vector<bool>& active) {
  DisjointSet ds(n.node_count());
  const auto ends = endpoints(n);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (!active[i] || ends[i].a == kNone || ends[i].b == kNone) continue;
    ds.unite(ends[i].a, ends[i].b);
  }
  std::vector<std::size_t> label(n.node_count(), kNone);
  std::vector<std::size_t> root_label(n.node_count(), kNone);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n.node_count(); ++v) {
    const std::size_t r = ds.find(v);
    if (root_label[r] == kNone) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

std::vector<std::size_t> components(const Network& n) {
  return components(n, std::vector<bool>(n.edge_count(), true));
}

bool is_connected(const Network& n) {
  const auto label = components(n);
  return std::all_of(label.begin(), label.end(), [](std::size_t c) { return c == 0; });
}

bool is_tree(const Network& n) {
  if (n.node_count() <= 1) return n.edge_count() == 0;
  return n.edge_count() + 1 == n.node_count() && is_connected(n);
}

bool is_cactus(const Network& n) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                      boost::property<boost::edge_index_t, std::size_t>>;
  Graph g(n.node_count());
  const auto ends = endpoints(n);
  std::size_t count = 0;
  for (const auto& e : ends) {
    if (e.a == kNone || e.b == kNone || e.a == e.b) return false;
    boost::add_edge(e.a, e.b, count++, g);
  }
  if (count == 0) return true;

  auto index = boost::get(boost::edge_index, g);
  std::vector<std::size_t> block_of(count);
  const std::size_t blocks = boost::biconnected_components(
      g, boost::make_iterator_property_map(block_of.begin(), index));

  // A biconnected block is a single edge or a simple cycle iff it has as many
  // vertices as edges (cycle) or exactly one edge.
  std::vector<std::size_t> edges_in(blocks, 0);
  std::vector<std::vector<std::size_t>> verts(blocks);
  std::size_t i = 0;
  for (const auto& e : ends) {
    const std::size_t b = block_of[i++];
    ++edges_in[b];
    verts[b].push_back(e.a);
    verts[b].push_back(e.b);
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    std::sort(verts[b].begin(), verts[b].end());
    const auto distinct = static_cast<std::size_t>(
        std::unique(verts[b].begin(), verts[b].end()) - verts[b].begin());
    if (edges_in[b] != 1 && edges_in[b] != distinct) return false;
  }
  return true;
}

std::size_t max_degree(const Network& n) {
  std::vector<std::size_t> degree(n.node_count(), 0);
  for (const auto& e : endpoints(n)) {
    if (e.a != kNone) ++degree[e.a];
    if (e.b != kNone) ++degree[e.b];
  }
  return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

std::vector<bool> bridges(const Network& n, const std::vector<bool>& active) {
  const std::size_t nodes = n.node_count();
  const auto ends = endpoints(n);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nodes);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (!active[i] || ends[i].a == kNone || ends[i].b == kNone || ends[i].a == ends[i].b) continue;
    adj[ends[i].a].emplace_back(ends[i].b, i);
    adj[ends[i].b].emplace_back(ends[i].a, i);
  }

  // Iterative low-link DFS.
  std::vector<bool> out(ends.size(), false);
  std::vector<std::size_t> disc(nodes, kNone), low(nodes, 0);
  std::size_t clock = 0;
  struct Frame {
    std::size_t v;
    std::size_t via;
    std::size_t next;
  };
  for (std::size_t root = 0; root < nodes; ++root) {
    if (disc[root] != kNone) continue;
    std::vector<Frame> stack{{root, kNone, 0}};
    disc[root] = low[root] = clock++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        const auto [w, edge] = adj[f.v][f.next++];
        if (edge == f.via) continue;
        if (disc[w] == kNone) {
          disc[w] = low[w] = clock++;
          stack.push_back({w, edge, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        const std::size_t parent = stack.back().v;
        low[parent] = std::min(low[parent], low[done.v]);
        if (low[done.v] > disc[parent]) out[done.via] = true;
      }
    }
  }
  return out;
}

}  // namespace ldc
