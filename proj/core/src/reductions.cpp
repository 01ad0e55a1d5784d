#include "ldcflow/reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ldcflow/errors.hpp"
#include "ldcflow/gadgets.hpp"

namespace ldc {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidInstance, what); }

std::string gadget_prefix(std::size_t i) { return "X" + std::to_string(i) + "."; }
std::string set_port(std::size_t i) { return "S" + std::to_string(i); }
std::string element_node(const std::string& symbol) { return "m:" + symbol; }
std::string indexed(const char* base, std::size_t i) { return base + std::to_string(i); }

Rational sum_of(const std::vector<long>& values) {
  Rational total;
  for (long v : values) total += v;
  return total;
}

using GadgetFn = Network (*)(const Rational&, const NodeId&, Polarity, const std::string&);

EncodedInstance exact_cover_glue(const ExactCover3Instance& inst, GadgetFn gadget, const Rational& per_set,
                                 ReductionKind kind) {
  validate(inst);
  Network glue;
  glue.add_node("g", NodeRole::Generator).add_node("l", NodeRole::Load);
  glue.add_edge("g", "l", 1, 3);
  for (const auto& x : inst.universe) {
    glue.add_node(element_node(x));
    glue.add_edge("g", element_node(x), 1, 1);
    glue.add_edge(element_node(x), "l", 1, 2);
  }
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    const std::size_t index = i + 1;
    glue.add_node(set_port(index));
    for (const auto& x : inst.sets[i]) glue.add_edge(set_port(index), element_node(x), 1, 1);
  }
  Network net = glue;
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    net = sum(net, gadget(3, set_port(i + 1), Polarity::Port, gadget_prefix(i + 1)));
  }
  const Rational predicted =
      3 + per_set * static_cast<long>(inst.sets.size()) + static_cast<long>(inst.universe.size());
  return {std::move(net), predicted, kind};
}

EncodedInstance cactus_glue(const SubsetSumInstance& inst, GadgetFn gadget, const Rational& per_unit,
                            ReductionKind kind) {
  validate(inst);
  const Rational w = inst.target;
  Network net;
  net.add_node("g", NodeRole::Generator).add_node("l", NodeRole::Load);
  net.add_edge("g", "l", 1, 2 + w);
  const std::size_t n = inst.values.size();
  for (std::size_t i = 1; i <= n; ++i) net.add_node(indexed("v", i));
  if (n > 0) {
    net.add_edge("g", "v1", 1, 1);
    net.add_edge("v1", "l", 1, w + 1);
  }
  for (std::size_t i = 1; i < n; ++i) net.add_edge(indexed("v", i), indexed("v", i + 1), 1, w);
  for (std::size_t i = 1; i <= n; ++i) {
    net = sum(net, gadget(inst.values[i - 1], indexed("v", i), Polarity::Port, gadget_prefix(i)));
  }
  return {std::move(net), 3 + w + per_unit * sum_of(inst.values), kind};
}

struct TreeShape {
  std::size_t n = 0;  // values are a_2..a_n
  Rational m;
  Rational w;
};

TreeShape tree_shape(const SubsetSumInstance& inst) {
  TreeShape t;
  t.n = inst.values.size() + 1;
  t.m = sum_of(inst.values) - 1;
  t.w = inst.target;
  return t;
}

Rational p_edge_susceptance(long value, std::size_t i) { return Rational(value) / Rational(static_cast<long>(i - 1)); }

void require_optimal(const Rational& value, const Rational& predicted) {
  if (value < predicted) {
    throw Error(ErrorCode::NotOptimal, "value " + value.str() + " is below the predicted " + predicted.str());
  }
}

// Net power a gadget (nodes under `prefix`) pushes into its port.
Rational gadget_output(const Network& n, const Solution& sol, const NodeId& port, const std::string& prefix) {
  Rational total;
  for (const auto& e : n.edges()) {
    const NodeId* other = nullptr;
    if (e.a == port) other = &e.b;
    if (e.b == port) other = &e.a;
    if (!other || other->rfind(prefix, 0) != 0) continue;
    total += directed_flow(sol, *other, port);
  }
  return total;
}

std::vector<long> decode_subset_sum_impl(const Rational& value, const Solution& sol, const SwitchSet* switched,
                                         const SubsetSumInstance& inst, ReductionKind kind) {
  const EncodedInstance enc = encode(kind, inst);
  require_optimal(value, enc.predicted_value);
  std::vector<long> chosen;
  if (kind == ReductionKind::SubsetSumTree) {
    for (std::size_t i = 2; i <= inst.values.size() + 1; ++i) {
      const EdgeKey key = make_key("p", indexed("a", i));
      if (!switched || !switched->removed.contains(key)) chosen.push_back(inst.values[i - 2]);
    }
  } else {
    for (std::size_t i = 1; i <= inst.values.size(); ++i) {
      const Rational out = gadget_output(enc.network, sol, indexed("v", i), gadget_prefix(i));
      if (out == Rational(inst.values[i - 1])) chosen.push_back(inst.values[i - 1]);
    }
  }
  if (sum_of(chosen) != Rational(inst.target)) {
    throw Error(ErrorCode::DecodingFailed, "decoded subset sums to " + sum_of(chosen).str() + ", not " +
                                               std::to_string(inst.target));
  }
  return chosen;
}

std::vector<std::size_t> decode_exact_cover_impl(const Rational& value, const Solution& sol,
                                                 const ExactCover3Instance& inst, ReductionKind kind) {
  const EncodedInstance enc = encode(kind, inst);
  require_optimal(value, enc.predicted_value);
  std::vector<std::size_t> chosen;
  std::map<std::string, int> covered;
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    const bool active = std::all_of(inst.sets[i].begin(), inst.sets[i].end(), [&](const std::string& x) {
      return directed_flow(sol, set_port(i + 1), element_node(x)) == Rational(1);
    });
    if (!active) continue;
    chosen.push_back(i);
    for (const auto& x : inst.sets[i]) ++covered[x];
  }
  for (const auto& x : inst.universe) {
    if (covered[x] != 1) {
      throw Error(ErrorCode::DecodingFailed,
                  "element " + x + " is covered " + std::to_string(covered[x]) + " times by the decoded sets");
    }
  }
  return chosen;
}

}  // namespace

const char* to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::ExactCoverMff: return "exact-cover-mff";
    case ReductionKind::ExactCoverMsf: return "exact-cover-msf";
    case ReductionKind::Hamiltonian: return "hamiltonian";
    case ReductionKind::SubsetSumCactusMsf: return "subset-sum-cactus-msf";
    case ReductionKind::SubsetSumCactusMff: return "subset-sum-cactus-mff";
    case ReductionKind::SubsetSumTree: return "subset-sum-tree";
  }
  return "hamiltonian";
}

ReductionKind parse_reduction_kind(std::string_view text) {
  for (auto k : {ReductionKind::ExactCoverMff, ReductionKind::ExactCoverMsf, ReductionKind::Hamiltonian,
                 ReductionKind::SubsetSumCactusMsf, ReductionKind::SubsetSumCactusMff, ReductionKind::SubsetSumTree}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::Parse, "unknown encoding '" + std::string(text) + "'");
}

bool uses_facts(ReductionKind kind) {
  return kind == ReductionKind::ExactCoverMff || kind == ReductionKind::SubsetSumCactusMff;
}

void validate(const ExactCover3Instance& inst) {
  std::set<std::string> universe;
  for (const auto& x : inst.universe) {
    if (x.empty()) invalid("empty element name");
    if (!universe.insert(x).second) invalid("element '" + x + "' listed twice");
  }
  std::set<std::set<std::string>> seen;
  for (const auto& s : inst.sets) {
    std::set<std::string> members(s.begin(), s.end());
    if (members.size() != 3) invalid("a set repeats an element");
    for (const auto& x : members) {
      if (!universe.contains(x)) invalid("set element '" + x + "' is not in the universe");
    }
    if (!seen.insert(members).second) invalid("set listed twice");
  }
}

void validate(const SubsetSumInstance& inst) {
  std::set<long> seen;
  for (long v : inst.values) {
    if (v <= 0) invalid("values must be positive");
    if (!seen.insert(v).second) invalid("value " + std::to_string(v) + " listed twice");
  }
  if (inst.target <= 0) invalid("target must be positive");
}

void validate(const HamiltonianInstance& inst) {
  std::set<std::string> nodes;
  for (const auto& v : inst.nodes) {
    if (v.empty()) invalid("empty node name");
    if (v.rfind("$v", 0) == 0) invalid("node names starting with '$v' are reserved");
    if (!nodes.insert(v).second) invalid("node '" + v + "' listed twice");
  }
  if (!nodes.contains(inst.from) || !nodes.contains(inst.to)) invalid("path endpoints must be graph nodes");
  if (inst.from == inst.to) invalid("path endpoints must differ");
  std::set<EdgeKey> edges;
  for (const auto& [u, v] : inst.edges) {
    if (!nodes.contains(u) || !nodes.contains(v)) invalid("edge endpoint is not a graph node");
    if (u == v) invalid("self-loop on '" + u + "'");
    if (!edges.insert(make_key(u, v)).second) invalid("edge " + u + "--" + v + " listed twice");
  }
}

EncodedInstance encode_exact_cover_mff(const ExactCover3Instance& inst) {
  return exact_cover_glue(inst, &gfch, Rational(183, 10), ReductionKind::ExactCoverMff);
}

EncodedInstance encode_exact_cover_msf(const ExactCover3Instance& inst) {
  return exact_cover_glue(inst, &gsch, 9, ReductionKind::ExactCoverMsf);
}

EncodedInstance encode_hamiltonian(const HamiltonianInstance& inst) {
  validate(inst);
  const std::size_t n = inst.nodes.size();
  const std::string source = "$v0";
  const std::string sink = "$v" + std::to_string(n + 1);
  Network net;
  net.add_node(source, NodeRole::Generator).add_node(sink, NodeRole::Load);
  for (const auto& v : inst.nodes) net.add_node(v);
  for (const auto& [u, v] : inst.edges) net.add_edge(u, v, 1, 1);
  net.add_edge(source, inst.from, 1, 1);
  net.add_edge(inst.to, sink, 1, 1);
  std::string prev = source;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string chain = "$v" + std::to_string(i) + "'";
    net.add_node(chain);
    net.add_edge(prev, chain, 1, 1);
    prev = chain;
  }
  net.add_edge(prev, sink, 1, 1);
  return {std::move(net), 2, ReductionKind::Hamiltonian};
}

EncodedInstance encode_subset_sum_cactus_msf(const SubsetSumInstance& inst) {
  return cactus_glue(inst, &gsch, 3, ReductionKind::SubsetSumCactusMsf);
}

EncodedInstance encode_subset_sum_cactus_mff(const SubsetSumInstance& inst) {
  return cactus_glue(inst, &gfch, Rational(61, 10), ReductionKind::SubsetSumCactusMff);
}

EncodedInstance encode_subset_sum_tree(const SubsetSumInstance& inst) {
  validate(inst);
  const auto [n, m, w] = tree_shape(inst);
  const std::string top = indexed("g", n + 1);
  const std::string last = indexed("a", n + 1);
  const Rational side_s = Rational(2) / Rational(static_cast<long>(n + 1));

  Network net;
  net.add_node("g", NodeRole::Generator).add_node("g1").add_node(top).add_node("p");
  for (std::size_t i = 1; i <= n + 1; ++i) {
    net.add_node(indexed("a", i));
    net.add_node(indexed("l", i), NodeRole::Load);
  }
  net.add_edge("g", "g1", 2 * m + 2, m + 1);
  net.add_edge("g1", "a1", 2 * m + 2, m + 1);
  net.add_edge("a1", "l1", 1, 1);
  net.add_edge("g", "p", w, w);
  net.add_edge("g", top, side_s, 1);
  net.add_edge(top, last, side_s, 1);
  net.add_edge(last, indexed("l", n + 1), 1, m + 1);
  for (std::size_t i = 2; i <= n; ++i) {
    const long a = inst.values[i - 2];
    net.add_edge("p", indexed("a", i), p_edge_susceptance(a, i), a);
    net.add_edge(indexed("a", i), indexed("l", i), 1, a);
  }
  if (m.sign() > 0) {
    for (std::size_t i = 1; i <= n; ++i) net.add_edge(indexed("a", i), indexed("a", i + 1), m, m);
  }
  return {std::move(net), m + 2 + w, ReductionKind::SubsetSumTree};
}

EncodedInstance encode(ReductionKind kind, const ExactCover3Instance& inst) {
  switch (kind) {
    case ReductionKind::ExactCoverMff: return encode_exact_cover_mff(inst);
    case ReductionKind::ExactCoverMsf: return encode_exact_cover_msf(inst);
    default: break;
  }
  throw Error(ErrorCode::InvalidInstance, std::string(to_string(kind)) + " does not take an exact-cover instance");
}

EncodedInstance encode(ReductionKind kind, const SubsetSumInstance& inst) {
  switch (kind) {
    case ReductionKind::SubsetSumCactusMsf: return encode_subset_sum_cactus_msf(inst);
    case ReductionKind::SubsetSumCactusMff: return encode_subset_sum_cactus_mff(inst);
    case ReductionKind::SubsetSumTree: return encode_subset_sum_tree(inst);
    default: break;
  }
  throw Error(ErrorCode::InvalidInstance, std::string(to_string(kind)) + " does not take a subset-sum instance");
}

std::pair<SwitchSet, Solution> witness_tree(const SubsetSumInstance& inst, const std::vector<long>& chosen) {
  const EncodedInstance enc = encode_subset_sum_tree(inst);
  std::multiset<long> pool(inst.values.begin(), inst.values.end());
  for (long v : chosen) {
    auto it = pool.find(v);
    if (it == pool.end()) throw Error(ErrorCode::NotACertificate, std::to_string(v) + " is not an unused value");
    pool.erase(it);
  }
  if (sum_of(chosen) != Rational(inst.target)) {
    throw Error(ErrorCode::NotACertificate, "subset sums to " + sum_of(chosen).str() + ", not " +
                                                std::to_string(inst.target));
  }
  const std::set<long> in_subset(chosen.begin(), chosen.end());
  const auto [n, m, w] = tree_shape(inst);

  SwitchSet switched;
  std::map<NodeId, Rational> angle;
  angle["g"] = 0;
  angle["g1"] = Rational(1, 2);
  angle[indexed("g", n + 1)] = Rational(static_cast<long>(n + 1), 2);
  angle["p"] = 1;
  for (std::size_t i = 1; i <= n + 1; ++i) angle[indexed("a", i)] = static_cast<long>(i);
  angle["l1"] = 2;
  for (std::size_t i = 2; i <= n; ++i) {
    const long a = inst.values[i - 2];
    const bool used = in_subset.contains(a);
    angle[indexed("l", i)] = used ? Rational(static_cast<long>(i) + a) : Rational(static_cast<long>(i));
    if (!used) switched.removed.insert(make_key("p", indexed("a", i)));
  }
  angle[indexed("l", n + 1)] = Rational(static_cast<long>(n) + 2) + m;

  const Network sub = subnetwork(enc.network, switched);
  Solution sol;
  std::map<NodeId, Rational> net_out;
  for (const auto& e : sub.edges()) {
    const Rational f = e.susceptance() * (angle[e.b] - angle[e.a]);
    sol.susceptance[e.key()] = e.susceptance();
    sol.flow[e.key()] = f;
    net_out[e.a] += f;
    net_out[e.b] -= f;
  }
  for (const auto& node : sub.nodes()) {
    const Rational& out = net_out[node.id];
    sol.angle[node.id] = angle[node.id];
    sol.gen[node.id] = node.role == NodeRole::Generator ? out : Rational{};
    sol.load[node.id] = node.role == NodeRole::Load ? -out : Rational{};
  }
  return {std::move(switched), std::move(sol)};
}

std::vector<long> decode_subset_sum(const MsfOutcome& outcome, const SubsetSumInstance& inst, ReductionKind kind) {
  return decode_subset_sum_impl(outcome.value, outcome.solution, &outcome.switched, inst, kind);
}

std::vector<long> decode_subset_sum(const MffOutcome& outcome, const SubsetSumInstance& inst, ReductionKind kind) {
  return decode_subset_sum_impl(outcome.value, outcome.solution, nullptr, inst, kind);
}

std::vector<std::size_t> decode_exact_cover(const MffOutcome& outcome, const ExactCover3Instance& inst) {
  return decode_exact_cover_impl(outcome.value, outcome.solution, inst, ReductionKind::ExactCoverMff);
}

std::vector<std::size_t> decode_exact_cover(const MsfOutcome& outcome, const ExactCover3Instance& inst) {
  return decode_exact_cover_impl(outcome.value, outcome.solution, inst, ReductionKind::ExactCoverMsf);
}

}  // namespace ldc
