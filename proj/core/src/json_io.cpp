#include "ldcflow/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ldcflow/errors.hpp"

namespace ldc {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) bad(std::string("field '") + key + "' must be an array");
  return a;
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::string string_field(const Json& j, const char* key) { return string_of(field(j, key), key); }

long integer_of(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long>();
}

NodeRole parse_role(const std::string& s) {
  if (s == "generator") return NodeRole::Generator;
  if (s == "load") return NodeRole::Load;
  if (s == "plain") return NodeRole::Plain;
  bad("unknown node role '" + s + "'");
}

EdgeKey edge_key_of(const Json& j) { return make_key(string_field(j, "a"), string_field(j, "b")); }

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("rational must be a string or an integer, got " + j.dump());
}

Json rational_to_json(const Rational& r) { return r.str(); }

Network network_from_json(const Json& j) {
  Network n;
  for (const auto& node : array_field(j, "nodes")) {
    n.add_node(string_field(node, "id"), parse_role(string_field(node, "role")));
  }
  for (const auto& e : array_field(j, "edges")) {
    n.add_edge(string_field(e, "a"), string_field(e, "b"), rational_from_json(field(e, "s_min")),
               rational_from_json(field(e, "s_max")), rational_from_json(field(e, "cap")));
  }
  return n;
}

Json network_to_json(const Network& n) {
  Json nodes = Json::array();
  for (const auto& node : n.nodes()) nodes.push_back({{"id", node.id}, {"role", to_string(node.role)}});
  Json edges = Json::array();
  for (const auto& e : n.edges()) {
    edges.push_back({{"a", e.a},
                     {"b", e.b},
                     {"s_min", rational_to_json(e.s_min)},
                     {"s_max", rational_to_json(e.s_max)},
                     {"cap", rational_to_json(e.cap)}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

SolutionDocument solution_from_json(const Json& j) {
  SolutionDocument doc;
  Solution& sol = doc.solution;
  for (const auto& node : array_field(j, "nodes")) {
    const std::string id = string_field(node, "id");
    sol.angle[id] = rational_from_json(field(node, "angle"));
    sol.gen[id] = rational_from_json(field(node, "gen"));
    sol.load[id] = rational_from_json(field(node, "load"));
  }
  for (const auto& e : array_field(j, "edges")) {
    const std::string a = string_field(e, "a");
    const std::string b = string_field(e, "b");
    const EdgeKey key = make_key(a, b);
    const Rational flow = rational_from_json(field(e, "flow"));
    sol.susceptance[key] = rational_from_json(field(e, "susceptance"));
    sol.flow[key] = key.first == a ? flow : -flow;
  }
  if (j.contains("switched")) {
    doc.switched.emplace();
    for (const auto& e : array_field(j, "switched")) doc.switched->removed.insert(edge_key_of(e));
  }
  return doc;
}

Json solution_to_json(const Solution& sol, const SwitchSet* switched) {
  Json nodes = Json::array();
  for (const auto& [id, angle] : sol.angle) {
    auto value = [&](const std::map<NodeId, Rational>& m) {
      auto it = m.find(id);
      return rational_to_json(it == m.end() ? Rational{} : it->second);
    };
    nodes.push_back({{"id", id}, {"angle", rational_to_json(angle)}, {"gen", value(sol.gen)}, {"load", value(sol.load)}});
  }
  Json edges = Json::array();
  for (const auto& [key, flow] : sol.flow) {
    auto it = sol.susceptance.find(key);
    edges.push_back({{"a", key.first},
                     {"b", key.second},
                     {"susceptance", rational_to_json(it == sol.susceptance.end() ? Rational{} : it->second)},
                     {"flow", rational_to_json(flow)}});
  }
  Json out{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  if (switched) {
    Json removed = Json::array();
    for (const auto& key : switched->removed) removed.push_back({{"a", key.first}, {"b", key.second}});
    out["switched"] = std::move(removed);
  }
  return out;
}

ExactCover3Instance exact_cover_from_json(const Json& j) {
  ExactCover3Instance inst;
  for (const auto& x : array_field(j, "M")) inst.universe.push_back(string_of(x, "element"));
  for (const auto& s : array_field(j, "S")) {
    if (!s.is_array() || s.size() != 3) bad("every set in 'S' must list exactly three elements");
    inst.sets.push_back({string_of(s[0], "element"), string_of(s[1], "element"), string_of(s[2], "element")});
  }
  return inst;
}

SubsetSumInstance subset_sum_from_json(const Json& j) {
  SubsetSumInstance inst;
  for (const auto& x : array_field(j, "M")) inst.values.push_back(integer_of(x, "value"));
  inst.target = integer_of(field(j, "w"), "w");
  return inst;
}

HamiltonianInstance hamiltonian_from_json(const Json& j) {
  HamiltonianInstance inst;
  for (const auto& v : array_field(j, "nodes")) inst.nodes.push_back(string_of(v, "node"));
  for (const auto& e : array_field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) bad("every edge must be a pair of node names");
    inst.edges.emplace_back(string_of(e[0], "node"), string_of(e[1], "node"));
  }
  inst.from = string_field(j, "a");
  inst.to = string_field(j, "b");
  return inst;
}

Json instance_to_json(const ExactCover3Instance& inst) {
  Json sets = Json::array();
  for (const auto& s : inst.sets) sets.push_back({s[0], s[1], s[2]});
  return {{"M", inst.universe}, {"S", std::move(sets)}};
}

Json instance_to_json(const SubsetSumInstance& inst) { return {{"M", inst.values}, {"w", inst.target}}; }

Json instance_to_json(const HamiltonianInstance& inst) {
  Json edges = Json::array();
  for (const auto& [u, v] : inst.edges) edges.push_back({u, v});
  return {{"nodes", inst.nodes}, {"edges", std::move(edges)}, {"a", inst.from}, {"b", inst.to}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

}  // namespace ldc
