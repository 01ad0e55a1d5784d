#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "ldcflow/classify.hpp"
#include "ldcflow/errors.hpp"
#include "ldcflow/gadgets.hpp"
#include "ldcflow/json_io.hpp"
#include "ldcflow/mff.hpp"
#include "ldcflow/mpf.hpp"
#include "ldcflow/msf.hpp"
#include "ldcflow/reductions.hpp"

namespace ldc::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_value(const Rational& r) {
  if (r.is_integer()) return r.str();
  return r.str() + " (" + r.decimal() + ")";
}

std::string join_keys(const std::set<EdgeKey>& keys) {
  if (keys.empty()) return "none";
  std::string s;
  for (const auto& k : keys) s += (s.empty() ? "" : ", ") + to_string(k);
  return s;
}

Rational flag_rational(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw UsageError(std::string("--") + flag + " expects a rational such as 3, 31/10 or 6.1, got '" + text + "'");
  }
}

// Accepts a bare network or an encode document wrapping one.
Network load_network(const std::string& path) {
  const Json doc = read_json_file(path);
  if (doc.is_object() && !doc.contains("nodes") && doc.contains("network")) return network_from_json(doc.at("network"));
  return network_from_json(doc);
}

void emit(std::ostream& out, const std::optional<std::string>& path, const Json& doc) {
  if (path) {
    write_text_file(*path, doc.dump(2) + "\n");
  } else {
    out << doc.dump(2) << '\n';
  }
}

struct SolveFlags {
  std::string network;
  std::optional<std::string> out;
  std::optional<std::string> decide;
  bool json = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("network", f.network, "network JSON file")->required();
  cmd->add_option("--out", f.out, "write the optimal solution as JSON");
  cmd->add_option("--decide", f.decide, "answer whether the optimum reaches this value");
  cmd->add_flag("--json", f.json, "machine-readable output");
}

Json value_fields(const Rational& v) { return {{"value", v.str()}, {"decimal", v.decimal()}}; }

int solve_mpf_cmd(const SolveFlags& f, const std::string& method, std::ostream& out) {
  const Network n = load_network(f.network);
  const MpfOutcome r = method == "tree" ? solve_tree(n) : solve_mpf(n);
  if (f.out) write_text_file(*f.out, solution_to_json(r.solution).dump(2) + "\n");
  std::optional<bool> decision;
  if (f.decide) decision = r.value >= flag_rational(*f.decide, "decide");
  if (f.json) {
    Json j = value_fields(r.value);
    j["problem"] = "mpf";
    if (decision) j["decision"] = *decision ? "YES" : "NO";
    if (!f.out) j["solution"] = solution_to_json(r.solution);
    out << j.dump(2) << '\n';
  } else if (decision) {
    out << (*decision ? "YES" : "NO") << '\n';
  } else {
    out << format_value(r.value) << '\n';
  }
  return kOk;
}

int solve_msf_cmd(const SolveFlags& f, const std::string& method, std::size_t edge_limit, std::ostream& out) {
  const Network n = load_network(f.network);
  const bool exhaustive = method == "exhaustive" || (method == "auto" && n.edge_count() <= edge_limit);
  BnbStats stats;
  const MsfOutcome r = exhaustive ? solve_msf_exhaustive(n, edge_limit) : solve_msf_bnb(n, &stats);
  if (f.out) write_text_file(*f.out, solution_to_json(r.solution, &r.switched).dump(2) + "\n");
  std::optional<bool> decision;
  if (f.decide) decision = r.value >= flag_rational(*f.decide, "decide");
  if (f.json) {
    Json j = value_fields(r.value);
    j["problem"] = "msf";
    j["method"] = exhaustive ? "exhaustive" : "bnb";
    Json switched = Json::array();
    for (const auto& k : r.switched.removed) switched.push_back({{"a", k.first}, {"b", k.second}});
    j["switched"] = std::move(switched);
    if (!exhaustive) j["search"] = {{"nodes", stats.nodes}, {"lp_solves", stats.lp_solves}, {"pruned", stats.pruned}};
    if (decision) j["decision"] = *decision ? "YES" : "NO";
    if (!f.out) j["solution"] = solution_to_json(r.solution, &r.switched);
    out << j.dump(2) << '\n';
  } else if (decision) {
    out << (*decision ? "YES" : "NO") << '\n';
  } else {
    out << format_value(r.value) << '\n' << "switched: " << join_keys(r.switched.removed) << '\n';
  }
  return kOk;
}

int solve_mff_cmd(const SolveFlags& f, std::size_t grid, std::size_t facts_limit, std::ostream& out) {
  const Network n = load_network(f.network);
  const MffOutcome r = grid > 1 ? solve_mff_grid(n, grid, facts_limit) : solve_mff_endpoints(n, facts_limit);
  if (f.out) write_text_file(*f.out, solution_to_json(r.solution).dump(2) + "\n");
  std::optional<MffDecision> decision;
  if (f.decide) decision = r.value >= flag_rational(*f.decide, "decide") ? MffDecision::Yes : MffDecision::Unknown;
  if (f.json) {
    Json j = value_fields(r.value);
    j["problem"] = "mff";
    j["certified"] = r.certified;
    j["grid"] = std::max<std::size_t>(grid, 1);
    Json assignment = Json::array();
    for (const auto& [k, s] : r.assignment.values) {
      assignment.push_back({{"a", k.first}, {"b", k.second}, {"susceptance", s.str()}});
    }
    j["assignment"] = std::move(assignment);
    if (decision) j["decision"] = to_string(*decision);
    if (!f.out) j["solution"] = solution_to_json(r.solution);
    out << j.dump(2) << '\n';
  } else if (decision) {
    out << to_string(*decision) << '\n';
  } else {
    out << format_value(r.value) << '\n';
    std::string assigned;
    for (const auto& [k, s] : r.assignment.values) {
      assigned += (assigned.empty() ? "" : ", ") + to_string(k) + "=" + s.str();
    }
    out << "assignment: " << (assigned.empty() ? "none" : assigned) << '\n';
    out << "certified: " << (r.certified ? "yes" : "no (lower bound from candidate search)") << '\n';
  }
  return kOk;
}

int encode_cmd(const std::string& kind_text, const std::string& path, const std::optional<std::string>& out_path,
               std::ostream& out) {
  const ReductionKind kind = parse_reduction_kind(kind_text);
  const Json doc = read_json_file(path);
  EncodedInstance enc;
  switch (kind) {
    case ReductionKind::Hamiltonian: enc = encode_hamiltonian(hamiltonian_from_json(doc)); break;
    case ReductionKind::ExactCoverMff:
    case ReductionKind::ExactCoverMsf: enc = encode(kind, exact_cover_from_json(doc)); break;
    default: enc = encode(kind, subset_sum_from_json(doc)); break;
  }
  emit(out, out_path,
       {{"kind", to_string(kind)},
        {"predicted_value", enc.predicted_value.str()},
        {"network", network_to_json(enc.network)}});
  return kOk;
}

int decode_cmd(const std::string& kind_text, const std::string& instance_path, const std::string& solution_path,
               bool json, std::ostream& out) {
  const ReductionKind kind = parse_reduction_kind(kind_text);
  const Json instance = read_json_file(instance_path);
  SolutionDocument doc = solution_from_json(read_json_file(solution_path));
  const Rational value = total_generation(doc.solution);

  auto outcome_msf = [&] {
    return MsfOutcome{value, doc.switched.value_or(SwitchSet{}), doc.solution};
  };
  auto outcome_mff = [&] { return MffOutcome{value, {}, doc.solution, false}; };

  if (kind == ReductionKind::ExactCoverMff || kind == ReductionKind::ExactCoverMsf) {
    const auto inst = exact_cover_from_json(instance);
    const auto chosen = uses_facts(kind) ? decode_exact_cover(outcome_mff(), inst)
                                         : decode_exact_cover(outcome_msf(), inst);
    Json sets = Json::array();
    for (std::size_t i : chosen) sets.push_back(inst.sets[i]);
    if (json) {
      out << Json{{"kind", to_string(kind)}, {"cover", sets}}.dump(2) << '\n';
    } else {
      std::string text;
      for (std::size_t i : chosen) {
        text += (text.empty() ? "" : ", ") + std::string("{") + inst.sets[i][0] + "," + inst.sets[i][1] + "," +
                inst.sets[i][2] + "}";
      }
      out << "cover: " << (text.empty() ? "none" : text) << '\n';
    }
    return kOk;
  }
  if (kind == ReductionKind::Hamiltonian) {
    throw Error(ErrorCode::InvalidInstance, "the hamiltonian encoding has no certificate decoder");
  }
  const auto inst = subset_sum_from_json(instance);
  const auto chosen = uses_facts(kind) ? decode_subset_sum(outcome_mff(), inst, kind)
                                       : decode_subset_sum(outcome_msf(), inst, kind);
  if (json) {
    out << Json{{"kind", to_string(kind)}, {"subset", chosen}}.dump(2) << '\n';
  } else {
    std::string text;
    for (long v : chosen) text += (text.empty() ? "" : ", ") + std::to_string(v);
    out << "subset: " << text << '\n';
  }
  return kOk;
}

Polarity parse_polarity(const std::string& s) {
  if (s == "minus") return Polarity::Minus;
  if (s == "plus") return Polarity::Plus;
  return Polarity::Port;
}

int verify_cmd(const std::string& net_path, const std::string& sol_path, bool json, std::ostream& out) {
  const Network n = load_network(net_path);
  const ValidationReport structure = validate_network(n);
  const SolutionDocument doc = solution_from_json(read_json_file(sol_path));
  ValidationReport report = structure;
  if (structure.ok()) {
    report = validate_solution(doc.switched ? subnetwork(n, *doc.switched) : n, doc.solution);
  }
  if (json) {
    Json violations = Json::array();
    for (const auto& v : report.violations) {
      Json loc;
      if (const auto* node = std::get_if<NodeId>(&v.location)) {
        loc = {{"node", *node}};
      } else {
        const auto& key = std::get<EdgeKey>(v.location);
        loc = {{"a", key.first}, {"b", key.second}};
      }
      violations.push_back({{"kind", to_string(v.kind)}, {"location", loc}, {"detail", v.detail}});
    }
    Json j{{"ok", report.ok()}, {"violations", std::move(violations)}};
    if (report.ok()) j["total_generation"] = total_generation(doc.solution).str();
    out << j.dump(2) << '\n';
  } else if (report.ok()) {
    out << "OK\n";
  } else {
    out << "INVALID\n" << report.summary();
  }
  return report.ok() ? kOk : kInvalid;
}

int classify_cmd(const std::string& path, std::ostream& out) {
  const Network n = load_network(path);
  require_valid(n);
  out << Json{{"tree", is_tree(n)}, {"cactus", is_cactus(n)}, {"max_degree", max_degree(n)},
              {"connected", is_connected(n)}}
             .dump(2)
      << '\n';
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::Io: return kInput;
    default: return kPrecondition;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact potential, switching and FACTS flow for linear DC networks", "ldcflow"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "optimal flow of a network")->require_subcommand(1);
  SolveFlags mpf_flags, msf_flags, mff_flags;
  std::string mpf_method = "lp";
  auto* mpf = solve->add_subcommand("mpf", "maximum potential flow");
  add_solve_flags(mpf, mpf_flags);
  mpf->add_option("--method", mpf_method, "lp, or tree for the max-flow path on trees")
      ->check(CLI::IsMember({"lp", "tree"}));

  std::string msf_method = "auto";
  std::size_t edge_limit = kDefaultExhaustiveEdgeLimit;
  auto* msf = solve->add_subcommand("msf", "maximum switching flow");
  add_solve_flags(msf, msf_flags);
  msf->add_option("--method", msf_method, "exhaustive, bnb, or auto (exhaustive within the edge limit)")
      ->check(CLI::IsMember({"auto", "exhaustive", "bnb"}));
  msf->add_option("--edge-limit", edge_limit, "largest edge count for exhaustive search")->capture_default_str();

  std::size_t grid = 0;
  std::size_t facts_limit = kDefaultFactsLimit;
  auto* mff = solve->add_subcommand("mff", "maximum FACTS flow (candidate search)");
  add_solve_flags(mff, mff_flags);
  mff->add_option("--grid", grid, "evaluate k+1 evenly spaced susceptances per FACTS edge")
      ->check(CLI::PositiveNumber);
  mff->add_option("--facts-limit", facts_limit, "largest FACTS edge count")->capture_default_str();

  std::string encode_kind, encode_path;
  std::optional<std::string> encode_out;
  auto* enc = app.add_subcommand("encode", "network for a combinatorial instance");
  enc->add_option("kind", encode_kind, "encoding")
      ->required()
      ->check(CLI::IsMember({"exact-cover-mff", "exact-cover-msf", "hamiltonian", "subset-sum-cactus-msf",
                             "subset-sum-cactus-mff", "subset-sum-tree"}));
  enc->add_option("instance", encode_path, "instance JSON file")->required();
  enc->add_option("--out", encode_out, "write to a file instead of stdout");

  std::string decode_kind, decode_instance, decode_solution;
  bool decode_json = false;
  auto* dec = app.add_subcommand("decode", "certificate from an optimal solution of an encoding");
  dec->add_option("kind", decode_kind, "encoding")
      ->required()
      ->check(CLI::IsMember({"exact-cover-mff", "exact-cover-msf", "subset-sum-cactus-msf", "subset-sum-cactus-mff",
                             "subset-sum-tree"}));
  dec->add_option("instance", decode_instance, "instance JSON file")->required();
  dec->add_option("solution", decode_solution, "solution JSON file")->required();
  dec->add_flag("--json", decode_json, "machine-readable output");

  std::string gadget_type, gadget_x, gadget_port = "v", gadget_polarity = "minus", gadget_prefix;
  std::optional<std::string> gadget_out;
  auto* gad = app.add_subcommand("gadget", "generator choice gadget network");
  gad->add_option("type", gadget_type, "gsch or gfch")->required()->check(CLI::IsMember({"gsch", "gfch"}));
  gad->add_option("--x", gadget_x, "gadget size")->required();
  gad->add_option("--port", gadget_port, "port node name")->capture_default_str();
  gad->add_option("--polarity", gadget_polarity, "minus (port is a load), plus (generator) or port (plain)")
      ->check(CLI::IsMember({"minus", "plus", "port"}))
      ->capture_default_str();
  gad->add_option("--prefix", gadget_prefix, "prefix for internal node names");
  gad->add_option("--out", gadget_out, "write to a file instead of stdout");

  std::string verify_net, verify_sol;
  bool verify_json = false;
  auto* ver = app.add_subcommand("verify", "check a solution against both power laws and all bounds");
  ver->add_option("network", verify_net, "network JSON file")->required();
  ver->add_option("solution", verify_sol, "solution JSON file")->required();
  ver->add_flag("--json", verify_json, "machine-readable output");

  std::string classify_net;
  auto* cls = app.add_subcommand("classify", "graph class of a network");
  cls->add_option("network", classify_net, "network JSON file")->required();

  std::string export_format, export_net;
  std::optional<std::string> export_out;
  auto* exp = app.add_subcommand("export", "LP text: milp for switching, lp for potential flow");
  exp->add_option("format", export_format, "milp or lp")->required()->check(CLI::IsMember({"milp", "lp"}));
  exp->add_option("network", export_net, "network JSON file")->required();
  exp->add_option("--out", export_out, "write to a file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (mpf->parsed()) return solve_mpf_cmd(mpf_flags, mpf_method, out);
    if (msf->parsed()) return solve_msf_cmd(msf_flags, msf_method, edge_limit, out);
    if (mff->parsed()) return solve_mff_cmd(mff_flags, grid, facts_limit, out);
    if (enc->parsed()) return encode_cmd(encode_kind, encode_path, encode_out, out);
    if (dec->parsed()) return decode_cmd(decode_kind, decode_instance, decode_solution, decode_json, out);
    if (gad->parsed()) {
      const Rational x = flag_rational(gadget_x, "x");
      const Polarity p = parse_polarity(gadget_polarity);
      const Network n = gadget_type == "gsch" ? gsch(x, gadget_port, p, gadget_prefix)
                                              : gfch(x, gadget_port, p, gadget_prefix);
      emit(out, gadget_out, network_to_json(n));
      return kOk;
    }
    if (ver->parsed()) return verify_cmd(verify_net, verify_sol, verify_json, out);
    if (cls->parsed()) return classify_cmd(classify_net, out);
    if (exp->parsed()) {
      const Network n = load_network(export_net);
      const std::string text = export_format == "milp" ? export_milp(n) : to_lp_text(formulate_mpf(n));
      if (export_out) {
        write_text_file(*export_out, text);
      } else {
        out << text;
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace ldc::cli
