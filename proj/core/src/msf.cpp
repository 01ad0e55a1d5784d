#include "ldcflow/msf.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <sstream>

#include "ldcflow/errors.hpp"
#include "ldcflow/max_flow.hpp"
#include "ldcflow/parallel.hpp"

namespace ldc {
namespace {

void require_switchable(const Network& n) {
  require_valid(n);
  if (!n.is_ldc()) {
    throw Error(ErrorCode::NotFixedSusceptance, "switching needs fixed susceptances on every edge");
  }
}

SwitchSet to_switch_set(const Network& n, const std::vector<bool>& removed) {
  SwitchSet s;
  for (std::size_t i = 0; i < removed.size(); ++i) {
    if (removed[i]) s.removed.insert(n.edges()[i].key());
  }
  return s;
}

MsfOutcome make_outcome(const Network& n, const std::vector<bool>& removed, const Rational& expected) {
  MsfOutcome out;
  out.switched = to_switch_set(n, removed);
  MpfOutcome mpf = solve_mpf(subnetwork(n, out.switched));
  if (mpf.value != expected) throw std::logic_error("switch-set value changed on re-solve");
  out.value = std::move(mpf.value);
  out.solution = std::move(mpf.solution);
  return out;
}

std::vector<bool> mask_to_removed(std::uint64_t mask, std::size_t edges) {
  std::vector<bool> removed(edges);
  for (std::size_t i = 0; i < edges; ++i) removed[i] = (mask >> i) & 1u;
  return removed;
}

// Switch-set order on bit masks (bit i = edge i removed).
bool switch_less(std::uint64_t a, std::uint64_t b) {
  while (a != 0 && b != 0) {
    const int ea = std::countr_zero(a);
    const int eb = std::countr_zero(b);
    if (ea != eb) return ea < eb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

Rational subset_value(const Network& n, const std::vector<bool>& removed) {
  std::vector<bool> active(removed.size());
  std::vector<EdgeMode> modes(removed.size());
  for (std::size_t i = 0; i < removed.size(); ++i) {
    active[i] = !removed[i];
    modes[i] = removed[i] ? EdgeMode::Removed : EdgeMode::Kept;
  }
  if (classical_max_flow(n, active).is_zero()) return 0;
  return flow_model_value(n, modes);
}

struct Candidate {
  Rational value;
  std::vector<std::uint64_t> masks;  // masks attaining value, in switch-set order
};

Candidate enumerate(const Network& n, std::size_t edge_limit, bool keep_all_ties) {
  require_switchable(n);
  const std::size_t edges = n.edge_count();
  if (edges > edge_limit || edges >= 63) {
    throw Error(ErrorCode::TooLarge, std::to_string(edges) + " edges exceed the exhaustive limit of " +
                                         std::to_string(edge_limit));
  }
  const std::uint64_t total = std::uint64_t{1} << edges;

  // Each candidate keeps its masks sorted in switch-set order; ties merge.
  auto absorb = [keep_all_ties](std::optional<Candidate>& best, Candidate next) {
    if (!best || next.value > best->value) {
      best = std::move(next);
    } else if (next.value == best->value) {
      if (keep_all_ties) {
        best->masks.insert(best->masks.end(), next.masks.begin(), next.masks.end());
        std::sort(best->masks.begin(), best->masks.end(), switch_less);
      } else if (switch_less(next.masks.front(), best->masks.front())) {
        best->masks = std::move(next.masks);
      }
    }
  };

  std::vector<std::optional<Candidate>> partial(worker_count() + 1);
  const std::size_t chunks = parallel_chunks(total, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::optional<Candidate> best;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      absorb(best, Candidate{subset_value(n, mask_to_removed(mask, edges)), {mask}});
    }
    partial[chunk] = std::move(best);
  });

  std::optional<Candidate> best;
  for (std::size_t c = 0; c < chunks; ++c) {
    if (partial[c]) absorb(best, std::move(*partial[c]));
  }
  return std::move(*best);
}

class BranchAndBound {
 public:
  BranchAndBound(const Network& n, BnbStats& stats)
      : net_(n), modes_(n.edge_count(), EdgeMode::Relaxed), stats_(stats) {}

  void run() { visit(0, std::nullopt); }

  const Rational& best_value() const { return *best_; }
  const std::vector<bool>& best_removed() const { return best_removed_; }

 private:
  bool beaten_by_incumbent(const Rational& bound) const { return best_ && bound <= *best_; }

  std::vector<bool> active() const {
    std::vector<bool> a(modes_.size());
    for (std::size_t i = 0; i < modes_.size(); ++i) a[i] = modes_[i] != EdgeMode::Removed;
    return a;
  }

  Rational model_value(const std::vector<EdgeMode>& modes) {
    ++stats_.lp_solves;
    return flow_model_value(net_, modes);
  }

  void record(const Rational& value) {
    if (best_ && value <= *best_) return;
    best_ = value;
    best_removed_.assign(modes_.size(), false);
    for (std::size_t i = 0; i < modes_.size(); ++i) best_removed_[i] = modes_[i] == EdgeMode::Removed;
  }

  // Leaves are met in switch-set order: the node's own removal set first
  // (every undecided edge kept), then the subtree removing edge k, then the
  // subtree keeping it. `keep_all` carries the value of that first leaf.
  void visit(std::size_t k, std::optional<Rational> keep_all) {
    ++stats_.nodes;
    const Rational bound = classical_max_flow(net_, active());
    if (beaten_by_incumbent(bound)) {
      ++stats_.pruned;
      return;
    }
    if (!keep_all) {
      if (bound.is_zero()) {
        keep_all = Rational{};
      } else {
        std::vector<EdgeMode> all_kept = modes_;
        for (auto& m : all_kept) {
          if (m == EdgeMode::Relaxed) m = EdgeMode::Kept;
        }
        keep_all = model_value(all_kept);
      }
    }
    record(*keep_all);
    if (k == modes_.size() || *keep_all == bound) return;

    const Rational relaxed = model_value(modes_);
    if (beaten_by_incumbent(relaxed)) {
      ++stats_.pruned;
      return;
    }
    modes_[k] = EdgeMode::Removed;
    visit(k + 1, std::nullopt);
    modes_[k] = EdgeMode::Kept;
    visit(k + 1, keep_all);
    modes_[k] = EdgeMode::Relaxed;
  }

  const Network& net_;
  std::vector<EdgeMode> modes_;
  BnbStats& stats_;
  std::optional<Rational> best_;
  std::vector<bool> best_removed_;
};

}  // namespace

MsfOutcome solve_msf_exhaustive(const Network& n, std::size_t edge_limit) {
  const Candidate best = enumerate(n, edge_limit, false);
  return make_outcome(n, mask_to_removed(best.masks.front(), n.edge_count()), best.value);
}

std::vector<MsfOutcome> msf_optima(const Network& n, std::size_t edge_limit) {
  const Candidate best = enumerate(n, edge_limit, true);
  std::vector<MsfOutcome> out;
  for (std::uint64_t mask : best.masks) {
    out.push_back(make_outcome(n, mask_to_removed(mask, n.edge_count()), best.value));
  }
  return out;
}

MsfOutcome solve_msf_bnb(const Network& n, BnbStats* stats) {
  require_switchable(n);
  BnbStats local;
  BranchAndBound search(n, stats ? *stats : local);
  search.run();
  return make_outcome(n, search.best_removed(), search.best_value());
}

bool decide_msf(const Network& n, const Rational& x) { return solve_msf_bnb(n).value >= x; }

MsfMilp build_msf_milp(const Network& n) {
  require_switchable(n);
  MsfMilp m;
  const auto& nodes = n.nodes();
  const auto& edges = n.edges();

  for (const auto& e : edges) m.angle_spread += e.cap / e.susceptance();

  // Angles stay unpinned: some optimum then has every angle in [0, Theta].
  std::vector<VarId> angle;
  for (const auto& node : nodes) {
    angle.push_back(m.lp.add_variable("theta(" + node.id + ")", std::nullopt, std::nullopt));
  }
  std::vector<std::optional<VarId>> gen(nodes.size()), load(nodes.size());
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].role == NodeRole::Generator) gen[v] = m.lp.add_variable("gen(" + nodes[v].id + ")");
    if (nodes[v].role == NodeRole::Load) load[v] = m.lp.add_variable("load(" + nodes[v].id + ")");
  }

  std::vector<LinearExpr> outflow(nodes.size());
  for (const auto& e : edges) {
    const std::string tag = e.a + "," + e.b;
    const VarId f = m.lp.add_variable("f(" + tag + ")", -e.cap, e.cap);
    const VarId z = m.lp.add_variable("z(" + tag + ")", Rational{}, Rational{1});
    m.flow.push_back(f);
    m.binaries.push_back(z);

    const std::size_t a = *n.node_index(e.a);
    const std::size_t b = *n.node_index(e.b);
    outflow[a].push_back({f, 1});
    outflow[b].push_back({f, -1});

    const Rational& s = e.susceptance();
    const Rational big_m = s * m.angle_spread;
    m.lp.add_constraint({{f, 1}, {z, -e.cap}}, Relation::LessEq, 0, "on+(" + tag + ")");
    m.lp.add_constraint({{f, -1}, {z, -e.cap}}, Relation::LessEq, 0, "on-(" + tag + ")");
    m.lp.add_constraint({{f, 1}, {angle[b], -s}, {angle[a], s}, {z, big_m}}, Relation::LessEq, big_m,
                        "law+(" + tag + ")");
    m.lp.add_constraint({{f, -1}, {angle[b], s}, {angle[a], -s}, {z, big_m}}, Relation::LessEq, big_m,
                        "law-(" + tag + ")");
  }

  LinearExpr objective;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    LinearExpr row = std::move(outflow[v]);
    if (gen[v]) {
      row.push_back({*gen[v], -1});
      objective.push_back({*gen[v], 1});
    }
    if (load[v]) row.push_back({*load[v], 1});
    if (row.empty()) continue;
    m.lp.add_constraint(std::move(row), Relation::Equal, 0, "kirchhoff(" + nodes[v].id + ")");
  }
  m.lp.set_objective(std::move(objective));
  return m;
}

std::string export_milp(const Network& n) {
  const MsfMilp m = build_msf_milp(n);
  std::ostringstream header;
  header << "Maximum switching flow, big-M formulation.\n"
         << "z(e) = 1 keeps edge e in service; f(e) is its flow, positive from the first node to the second.\n"
         << "|f(e)| <= cap(e) z(e);  |f(e) - s(e) (theta(b) - theta(a))| <= M(e) (1 - z(e)).\n"
         << "M(e) = s(e) * Theta, Theta = sum of cap/s over all edges = " << m.angle_spread.str() << ".\n"
         << "Angles are unpinned; some optimum keeps every angle within [0, Theta].";
  return to_lp_text(m.lp, m.binaries, header.str());
}

}  // namespace ldc
