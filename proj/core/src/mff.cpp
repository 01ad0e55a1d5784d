#include "ldcflow/mff.hpp"

#include <optional>

#include "ldcflow/errors.hpp"
#include "ldcflow/max_flow.hpp"
#include "ldcflow/parallel.hpp"

namespace ldc {
namespace {

// Candidate susceptances per FACTS edge, ascending.
using Grid = std::vector<std::vector<Rational>>;

Grid make_grid(const Network& n, const std::vector<std::size_t>& facts, std::size_t k) {
  Grid grid;
  for (std::size_t i : facts) {
    const Edge& e = n.edges()[i];
    std::vector<Rational> points;
    for (std::size_t j = 0; j <= k; ++j) {
      points.push_back(e.s_min + (e.s_max - e.s_min) * Rational(static_cast<long>(j), static_cast<long>(k)));
    }
    grid.push_back(std::move(points));
  }
  return grid;
}

std::vector<std::size_t> require_searchable(const Network& n, std::size_t facts_limit) {
  require_valid(n);
  auto facts = n.facts_edges();
  if (facts.size() > facts_limit) {
    throw Error(ErrorCode::TooManyFactsEdges, std::to_string(facts.size()) + " FACTS edges exceed the limit of " +
                                                  std::to_string(facts_limit));
  }
  return facts;
}

// Point index -> per-edge choice, first FACTS edge most significant.
std::vector<std::size_t> decode_point(std::size_t point, const Grid& grid) {
  std::vector<std::size_t> choice(grid.size());
  for (std::size_t i = grid.size(); i-- > 0;) {
    choice[i] = point % grid[i].size();
    point /= grid[i].size();
  }
  return choice;
}

Network fixed_copy(const Network& n, const std::vector<std::size_t>& facts, const Grid& grid,
                   const std::vector<std::size_t>& choice) {
  Network copy = n;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    const Rational& s = grid[i][choice[i]];
    copy.set_susceptance(facts[i], s, s);
  }
  return copy;
}

struct Best {
  Rational value;
  std::vector<std::size_t> points;
};

Best search(const Network& n, const std::vector<std::size_t>& facts, const Grid& grid, bool keep_ties) {
  std::size_t total = 1;
  for (const auto& g : grid) total *= g.size();

  const bool no_flow = classical_max_flow(n).is_zero();
  const std::vector<EdgeMode> modes(n.edge_count(), EdgeMode::Kept);

  std::vector<std::optional<Best>> partial(worker_count() + 1);
  const std::size_t chunks = parallel_chunks(total, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::optional<Best> best;
    for (std::size_t p = begin; p < end; ++p) {
      Rational v = no_flow ? Rational{} : flow_model_value(fixed_copy(n, facts, grid, decode_point(p, grid)), modes);
      if (!best || v > best->value) {
        best = Best{std::move(v), {p}};
      } else if (keep_ties && v == best->value) {
        best->points.push_back(p);
      }
    }
    partial[chunk] = std::move(best);
  });

  std::optional<Best> best;
  for (std::size_t c = 0; c < chunks; ++c) {
    if (!partial[c]) continue;
    if (!best || partial[c]->value > best->value) {
      best = std::move(partial[c]);
    } else if (keep_ties && partial[c]->value == best->value) {
      best->points.insert(best->points.end(), partial[c]->points.begin(), partial[c]->points.end());
    }
  }
  return std::move(*best);
}

MffOutcome make_outcome(const Network& n, const std::vector<std::size_t>& facts, const Grid& grid,
                        std::size_t point, const Rational& expected) {
  const auto choice = decode_point(point, grid);
  MffOutcome out;
  for (std::size_t i = 0; i < facts.size(); ++i) {
    out.assignment.values[n.edges()[facts[i]].key()] = grid[i][choice[i]];
  }
  MpfOutcome mpf = solve_mpf(fixed_copy(n, facts, grid, choice));
  if (mpf.value != expected) throw std::logic_error("susceptance choice changed value on re-solve");
  out.value = std::move(mpf.value);
  out.solution = std::move(mpf.solution);
  out.certified = facts.empty();
  return out;
}

MffOutcome solve_on_grid(const Network& n, std::size_t k, std::size_t facts_limit) {
  const auto facts = require_searchable(n, facts_limit);
  const Grid grid = make_grid(n, facts, k);
  const Best best = search(n, facts, grid, false);
  return make_outcome(n, facts, grid, best.points.front(), best.value);
}

}  // namespace

Network apply_assignment(const Network& n, const SusAssignment& assignment) {
  Network copy = n;
  for (const auto& [key, s] : assignment.values) {
    const auto i = n.edge_index(key.first, key.second);
    if (!i) throw Error(ErrorCode::UnknownEdge, "assignment names missing edge " + to_string(key));
    copy.set_susceptance(*i, s, s);
  }
  return copy;
}

MffOutcome solve_mff_endpoints(const Network& n, std::size_t facts_limit) { return solve_on_grid(n, 1, facts_limit); }

MffOutcome solve_mff_grid(const Network& n, std::size_t k, std::size_t facts_limit) {
  if (k == 0) throw Error(ErrorCode::InvalidInstance, "grid resolution must be positive");
  return solve_on_grid(n, k, facts_limit);
}

std::vector<MffOutcome> mff_endpoint_optima(const Network& n, std::size_t facts_limit) {
  const auto facts = require_searchable(n, facts_limit);
  const Grid grid = make_grid(n, facts, 1);
  const Best best = search(n, facts, grid, true);
  std::vector<MffOutcome> out;
  for (std::size_t p : best.points) out.push_back(make_outcome(n, facts, grid, p, best.value));
  return out;
}

const char* to_string(MffDecision d) { return d == MffDecision::Yes ? "YES" : "UNKNOWN"; }

MffDecision decide_mff(const Network& n, const Rational& x, std::size_t grid_k) {
  if (solve_mff_endpoints(n).value >= x) return MffDecision::Yes;
  if (grid_k > 1 && solve_mff_grid(n, grid_k).value >= x) return MffDecision::Yes;
  return MffDecision::Unknown;
}

}  // namespace ldc
