#pragma once

// Brute-force references used only by the tests.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ldcflow/lp.hpp"
#include "ldcflow/network.hpp"
#include "ldcflow/reductions.hpp"

namespace oracle {

using ldc::Rational;

/// Solve a square system exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

/// Best objective over all vertices of a bounded program (every variable must
/// be boxed, either by its declared bounds or by rows). nullopt: no vertex,
/// i.e. infeasible.
std::optional<Rational> lp_by_vertices(const ldc::LinearProgram& p);

bool subset_sum_solvable(const std::vector<long>& values, long target);
bool exact_cover_solvable(const ldc::ExactCover3Instance& inst);
bool hamiltonian_path_exists(const ldc::HamiltonianInstance& inst);

struct Rng {
  explicit Rng(unsigned seed) : engine(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine); }
  std::mt19937 engine;
};

ldc::LinearProgram random_lp(Rng& rng);
/// Connected or not; at least one generator and one load; at most `max_edges` edges.
ldc::Network random_network(Rng& rng, int max_nodes, int max_edges);
ldc::Network random_tree(Rng& rng, int max_nodes);
ldc::HamiltonianInstance random_graph(Rng& rng, int max_nodes);
ldc::SubsetSumInstance random_subset_sum(Rng& rng, int max_count, long max_sum);
ldc::ExactCover3Instance random_exact_cover(Rng& rng, int max_sets);

/// Apply a permutation to variables and rows of a program.
ldc::LinearProgram permuted(const ldc::LinearProgram& p, Rng& rng);

}  // namespace oracle
