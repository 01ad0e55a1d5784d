#pragma once

// Exact rational linear programming (maximization).

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldcflow/rational.hpp"

namespace ldc {

struct VarId {
  std::size_t index = 0;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

struct Term {
  VarId var;
  Rational coef;
};

using LinearExpr = std::vector<Term>;

enum class Relation { LessEq, Equal, GreaterEq };

struct Variable {
  std::string name;
  std::optional<Rational> lower;  // nullopt: unbounded below
  std::optional<Rational> upper;  // nullopt: unbounded above
};

struct Constraint {
  LinearExpr expr;
  Relation rel = Relation::LessEq;
  Rational rhs;
  std::string name;
};

class LinearProgram {
 public:
  VarId add_variable(std::string name, std::optional<Rational> lower = Rational{},
                     std::optional<Rational> upper = std::nullopt);
  void add_constraint(LinearExpr expr, Relation rel, Rational rhs, std::string name = {});
  void set_objective(LinearExpr objective) { objective_ = std::move(objective); }

  /// Tighten or replace the bounds of an existing variable.
  void set_bounds(VarId v, std::optional<Rational> lower, std::optional<Rational> upper);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const LinearExpr& objective() const { return objective_; }
  const Variable& variable(VarId v) const { return variables_.at(v.index); }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  LinearExpr objective_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;                    // meaningful when Optimal
  std::vector<Rational> assignment;  // one per variable when Optimal

  const Rational& operator[](VarId v) const { return assignment.at(v.index); }
};

/// Exact primal simplex over the rationals with Bland's rule. Returns a vertex
/// optimum; deterministic for a given program.
LpResult solve_lp(const LinearProgram& p);

/// Evaluate an expression at an assignment.
Rational evaluate(const LinearExpr& expr, std::span<const Rational> assignment);

/// True when `assignment` satisfies every bound and constraint exactly.
bool is_feasible(const LinearProgram& p, std::span<const Rational> assignment);

/// CPLEX-style "Maximize / Subject To / Bounds / End" text. Coefficients are
/// decimals when their expansion terminates; otherwise a rounded decimal is
/// written and the exact "p/q" is recorded in a comment line.
std::string to_lp_text(const LinearProgram& p, std::span<const VarId> binaries = {},
                       std::string_view header = {});

}  // namespace ldc
