#include "ldcflow/lp.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ldcflow/errors.hpp"

namespace ldc {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "infeasible";
}

VarId LinearProgram::add_variable(std::string name, std::optional<Rational> lower,
                                  std::optional<Rational> upper) {
  variables_.push_back({std::move(name), std::move(lower), std::move(upper)});
  return VarId{variables_.size() - 1};
}

void LinearProgram::add_constraint(LinearExpr expr, Relation rel, Rational rhs, std::string name) {
  constraints_.push_back({std::move(expr), rel, std::move(rhs), std::move(name)});
}

void LinearProgram::set_bounds(VarId v, std::optional<Rational> lower, std::optional<Rational> upper) {
  auto& var = variables_.at(v.index);
  var.lower = std::move(lower);
  var.upper = std::move(upper);
}

Rational evaluate(const LinearExpr& expr, std::span<const Rational> assignment) {
  Rational total;
  for (const auto& t : expr) total += t.coef * assignment[t.var.index];
  return total;
}

bool is_feasible(const LinearProgram& p, std::span<const Rational> assignment) {
  if (assignment.size() != p.variables().size()) return false;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const auto& v = p.variables()[j];
    if (v.lower && assignment[j] < *v.lower) return false;
    if (v.upper && assignment[j] > *v.upper) return false;
  }
  for (const auto& c : p.constraints()) {
    const Rational lhs = evaluate(c.expr, assignment);
    switch (c.rel) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

struct Bound {
  bool has_lo = false;
  bool has_hi = false;
  mpq_class lo;
  mpq_class hi;

  void tighten_lo(const mpq_class& v) {
    if (!has_lo || v > lo) lo = v;
    has_lo = true;
  }
  void tighten_hi(const mpq_class& v) {
    if (!has_hi || v < hi) hi = v;
    has_hi = true;
  }
  bool empty() const { return has_lo && has_hi && lo > hi; }
  bool fixed() const { return has_lo && has_hi && lo == hi; }
};

struct Row {
  std::vector<std::pair<std::size_t, mpq_class>> coefs;
  Bound range;
};

// Rows after presolve: merged duplicates as ranged rows, singletons folded
// into variable bounds.
struct Presolved {
  std::vector<Bound> var_bounds;
  std::vector<Row> rows;
  std::vector<mpq_class> objective;
  bool infeasible = false;
};

Presolved presolve(const LinearProgram& p) {
  const std::size_t n = p.variables().size();
  Presolved out;
  out.var_bounds.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = p.variables()[j];
    if (v.lower && v.upper && *v.lower > *v.upper) {
      throw Error(ErrorCode::MalformedProgram, "inverted bounds on variable '" + v.name + "'");
    }
    if (v.lower) out.var_bounds[j].tighten_lo(v.lower->raw());
    if (v.upper) out.var_bounds[j].tighten_hi(v.upper->raw());
  }

  auto check_var = [&](VarId v, std::string_view where) {
    if (v.index >= n) {
      throw Error(ErrorCode::MalformedProgram,
                  "undeclared variable #" + std::to_string(v.index) + " in " + std::string(where));
    }
  };

  out.objective.assign(n, mpq_class(0));
  for (const auto& t : p.objective()) {
    check_var(t.var, "objective");
    out.objective[t.var.index] += t.coef.raw();
  }

  // Variables fixed by their declared bounds are substituted out of the rows.
  std::vector<bool> fixed(n);
  for (std::size_t j = 0; j < n; ++j) fixed[j] = out.var_bounds[j].fixed();

  std::map<std::vector<std::pair<std::size_t, mpq_class>>, std::size_t> row_of_key;
  for (const auto& c : p.constraints()) {
    std::map<std::size_t, mpq_class> acc;
    mpq_class rhs = c.rhs.raw();
    for (const auto& t : c.expr) {
      check_var(t.var, c.name.empty() ? "constraint" : c.name);
      if (fixed[t.var.index]) {
        rhs -= t.coef.raw() * out.var_bounds[t.var.index].lo;
      } else {
        acc[t.var.index] += t.coef.raw();
      }
    }
    std::vector<std::pair<std::size_t, mpq_class>> coefs;
    for (auto& [j, a] : acc) {
      if (sgn(a) != 0) coefs.emplace_back(j, a);
    }

    if (coefs.empty()) {
      const int s = sgn(rhs);
      const bool ok = c.rel == Relation::LessEq ? s >= 0 : (c.rel == Relation::Equal ? s == 0 : s <= 0);
      if (!ok) out.infeasible = true;
      continue;
    }

    // Scale so the leading coefficient is 1; a negative scale swaps the sides.
    const mpq_class lead = coefs.front().second;
    for (auto& [j, a] : coefs) a /= lead;
    const mpq_class scaled = rhs / lead;
    const bool flipped = sgn(lead) < 0;
    const bool upper = c.rel == Relation::Equal || (c.rel == Relation::LessEq) != flipped;
    const bool lower = c.rel == Relation::Equal || (c.rel == Relation::GreaterEq) != flipped;

    Bound* target = nullptr;
    if (coefs.size() == 1) {
      target = &out.var_bounds[coefs.front().first];
    } else {
      auto [it, inserted] = row_of_key.emplace(coefs, out.rows.size());
      if (inserted) out.rows.push_back(Row{coefs, {}});
      target = &out.rows[it->second].range;
    }
    if (upper) target->tighten_hi(scaled);
    if (lower) target->tighten_lo(scaled);
  }

  for (const auto& b : out.var_bounds) {
    if (b.empty()) out.infeasible = true;
  }
  for (const auto& r : out.rows) {
    if (r.range.empty()) out.infeasible = true;
  }
  return out;
}

// Bounded-variable primal simplex on a dense tableau. Each row expresses its
// basic variable as a combination of the nonbasic ones: x_B(r) = sum T[r][k] x_k.
// Columns: structurals, then one logical per row (the row activity, carrying
// the row's range), then artificials for rows whose start is infeasible.
class Simplex {
 public:
  explicit Simplex(const Presolved& pre) {
    const std::size_t n = pre.var_bounds.size();
    const std::size_t m = pre.rows.size();
    structurals_ = n;
    bounds_ = pre.var_bounds;
    for (const auto& r : pre.rows) bounds_.push_back(r.range);

    std::vector<std::size_t> need_art;
    values_.assign(n + m, mpq_class(0));
    for (std::size_t j = 0; j < n; ++j) values_[j] = start_value(bounds_[j]);

    std::vector<mpq_class> activity(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (const auto& [j, a] : pre.rows[i].coefs) activity[i] += a * values_[j];
      const Bound& b = bounds_[n + i];
      if ((b.has_lo && activity[i] < b.lo) || (b.has_hi && activity[i] > b.hi)) need_art.push_back(i);
    }

    const std::size_t cols = n + m + need_art.size();
    bounds_.resize(cols);
    values_.resize(cols);
    tableau_.assign(m, std::vector<mpq_class>(cols));
    basic_.assign(m, 0);
    row_of_.assign(cols, npos);

    std::size_t next_art = n + m;
    std::size_t art_cursor = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t logical = n + i;
      const bool artificial = art_cursor < need_art.size() && need_art[art_cursor] == i;
      if (!artificial) {
        for (const auto& [j, a] : pre.rows[i].coefs) tableau_[i][j] = a;
        values_[logical] = activity[i];
        make_basic(i, logical);
        continue;
      }
      ++art_cursor;
      const Bound& b = bounds_[logical];
      const mpq_class beta = (b.has_lo && activity[i] < b.lo) ? b.lo : b.hi;
      const int sigma = sgn(beta - activity[i]);
      values_[logical] = beta;
      tableau_[i][logical] = sigma;
      for (const auto& [j, a] : pre.rows[i].coefs) tableau_[i][j] = -sigma * a;
      const std::size_t art = next_art++;
      bounds_[art].tighten_lo(0);
      values_[art] = abs(beta - activity[i]);
      make_basic(i, art);
      artificials_.push_back(art);
    }
  }

  LpStatus run(const std::vector<mpq_class>& structural_objective) {
    if (!artificials_.empty()) {
      std::vector<mpq_class> phase1(cols(), mpq_class(0));
      for (std::size_t a : artificials_) phase1[a] = -1;
      load_objective(phase1);
      iterate();  // bounded below by zero, never unbounded
      mpq_class residual = 0;
      for (std::size_t a : artificials_) residual += values_[a];
      if (sgn(residual) > 0) return LpStatus::Infeasible;
      for (std::size_t a : artificials_) {
        bounds_[a].tighten_hi(0);
        values_[a] = 0;
      }
    }
    std::vector<mpq_class> phase2(cols(), mpq_class(0));
    std::copy(structural_objective.begin(), structural_objective.end(), phase2.begin());
    load_objective(phase2);
    return iterate() ? LpStatus::Optimal : LpStatus::Unbounded;
  }

  const mpq_class& value(std::size_t j) const { return values_[j]; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static mpq_class start_value(const Bound& b) {
    if (b.has_lo) return b.lo;
    if (b.has_hi) return b.hi;
    return 0;
  }

  std::size_t cols() const { return bounds_.size(); }
  bool is_basic(std::size_t k) const { return row_of_[k] != npos; }

  void make_basic(std::size_t row, std::size_t k) {
    basic_[row] = k;
    row_of_[k] = row;
  }

  void load_objective(const std::vector<mpq_class>& c) {
    reduced_.assign(cols(), mpq_class(0));
    for (std::size_t k = 0; k < cols(); ++k) {
      if (!is_basic(k)) reduced_[k] = c[k];
    }
    for (std::size_t r = 0; r < basic_.size(); ++r) {
      const mpq_class& cb = c[basic_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t k = 0; k < cols(); ++k) {
        if (!is_basic(k) && sgn(tableau_[r][k]) != 0) reduced_[k] += cb * tableau_[r][k];
      }
    }
  }

  // Returns false on unboundedness.
  bool iterate() {
    mpq_class step, candidate, rate;
    for (;;) {
      // Bland: lowest-index improving nonbasic column.
      std::size_t enter = npos;
      int dir = 0;
      for (std::size_t k = 0; k < cols(); ++k) {
        if (is_basic(k) || bounds_[k].fixed()) continue;
        const int s = sgn(reduced_[k]);
        if (s > 0 && (!bounds_[k].has_hi || values_[k] < bounds_[k].hi)) {
          enter = k;
          dir = 1;
          break;
        }
        if (s < 0 && (!bounds_[k].has_lo || values_[k] > bounds_[k].lo)) {
          enter = k;
          dir = -1;
          break;
        }
      }
      if (enter == npos) return true;

      // Ratio test; ties go to the lowest variable index.
      std::size_t leave = npos;
      bool have_step = false;
      auto offer = [&](const mpq_class& t, std::size_t var) {
        if (!have_step || t < step || (t == step && var < leave)) {
          step = t;
          leave = var;
          have_step = true;
        }
      };
      const Bound& eb = bounds_[enter];
      if (dir > 0 && eb.has_hi) offer(eb.hi - values_[enter], enter);
      if (dir < 0 && eb.has_lo) offer(values_[enter] - eb.lo, enter);
      for (std::size_t r = 0; r < basic_.size(); ++r) {
        const mpq_class& t = tableau_[r][enter];
        if (sgn(t) == 0) continue;
        const std::size_t b = basic_[r];
        const Bound& bb = bounds_[b];
        rate = dir > 0 ? mpq_class(t) : mpq_class(-t);
        if (sgn(rate) > 0 && bb.has_hi) {
          candidate = (bb.hi - values_[b]) / rate;
          offer(candidate, b);
        } else if (sgn(rate) < 0 && bb.has_lo) {
          candidate = (values_[b] - bb.lo) / (-rate);
          offer(candidate, b);
        }
      }
      if (!have_step) return false;

      if (sgn(step) != 0) {
        const mpq_class delta = dir > 0 ? step : mpq_class(-step);
        values_[enter] += delta;
        for (std::size_t r = 0; r < basic_.size(); ++r) {
          if (sgn(tableau_[r][enter]) != 0) values_[basic_[r]] += tableau_[r][enter] * delta;
        }
      }
      if (leave == enter) continue;  // bound flip, basis unchanged

      const std::size_t row = row_of_[leave];
      values_[leave] = (dir > 0) == (sgn(tableau_[row][enter]) > 0) ? bounds_[leave].hi : bounds_[leave].lo;
      pivot(row, enter);
    }
  }

  void pivot(std::size_t row, std::size_t enter) {
    const std::size_t leave = basic_[row];
    auto& pr = tableau_[row];
    const mpq_class inv = 1 / pr[enter];

    // Rewrite the pivot row as x_enter = (x_leave - sum others) / pivot.
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < cols(); ++k) {
      if (k == enter || sgn(pr[k]) == 0) continue;
      pr[k] *= -inv;
      nz.push_back(k);
    }
    pr[enter] = 0;
    pr[leave] = inv;
    nz.push_back(leave);

    mpq_class coef, tmp;
    for (std::size_t r = 0; r < basic_.size(); ++r) {
      if (r == row || sgn(tableau_[r][enter]) == 0) continue;
      auto& tr = tableau_[r];
      coef = tr[enter];
      tr[enter] = 0;
      for (std::size_t k : nz) {
        mpq_mul(tmp.get_mpq_t(), coef.get_mpq_t(), pr[k].get_mpq_t());
        mpq_add(tr[k].get_mpq_t(), tr[k].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    if (sgn(reduced_[enter]) != 0) {
      coef = reduced_[enter];
      reduced_[enter] = 0;
      for (std::size_t k : nz) {
        mpq_mul(tmp.get_mpq_t(), coef.get_mpq_t(), pr[k].get_mpq_t());
        mpq_add(reduced_[k].get_mpq_t(), reduced_[k].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    row_of_[leave] = npos;
    make_basic(row, enter);
  }

  std::size_t structurals_ = 0;
  std::vector<Bound> bounds_;
  std::vector<mpq_class> values_;
  std::vector<std::vector<mpq_class>> tableau_;
  std::vector<mpq_class> reduced_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> row_of_;
  std::vector<std::size_t> artificials_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& p) {
  const Presolved pre = presolve(p);
  LpResult result;
  if (pre.infeasible) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  Simplex simplex(pre);
  result.status = simplex.run(pre.objective);
  if (result.status != LpStatus::Optimal) return result;

  result.assignment.reserve(p.variables().size());
  for (std::size_t j = 0; j < p.variables().size(); ++j) {
    result.assignment.emplace_back(simplex.value(j));
  }
  result.value = evaluate(p.objective(), result.assignment);
  return result;
}

namespace {

std::string lp_number(const Rational& r, std::vector<std::string>& notes) {
  if (!r.has_exact_decimal()) notes.push_back(r.decimal() + " is " + r.str());
  return r.decimal();
}

std::string lp_name(const std::string& raw, std::size_t index, const char* fallback) {
  std::string out;
  for (char c : raw) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '(' ||
                    c == ')' || c == '[' || c == ']';
    out += ok ? c : '_';
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())) || out.front() == '.') {
    out = fallback + std::to_string(index) + (out.empty() ? "" : "_" + out);
  }
  return out;
}

void write_expr(std::ostream& os, const LinearExpr& expr, const std::vector<std::string>& names,
                std::vector<std::string>& notes) {
  if (expr.empty()) {
    os << "0 " << names.front();
    return;
  }
  bool first = true;
  for (const auto& t : expr) {
    const bool neg = t.coef.sign() < 0;
    if (first) {
      if (neg) os << "- ";
    } else {
      os << (neg ? " - " : " + ");
    }
    const Rational mag = t.coef.abs();
    if (mag != 1) os << lp_number(mag, notes) << ' ';
    os << names[t.var.index];
    first = false;
  }
}

}  // namespace

std::string to_lp_text(const LinearProgram& p, std::span<const VarId> binaries, std::string_view header) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < p.variables().size(); ++j) {
    names.push_back(lp_name(p.variables()[j].name, j, "x"));
  }
  if (names.empty()) names.push_back("x0");

  std::ostringstream os;
  std::vector<std::string> notes;
  std::istringstream hs{std::string(header)};
  for (std::string line; std::getline(hs, line);) os << "\\ " << line << '\n';

  auto flush_notes = [&] {
    for (const auto& n : notes) os << "\\ exact: " << n << '\n';
    notes.clear();
  };

  os << "Maximize\n obj: ";
  write_expr(os, p.objective(), names, notes);
  os << '\n';
  flush_notes();

  os << "Subject To\n";
  for (std::size_t i = 0; i < p.constraints().size(); ++i) {
    const auto& c = p.constraints()[i];
    os << ' ' << lp_name(c.name, i, "c") << ": ";
    write_expr(os, c.expr, names, notes);
    os << (c.rel == Relation::LessEq ? " <= " : (c.rel == Relation::Equal ? " = " : " >= "));
    os << lp_number(c.rhs, notes) << '\n';
    flush_notes();
  }

  std::vector<bool> is_binary(p.variables().size(), false);
  for (VarId b : binaries) is_binary.at(b.index) = true;

  os << "Bounds\n";
  for (std::size_t j = 0; j < p.variables().size(); ++j) {
    if (is_binary[j]) continue;
    const auto& v = p.variables()[j];
    if (!v.lower && !v.upper) {
      os << ' ' << names[j] << " free\n";
    } else if (v.lower && v.upper && *v.lower == *v.upper) {
      os << ' ' << names[j] << " = " << lp_number(*v.lower, notes) << '\n';
    } else {
      os << ' ' << (v.lower ? lp_number(*v.lower, notes) : std::string("-inf")) << " <= " << names[j];
      if (v.upper) os << " <= " << lp_number(*v.upper, notes);
      os << '\n';
    }
    flush_notes();
  }
  if (!binaries.empty()) {
    os << "Binaries\n";
    for (VarId b : binaries) os << ' ' << names[b.index] << '\n';
  }
  os << "End\n";
  return os.str();
}

}  // namespace ldc
