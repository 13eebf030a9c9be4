#pragma once

// Exact rational linear programming: dense two-phase primal simplex with Bland's
// anti-cycling rule. Sized for the tens of variables/constraints this library needs.

#include <sds/errors.hpp>
#include <sds/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sds::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

using LinearExpr = std::vector<std::pair<std::size_t, Rational>>;

struct Constraint {
  LinearExpr lhs;
  Relation relation;
  Rational rhs;
};

// maximize objective·x subject to constraints; variables flagged nonneg are >= 0,
// the rest are free.
class LinearProgram {
 public:
  std::size_t add_variable(std::string name, bool nonneg = true) {
    names_.push_back(std::move(name));
    nonneg_.push_back(nonneg);
    return names_.size() - 1;
  }

  void set_objective(LinearExpr objective) {
    check(objective);
    objective_ = std::move(objective);
  }

  void add_constraint(LinearExpr lhs, Relation relation, Rational rhs) {
    check(lhs);
    constraints_.push_back({std::move(lhs), relation, std::move(rhs)});
  }

  std::size_t num_variables() const { return names_.size(); }
  const std::string& name(std::size_t var) const { return names_.at(var); }
  bool nonneg(std::size_t var) const { return nonneg_.at(var); }
  const LinearExpr& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  static Rational evaluate(const LinearExpr& expr, const std::vector<Rational>& x) {
    Rational v = 0;
    for (const auto& [var, coef] : expr) v += coef * x.at(var);
    return v;
  }

  bool satisfied_by(const std::vector<Rational>& x) const {
    if (x.size() != names_.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (nonneg_[j] && x[j] < 0) return false;
    for (const auto& c : constraints_) {
      Rational lhs = evaluate(c.lhs, x);
      switch (c.relation) {
        case Relation::LessEqual:
          if (lhs > c.rhs) return false;
          break;
        case Relation::Equal:
          if (lhs != c.rhs) return false;
          break;
        case Relation::GreaterEqual:
          if (lhs < c.rhs) return false;
          break;
      }
    }
    return true;
  }

 private:
  void check(const LinearExpr& expr) const {
    for (const auto& term : expr)
      if (term.first >= names_.size()) throw InvalidArgument("linear expression references an undeclared variable");
  }

  std::vector<std::string> names_;
  std::vector<bool> nonneg_;
  LinearExpr objective_;
  std::vector<Constraint> constraints_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> assignment;  // Optimal only
  Rational value;                    // Optimal only
};

namespace detail {

class Tableau {
 public:
  // Builds A x = b, x >= 0, b >= 0 from `lp`, with one artificial per row that lacks
  // a ready-made unit column.
  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    const std::size_t n = lp.num_variables();
    for (std::size_t j = 0; j < n; ++j) {
      pos_col_.push_back(num_cols_++);
      neg_col_.push_back(lp.nonneg(j) ? npos : num_cols_++);
    }
    const auto& cons = lp.constraints();
    std::vector<std::size_t> slack_col(cons.size(), npos);
    for (std::size_t r = 0; r < cons.size(); ++r)
      if (cons[r].relation != Relation::Equal) slack_col[r] = num_cols_++;
    first_artificial_ = num_cols_;

    std::vector<std::vector<Rational>> rows;
    std::vector<std::size_t> basis;
    std::vector<std::size_t> needs_artificial;
    for (std::size_t r = 0; r < cons.size(); ++r) {
      std::vector<Rational> row(num_cols_ + 1, Rational(0));
      for (const auto& [var, coef] : cons[r].lhs) {
        row[pos_col_[var]] += coef;
        if (neg_col_[var] != npos) row[neg_col_[var]] -= coef;
      }
      if (slack_col[r] != npos) row[slack_col[r]] = cons[r].relation == Relation::LessEqual ? 1 : -1;
      row[num_cols_] = cons[r].rhs;
      if (row[num_cols_] < 0)
        for (auto& v : row) v = -v;
      if (slack_col[r] != npos && row[slack_col[r]] == 1) {
        basis.push_back(slack_col[r]);
      } else {
        basis.push_back(npos);
        needs_artificial.push_back(r);
      }
      rows.push_back(std::move(row));
    }

    const std::size_t num_art = needs_artificial.size();
    width_ = num_cols_ + num_art;
    for (auto& row : rows) {
      Rational rhs = row.back();
      row.resize(width_ + 1, Rational(0));
      for (std::size_t j = num_cols_; j < width_; ++j) row[j] = 0;
      row[width_] = rhs;
    }
    for (std::size_t k = 0; k < num_art; ++k) {
      rows[needs_artificial[k]][num_cols_ + k] = 1;
      basis[needs_artificial[k]] = num_cols_ + k;
    }
    rows_ = std::move(rows);
    basis_ = std::move(basis);
    allowed_.assign(width_, true);
  }

  // Phase one; false if the constraint system is infeasible.
  bool find_feasible_basis() {
    std::vector<Rational> cost(width_, Rational(0));
    for (std::size_t j = first_artificial_; j < width_; ++j) cost[j] = -1;
    set_objective(cost);
    if (!optimize()) throw std::logic_error("phase one cannot be unbounded");
    if (value() < 0) return false;

    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < first_artificial_) {
        ++r;
        continue;
      }
      std::size_t enter = npos;
      for (std::size_t j = 0; j < first_artificial_; ++j)
        if (rows_[r][j] != 0) {
          enter = j;
          break;
        }
      if (enter == npos) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, enter);
      ++r;
    }
    for (std::size_t j = first_artificial_; j < width_; ++j) allowed_[j] = false;
    return true;
  }

  // Phase two on the LP's objective; false if unbounded.
  bool maximize_objective() {
    std::vector<Rational> cost(width_, Rational(0));
    for (const auto& [var, coef] : lp_.objective()) {
      cost[pos_col_[var]] += coef;
      if (neg_col_[var] != npos) cost[neg_col_[var]] -= coef;
    }
    set_objective(cost);
    return optimize();
  }

  Rational value() const { return -obj_[width_]; }

  std::vector<Rational> assignment() const {
    std::vector<Rational> col(width_, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) col[basis_[r]] = rows_[r][width_];
    std::vector<Rational> x(lp_.num_variables(), Rational(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = col[pos_col_[j]];
      if (neg_col_[j] != npos) x[j] -= col[neg_col_[j]];
    }
    return x;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void set_objective(const std::vector<Rational>& cost) {
    obj_ = cost;
    obj_.push_back(Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational f = obj_[basis_[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j)
        if (rows_[r][j] != 0) obj_[j] -= f * rows_[r][j];
    }
  }

  // Bland's rule: lowest-index improving column, ties in the ratio test broken by
  // lowest basic index. Returns false on unboundedness.
  bool optimize() {
    for (;;) {
      std::size_t enter = npos;
      for (std::size_t j = 0; j < width_; ++j)
        if (allowed_[j] && obj_[j] > 0) {
          enter = j;
          break;
        }
      if (enter == npos) return true;

      std::size_t leave = npos;
      Rational best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][enter] <= 0) continue;
        Rational ratio = rows_[r][width_] / rows_[r][enter];
        if (leave == npos || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == npos) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = rows_[r];
    Rational inv = 1 / prow[c];
    for (auto& v : prow)
      if (v != 0) v *= inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (k == r || rows_[k][c] == 0) continue;
      Rational f = rows_[k][c];
      for (std::size_t j = 0; j <= width_; ++j)
        if (prow[j] != 0) rows_[k][j] -= f * prow[j];
    }
    if (obj_[c] != 0) {
      Rational f = obj_[c];
      for (std::size_t j = 0; j <= width_; ++j)
        if (prow[j] != 0) obj_[j] -= f * prow[j];
    }
    basis_[r] = c;
  }

  const LinearProgram& lp_;
  std::vector<std::size_t> pos_col_, neg_col_;
  std::size_t num_cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t width_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
};

}  // namespace detail

// Exact optimum. An Optimal assignment is re-substituted into every constraint and
// the objective before it is returned.
inline LpOutcome solve(const LinearProgram& lp) {
  if (lp.num_variables() == 0) throw InvalidArgument("linear program without variables");
  detail::Tableau tab(lp);
  if (!tab.find_feasible_basis()) return {LpStatus::Infeasible, {}, 0};
  if (!tab.maximize_objective()) return {LpStatus::Unbounded, {}, 0};

  LpOutcome out{LpStatus::Optimal, tab.assignment(), 0};
  out.value = LinearProgram::evaluate(lp.objective(), out.assignment);
  if (!lp.satisfied_by(out.assignment)) throw std::logic_error("simplex returned an infeasible assignment");
  if (out.value != tab.value()) throw std::logic_error("simplex objective disagrees with its assignment");
  return out;
}

// Phase one only: any point satisfying the constraints, objective ignored.
inline std::optional<std::vector<Rational>> feasible(const LinearProgram& lp) {
  if (lp.num_variables() == 0) throw InvalidArgument("linear program without variables");
  detail::Tableau tab(lp);
  if (!tab.find_feasible_basis()) return std::nullopt;
  auto x = tab.assignment();
  if (!lp.satisfied_by(x)) throw std::logic_error("phase one returned an infeasible assignment");
  return x;
}

}  // namespace sds::lp
