#include "pathtsp/simplex.hpp"

#include "pathtsp/errors.hpp"

namespace pathtsp {

SimplexTableau::SimplexTableau(std::vector<Rational> cost, const std::vector<SparseRow>& rows, std::vector<Rational> rhs,
                               std::vector<int> unit_columns, std::size_t pivot_limit)
    : cost_(std::move(cost)), rhs_(std::move(rhs)), unit_columns_(std::move(unit_columns)), pivot_limit_(pivot_limit) {
  const std::size_t columns = cost_.size();
  if (rows.size() != rhs_.size()) throw PreconditionError("row and right-hand side counts differ");
  if (!unit_columns_.empty() && unit_columns_.size() != rows.size()) throw PreconditionError("one unit column per row required");
  rows_.assign(rows.size(), std::vector<Rational>(columns));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, value] : rows[i]) {
      if (j < 0 || static_cast<std::size_t>(j) >= columns) throw PreconditionError("column index out of range");
      rows_[i][j] += value;
    }
    if (unit_columns_.empty() && rhs_[i] < 0) {
      for (Rational& value : rows_[i]) value = -value;
      rhs_[i] = -rhs_[i];
    }
  }
  reduced_.assign(columns, Rational(0));
  if (!unit_columns_.empty()) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const int u = unit_columns_[i];
      if (rhs_[i] < 0) throw PreconditionError("unit-column start needs a nonnegative right-hand side");
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][u] != (r == i ? 1 : 0)) throw PreconditionError("declared unit column is not a unit vector");
      }
    }
    basis_ = unit_columns_;
  }
}

void SimplexTableau::count_pivot() {
  if (++pivots_ > pivot_limit_) throw LimitError("simplex pivot limit exceeded");
}

void SimplexTableau::pivot(int row, int column) {
  count_pivot();
  std::vector<Rational>& pr = rows_[row];
  const Rational inv = 1 / pr[column];
  std::vector<int> nonzero;
  for (int j = 0; j < static_cast<int>(pr.size()); ++j) {
    if (sgn(pr[j]) != 0) {
      pr[j] *= inv;
      nonzero.push_back(j);
    }
  }
  rhs_[row] *= inv;
  Rational product;
  auto eliminate = [&](std::vector<Rational>& target, Rational& target_rhs) {
    const Rational factor = target[column];
    if (sgn(factor) == 0) return;
    for (int j : nonzero) {
      product = factor * pr[j];
      target[j] -= product;
    }
    product = factor * rhs_[row];
    target_rhs -= product;
  };
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    if (i != row) eliminate(rows_[i], rhs_[i]);
  }
  // Objective row: z = objective_ + Σ reduced_j x_j, so its "rhs" enters with opposite sign.
  Rational negated = -objective_;
  eliminate(reduced_, negated);
  objective_ = -negated;
  basis_[row] = column;
}

void SimplexTableau::price(const std::vector<Rational>& cost, std::vector<Rational>& reduced, Rational& objective) const {
  reduced = cost;
  objective = 0;
  Rational product;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational& cb = cost[basis_[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < reduced.size(); ++j) {
      if (sgn(rows_[i][j]) != 0) {
        product = cb * rows_[i][j];
        reduced[j] -= product;
      }
    }
    product = cb * rhs_[i];
    objective += product;
  }
}

SimplexTableau::Status SimplexTableau::run_primal(std::vector<Rational>& reduced, Rational& objective, int column_limit) {
  reduced_.swap(reduced);
  std::swap(objective_, objective);
  Status status = Status::optimal;
  for (;;) {
    int entering = -1;
    for (int j = 0; j < column_limit; ++j) {
      if (sgn(reduced_[j]) < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;
    int leaving = -1;
    Rational best;
    Rational ratio;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (sgn(rows_[i][entering]) <= 0) continue;
      ratio = rhs_[i] / rows_[i][entering];
      if (leaving < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leaving])) {
        leaving = i;
        best = ratio;
      }
    }
    if (leaving < 0) {
      status = Status::unbounded;
      break;
    }
    pivot(leaving, entering);
  }
  reduced_.swap(reduced);
  std::swap(objective_, objective);
  return status;
}

SimplexTableau::Status SimplexTableau::solve() {
  const int columns = static_cast<int>(cost_.size());
  if (basis_.empty() && !rows_.empty()) {
    // Phase 1 with one artificial per row.
    const int m = static_cast<int>(rows_.size());
    for (int i = 0; i < m; ++i) {
      rows_[i].resize(columns + m);
      rows_[i][columns + i] = 1;
      basis_.push_back(columns + i);
    }
    std::vector<Rational> phase_cost(columns + m);
    for (int i = 0; i < m; ++i) phase_cost[columns + i] = 1;
    std::vector<Rational> reduced;
    Rational objective;
    reduced_.assign(columns + m, Rational(0));
    price(phase_cost, reduced, objective);
    run_primal(reduced, objective, columns + m);
    if (sgn(objective) > 0) return Status::infeasible;
    std::vector<char> drop(m, 0);
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < columns) continue;
      int entering = -1;
      for (int j = 0; j < columns; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          entering = j;
          break;
        }
      }
      if (entering >= 0) {
        pivot(i, entering);
      } else {
        drop[i] = 1;
      }
    }
    std::vector<std::vector<Rational>> kept_rows;
    std::vector<Rational> kept_rhs;
    std::vector<int> kept_basis;
    for (int i = 0; i < m; ++i) {
      if (drop[i]) continue;
      rows_[i].resize(columns);
      kept_rows.push_back(std::move(rows_[i]));
      kept_rhs.push_back(rhs_[i]);
      kept_basis.push_back(basis_[i]);
    }
    rows_ = std::move(kept_rows);
    rhs_ = std::move(kept_rhs);
    basis_ = std::move(kept_basis);
    reduced_.assign(columns, Rational(0));
  }
  if (!solved_once_) {
    price(cost_, reduced_, objective_);
    solved_once_ = true;
  }
  std::vector<Rational> reduced = reduced_;
  Rational objective = objective_;
  const Status status = run_primal(reduced, objective, columns);
  reduced_ = std::move(reduced);
  objective_ = objective;
  return status;
}

int SimplexTableau::add_ge_row(const SparseRow& a, const Rational& rhs) {
  if (!solved_once_) throw PreconditionError("add_ge_row needs a solved tableau");
  const int columns = static_cast<int>(cost_.size());
  std::vector<Rational> dense(columns);
  for (const auto& [j, value] : a) dense[j] += value;
  std::vector<Rational> row(columns + 1);
  Rational product;
  for (int j = 0; j < columns; ++j) row[j] = -dense[j];
  Rational new_rhs = -rhs;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational& ab = dense[basis_[i]];
    if (sgn(ab) == 0) continue;
    for (int j = 0; j < columns; ++j) {
      if (sgn(rows_[i][j]) != 0) {
        product = ab * rows_[i][j];
        row[j] += product;
      }
    }
    product = ab * rhs_[i];
    new_rhs += product;
  }
  row[columns] = 1;
  for (auto& r : rows_) r.emplace_back(0);
  rows_.push_back(std::move(row));
  rhs_.push_back(new_rhs);
  cost_.emplace_back(0);
  reduced_.emplace_back(0);
  basis_.push_back(columns);
  return columns;
}

SimplexTableau::Status SimplexTableau::reoptimize_dual() {
  for (;;) {
    int leaving = -1;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (sgn(rhs_[i]) < 0 && (leaving < 0 || basis_[i] < basis_[leaving])) leaving = i;
    }
    if (leaving < 0) return Status::optimal;
    int entering = -1;
    Rational best;
    Rational ratio;
    const std::vector<Rational>& row = rows_[leaving];
    for (int j = 0; j < static_cast<int>(row.size()); ++j) {
      if (sgn(row[j]) >= 0) continue;
      ratio = reduced_[j] / -row[j];
      if (entering < 0 || ratio < best) {
        entering = j;
        best = ratio;
      }
    }
    if (entering < 0) return Status::infeasible;
    pivot(leaving, entering);
  }
}

Rational SimplexTableau::row_dual(int original_row) const {
  if (unit_columns_.empty()) throw PreconditionError("row duals need unit columns");
  const int u = unit_columns_[original_row];
  Rational y = cost_[u] - reduced_[u];
  return y;
}

Rational SimplexTableau::add_column(const Rational& cost, const SparseRow& coefficients) {
  if (unit_columns_.empty() || rows_.size() != unit_columns_.size()) {
    throw PreconditionError("add_column needs the unit-column basis inverse");
  }
  if (!solved_once_) {
    price(cost_, reduced_, objective_);
    solved_once_ = true;
  }
  std::vector<Rational> column(rows_.size());
  Rational reduced = cost;
  Rational product;
  for (const auto& [r, a] : coefficients) {
    const int u = unit_columns_[r];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (sgn(rows_[i][u]) != 0) {
        product = a * rows_[i][u];
        column[i] += product;
      }
    }
    product = a * row_dual(r);
    reduced -= product;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i].push_back(column[i]);
  cost_.push_back(cost);
  reduced_.push_back(reduced);
  return reduced;
}

std::vector<Rational> SimplexTableau::primal() const {
  std::vector<Rational> x(cost_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rhs_[i];
  return x;
}

}  // namespace pathtsp
