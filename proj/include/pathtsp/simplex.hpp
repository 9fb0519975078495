#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pathtsp/rational.hpp"

namespace pathtsp {

using SparseRow = std::vector<std::pair<int, Rational>>;

/// Dense exact tableau for  min c·x  s.t.  A x = b, x ≥ 0.
/// Pivoting follows Bland's smallest-index rule in both the primal and the
/// dual method, so degenerate problems terminate.
class SimplexTableau {
 public:
  enum class Status { optimal, infeasible, unbounded };

  /// `unit_columns`, when nonempty, names for every row a column that is the
  /// corresponding unit vector; they form the starting basis (requires b ≥ 0)
  /// and later give access to the basis inverse for add_column.
  SimplexTableau(std::vector<Rational> cost, const std::vector<SparseRow>& rows, std::vector<Rational> rhs,
                 std::vector<int> unit_columns, std::size_t pivot_limit);

  /// Two-phase primal simplex from the construction-time basis.
  Status solve();

  /// Appends the row  a·x − s = rhs  (a ≥ row over existing columns) with a new
  /// basic surplus column s. Returns the surplus column index. Follow with
  /// reoptimize_dual().
  int add_ge_row(const SparseRow& a, const Rational& rhs);
  Status reoptimize_dual();

  /// Appends a column with the given cost and coefficients in the original
  /// rows. Requires unit columns. Returns its reduced cost; follow with solve().
  Rational add_column(const Rational& cost, const SparseRow& coefficients);

  /// Dual value of an original row (needs unit columns).
  Rational row_dual(int original_row) const;

  int column_count() const { return static_cast<int>(cost_.size()); }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const Rational& objective() const { return objective_; }
  const Rational& reduced_cost(int column) const { return reduced_[column]; }
  std::vector<Rational> primal() const;
  std::size_t pivots() const { return pivots_; }

 private:
  void pivot(int row, int column);
  Status run_primal(std::vector<Rational>& reduced, Rational& objective, int column_limit);
  void price(const std::vector<Rational>& cost, std::vector<Rational>& reduced, Rational& objective) const;
  void count_pivot();

  std::vector<Rational> cost_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> reduced_;
  Rational objective_;
  std::vector<int> unit_columns_;
  bool solved_once_ = false;
  std::size_t pivot_limit_;
  std::size_t pivots_ = 0;
};

}  // namespace pathtsp
