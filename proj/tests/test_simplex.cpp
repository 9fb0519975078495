#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pathtsp/errors.hpp"
#include "pathtsp/simplex.hpp"

using namespace pathtsp;

namespace {

SparseRow row(std::initializer_list<std::pair<int, long>> entries) {
  SparseRow r;
  for (const auto& [col, v] : entries) r.emplace_back(col, Rational(v));
  return r;
}

}  // namespace

TEST_CASE("textbook maximisation through slack columns") {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18; optimum 36 at (2, 6).
  std::vector<Rational> cost = {Rational(-3), Rational(-5), Rational(0), Rational(0), Rational(0)};
  std::vector<SparseRow> rows = {row({{0, 1}, {2, 1}}), row({{1, 2}, {3, 1}}), row({{0, 3}, {1, 2}, {4, 1}})};
  SimplexTableau lp(cost, rows, {Rational(4), Rational(12), Rational(18)}, {2, 3, 4}, 10000);
  REQUIRE(lp.solve() == SimplexTableau::Status::optimal);
  CHECK(lp.objective() == -36);
  const std::vector<Rational> x = lp.primal();
  CHECK(x[0] == 2);
  CHECK(x[1] == 6);
  // Duals of the resource rows: 0, 3/2, 1 (as prices on a minimisation they are negated).
  CHECK(lp.row_dual(0) == 0);
  CHECK(lp.row_dual(1) == make_rational(-3, 2));
  CHECK(lp.row_dual(2) == -1);
}

TEST_CASE("two-phase start without a basis") {
  // min x + y  s.t.  x + 2y = 4, 3x + y = 7  -> x = 2, y = 1
  std::vector<Rational> cost = {Rational(1), Rational(1)};
  SimplexTableau lp(cost, {row({{0, 1}, {1, 2}}), row({{0, 3}, {1, 1}})}, {Rational(4), Rational(7)}, {}, 10000);
  REQUIRE(lp.solve() == SimplexTableau::Status::optimal);
  CHECK(lp.objective() == 3);
  CHECK(lp.primal()[0] == 2);
  CHECK(lp.primal()[1] == 1);
}

TEST_CASE("redundant equality rows are tolerated") {
  std::vector<Rational> cost = {Rational(1), Rational(2)};
  SimplexTableau lp(cost, {row({{0, 1}, {1, 1}}), row({{0, 2}, {1, 2}})}, {Rational(1), Rational(2)}, {}, 10000);
  REQUIRE(lp.solve() == SimplexTableau::Status::optimal);
  CHECK(lp.objective() == 1);
}

TEST_CASE("infeasible and unbounded programs are reported") {
  SimplexTableau infeasible({Rational(1)}, {row({{0, 1}}), row({{0, 2}})}, {Rational(1), Rational(3)}, {}, 10000);
  CHECK(infeasible.solve() == SimplexTableau::Status::infeasible);
  // min -x  s.t.  x - y = 0
  SimplexTableau unbounded({Rational(-1), Rational(0)}, {row({{0, 1}, {1, -1}})}, {Rational(0)}, {}, 10000);
  CHECK(unbounded.solve() == SimplexTableau::Status::unbounded);
}

TEST_CASE("cuts added after optimisation are handled by the dual method") {
  // min x + 2y  s.t.  x <= 3, y <= 3; then x + y >= 5, then x + y >= 7.
  std::vector<Rational> cost = {Rational(1), Rational(2), Rational(0), Rational(0)};
  SimplexTableau lp(cost, {row({{0, 1}, {2, 1}}), row({{1, 1}, {3, 1}})}, {Rational(3), Rational(3)}, {2, 3}, 10000);
  REQUIRE(lp.solve() == SimplexTableau::Status::optimal);
  CHECK(lp.objective() == 0);
  lp.add_ge_row(row({{0, 1}, {1, 1}}), Rational(5));
  REQUIRE(lp.reoptimize_dual() == SimplexTableau::Status::optimal);
  CHECK(lp.objective() == 7);  // x = 3, y = 2
  CHECK(lp.primal()[0] == 3);
  CHECK(lp.primal()[1] == 2);
  lp.add_ge_row(row({{0, 1}, {1, 1}}), Rational(7));
  CHECK(lp.reoptimize_dual() == SimplexTableau::Status::infeasible);
}

TEST_CASE("columns can be generated after a solve") {
  // max a  s.t.  a <= 1; then a column b worth 2 sharing the row.
  std::vector<Rational> cost = {Rational(-1), Rational(0)};
  SimplexTableau lp(cost, {row({{0, 1}, {1, 1}})}, {Rational(1)}, {1}, 10000);
  REQUIRE(lp.solve() == SimplexTableau::Status::optimal);
  CHECK(lp.objective() == -1);
  const Rational reduced = lp.add_column(Rational(-2), row({{0, 1}}));
  CHECK(reduced == -1);
  REQUIRE(lp.solve() == SimplexTableau::Status::optimal);
  CHECK(lp.objective() == -2);
}

TEST_CASE("pivot limit raises") {
  std::vector<Rational> cost = {Rational(-3), Rational(-5), Rational(0), Rational(0), Rational(0)};
  std::vector<SparseRow> rows = {row({{0, 1}, {2, 1}}), row({{1, 2}, {3, 1}}), row({{0, 3}, {1, 2}, {4, 1}})};
  SimplexTableau lp(cost, rows, {Rational(4), Rational(12), Rational(18)}, {2, 3, 4}, 1);
  CHECK_THROWS_AS(lp.solve(), LimitError);
}
