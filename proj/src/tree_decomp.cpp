#include "pathtsp/tree_decomp.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pathtsp/errors.hpp"
#include "pathtsp/simplex.hpp"

namespace pathtsp {

Tree min_spanning_tree(int n, const std::vector<std::pair<Edge, Rational>>& weighted_edges) {
  std::vector<std::size_t> order(weighted_edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (weighted_edges[a].second != weighted_edges[b].second) return weighted_edges[a].second < weighted_edges[b].second;
    return weighted_edges[a].first < weighted_edges[b].first;
  });
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::vector<Edge> chosen;
  for (std::size_t idx : order) {
    const Edge e = weighted_edges[idx].first;
    const int a = find(e.u);
    const int b = find(e.v);
    if (a == b) continue;
    parent[a] = b;
    chosen.push_back(e);
  }
  if (static_cast<int>(chosen.size()) != n - 1) throw PreconditionError("edge set does not connect all vertices");
  return Tree(std::move(chosen));
}

TreeDistribution decompose(const EdgeVector& x, int n, std::size_t pivot_limit) {
  const std::vector<Edge> support = x.support();
  const int rows = static_cast<int>(support.size());
  for (const Edge& e : support) {
    if (x[e] < 0) throw PreconditionError("negative entry in decomposition target");
  }
  // Rows: one per support edge. Columns 0..rows-1 are the slacks.
  std::vector<Rational> cost(rows, Rational(0));
  std::vector<SparseRow> a(rows);
  std::vector<Rational> rhs(rows);
  std::vector<int> units(rows);
  std::map<Edge, int> row_of;
  for (int r = 0; r < rows; ++r) {
    a[r].emplace_back(r, make_rational(1));
    rhs[r] = x[support[r]];
    units[r] = r;
    row_of.emplace(support[r], r);
  }
  SimplexTableau master(cost, a, rhs, units, pivot_limit);
  std::vector<Tree> columns;
  if (master.solve() != SimplexTableau::Status::optimal) throw InternalError("packing master failed");
  for (;;) {
    std::vector<std::pair<Edge, Rational>> weights;
    for (int r = 0; r < rows; ++r) weights.emplace_back(support[r], -master.row_dual(r));
    Tree tree = min_spanning_tree(n, weights);
    Rational weight = 0;
    for (const Edge& e : tree.edges()) weight -= master.row_dual(row_of.at(e));
    if (weight >= 1) break;
    SparseRow coefficients;
    for (const Edge& e : tree.edges()) coefficients.emplace_back(row_of.at(e), make_rational(1));
    const Rational reduced = master.add_column(make_rational(-1), coefficients);
    if (sgn(reduced) >= 0) throw InternalError("priced column does not improve the master");
    columns.push_back(std::move(tree));
    if (master.solve() != SimplexTableau::Status::optimal) throw InternalError("packing master became unbounded");
  }
  if (master.objective() != -1) throw PreconditionError("vector is not in the spanning tree polytope");
  const std::vector<Rational> values = master.primal();
  TreeDistribution d;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Rational& p = values[rows + c];
    if (sgn(p) > 0) d.add(columns[c], p, "decomposition");
  }
  if (d.reconstruct() != x) throw InternalError("decomposition does not reconstruct its target");
  return d;
}

RoundedDistribution round_distribution(const TreeDistribution& d, const Rational& eps, int n) {
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  const Rational unit = eps / (n * n);
  RoundedDistribution out;
  for (const Atom& atom : d.atoms()) {
    const Rational steps(floor(atom.weight / unit));
    const Rational kept = steps * unit;
    const Rational rest = atom.weight - kept;
    if (sgn(kept) > 0) out.rounded.add(atom.tree, kept, atom.origin);
    if (sgn(rest) > 0) out.residual.add(atom.tree, rest, "residual");
  }
  return out;
}

bool on_grid(const TreeDistribution& d, const Rational& eps, int n) {
  const Rational unit = eps / (n * n);
  for (const Atom& atom : d.atoms()) {
    const Rational steps = atom.weight / unit;
    if (steps.get_den() != 1) return false;
  }
  return true;
}

}  // namespace pathtsp
