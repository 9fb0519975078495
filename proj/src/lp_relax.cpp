#include "pathtsp/lp_relax.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "pathtsp/cut_enum.hpp"
#include "pathtsp/errors.hpp"
#include "pathtsp/simplex.hpp"

namespace pathtsp {

namespace {

bool violation_order(const ViolatedCut& a, const ViolatedCut& b) {
  const Rational gap_a = a.required - a.load;
  const Rational gap_b = b.required - b.load;
  if (gap_a != gap_b) return gap_a > gap_b;
  return a.side < b.side;
}

std::vector<ViolatedCut> separate_by_enumeration(const EdgeVector& x, const Instance& inst, std::size_t limit) {
  const int n = inst.n();
  const std::vector<Rational> dense = x.dense(n);
  CutEnumerator cuts(n, dense);
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const std::int64_t one = cuts.strict_bound(1);
  const std::int64_t two = cuts.strict_bound(2);
  const std::uint64_t s_bit = std::uint64_t{1} << inst.s();
  const std::uint64_t t_bit = std::uint64_t{1} << inst.t();

  struct Hit {
    std::int64_t gap;  // scaled violation
    std::uint64_t mask;
    std::int64_t load;
    bool odd;
  };
  // Keep the `limit` largest violations; order = larger gap, then smaller shore vector.
  auto better = [n](const Hit& a, const Hit& b) {
    if (a.gap != b.gap) return a.gap > b.gap;
    return mask_to_set(a.mask, n) < mask_to_set(b.mask, n);
  };
  std::vector<Hit> hits;
  cuts.for_each(0, [&](std::uint64_t mask, std::int64_t load) {
    if (mask == full) return;
    const bool odd = ((mask & s_bit) != 0) != ((mask & t_bit) != 0);
    if (load >= (odd ? one : two)) return;
    const std::int64_t need = odd ? one : two;
    hits.push_back(Hit{need - load, mask, load, odd});
    if (limit != 0 && hits.size() > 4 * limit) {
      std::nth_element(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(limit), hits.end(), better);
      hits.resize(limit);
    }
  });
  std::sort(hits.begin(), hits.end(), better);
  if (limit != 0 && hits.size() > limit) hits.resize(limit);
  std::vector<ViolatedCut> out;
  for (const Hit& h : hits) {
    out.push_back(ViolatedCut{mask_to_set(h.mask, n), cuts.unscale(h.load), make_rational(h.odd ? 1 : 2)});
  }
  return out;
}

std::vector<char> canonical_side(std::vector<char> side) {
  if (!side[0]) {
    for (char& c : side) c = static_cast<char>(!c);
  }
  return side;
}

std::vector<ViolatedCut> separate_by_flow(const EdgeVector& x, const Instance& inst, std::size_t limit) {
  const int n = inst.n();
  const std::vector<Rational> dense = x.dense(n);
  FlowNetwork network(n, dense);
  std::set<std::vector<char>> seen;
  std::vector<ViolatedCut> out;
  auto record = [&](std::vector<char> side, const Rational& load, long required) {
    side = canonical_side(std::move(side));
    if (seen.insert(side).second) out.push_back(ViolatedCut{std::move(side), load, make_rational(required)});
  };
  {
    FlowNetwork::Cut cut = network.min_cut(inst.s(), inst.t());
    if (cut.value < 1) record(cut.source_side, cut.value, 1);
  }
  const FlowNetwork joined = network.merged(inst.s(), inst.t());
  for (int v = 0; v < n; ++v) {
    if (v == inst.s() || v == inst.t()) continue;
    FlowNetwork::Cut cut = joined.min_cut(inst.s(), v);
    if (cut.value < 2) {
      cut.source_side[inst.t()] = 1;
      record(cut.source_side, cut.value, 2);
    }
  }
  std::sort(out.begin(), out.end(), violation_order);
  if (limit != 0 && out.size() > limit) out.resize(limit);
  return out;
}

SparseRow cut_row(const std::vector<char>& side, int n) {
  SparseRow row;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (side[u] != side[v]) row.emplace_back(edge_index(n, {u, v}), make_rational(1));
    }
  }
  return row;
}

}  // namespace

std::vector<ViolatedCut> separate(const EdgeVector& x, const Instance& inst, std::size_t limit) {
  if (inst.n() <= kEnumerationLimit) return separate_by_enumeration(x, inst, limit);
  return separate_by_flow(x, inst, limit);
}

LpSolution solve_lp(const Instance& inst, const LpOptions& options) {
  const int n = inst.n();
  const int m = edge_count(n);
  std::vector<Rational> cost(inst.costs().begin(), inst.costs().end());
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  for (int v = 0; v < n; ++v) {
    SparseRow row;
    for (int u = 0; u < n; ++u) {
      if (u != v) row.emplace_back(edge_index(n, make_edge(u, v)), make_rational(1));
    }
    rows.push_back(std::move(row));
    rhs.push_back(make_rational(v == inst.s() || v == inst.t() ? 1 : 2));
  }
  SimplexTableau lp(cost, rows, rhs, {}, options.pivot_limit);
  if (lp.solve() != SimplexTableau::Status::optimal) throw InternalError("degree-constrained model is not solvable");

  LpSolution solution;
  std::set<std::vector<char>> pool;
  for (int round = 0;; ++round) {
    const std::vector<Rational> values = lp.primal();
    EdgeVector x;
    for (int j = 0; j < m; ++j) {
      if (sgn(values[j]) != 0) x.set(edge_at(n, j), values[j]);
    }
    std::vector<ViolatedCut> cuts = separate(x, inst, options.cuts_per_round);
    if (cuts.empty()) {
      solution.x = std::move(x);
      solution.value = lp.objective();
      solution.rounds = round;
      solution.cut_rows = static_cast<int>(pool.size());
      return solution;
    }
    if (round >= options.max_rounds) throw LimitError("cutting-plane round limit exceeded");
    for (const ViolatedCut& cut : cuts) {
      if (!pool.insert(cut.side).second) throw InternalError("separation returned a cut already in the model");
      lp.add_ge_row(cut_row(cut.side, n), cut.required);
    }
    if (lp.reoptimize_dual() != SimplexTableau::Status::optimal) throw InternalError("cut model became infeasible");
  }
}

std::string emit_solution(const LpSolution& solution) {
  std::ostringstream out;
  out << "# value " << to_string(solution.value) << "\n";
  for (const auto& [e, value] : solution.x.entries()) out << e.u << ' ' << e.v << ' ' << to_string(value) << "\n";
  return out.str();
}

LpSolution parse_solution(std::string_view text, const Instance& inst) {
  LpSolution solution;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, value;
    if (!(fields >> a)) continue;
    std::string extra;
    if (!(fields >> b >> value) || (fields >> extra)) {
      throw ParseError("solution line " + std::to_string(line_no) + ": expected 'u v value'");
    }
    int u = 0;
    int v = 0;
    try {
      u = std::stoi(a);
      v = std::stoi(b);
    } catch (const std::exception&) {
      throw ParseError("solution line " + std::to_string(line_no) + ": bad vertex id");
    }
    if (u < 0 || v < 0 || u >= inst.n() || v >= inst.n() || u == v) {
      throw ParseError("solution line " + std::to_string(line_no) + ": vertex out of range");
    }
    const Edge e = make_edge(u, v);
    if (solution.x.entries().count(e) != 0) throw ParseError("solution line " + std::to_string(line_no) + ": duplicate edge");
    const Rational r = parse_rational(value);
    if (r < 0) throw ParseError("solution line " + std::to_string(line_no) + ": negative value");
    solution.x.set(e, r);
  }
  solution.value = inst.cost_of(solution.x);
  return solution;
}

}  // namespace pathtsp
