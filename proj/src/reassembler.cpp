#include "pathtsp/reassembler.hpp"

#include <algorithm>
#include <sstream>

#include "pathtsp/errors.hpp"
#include "pathtsp/tree_decomp.hpp"

namespace pathtsp {

std::string TypeCode::str() const {
  if (good) return "GOOD";
  return std::to_string(l) + std::to_string(m) + std::to_string(r);
}

TreeCutProfile profile_tree(const Tree& tree, const CutChain& chain) {
  const int cuts = chain.xi_count();
  TreeCutProfile p;
  std::vector<int> diff(cuts + 1, 0);
  for (const Edge& e : tree.edges()) {
    const auto [lo, hi] = chain.xi_span(e);
    ++diff[lo];
    --diff[hi];
  }
  p.count.assign(cuts, 0);
  p.sole_edge.assign(cuts, Edge{});
  int running = 0;
  for (int q = 0; q < cuts; ++q) {
    running += diff[q];
    p.count[q] = running;
  }
  for (const Edge& e : tree.edges()) {
    const auto [lo, hi] = chain.xi_span(e);
    bool alone = false;
    for (int q = lo; q < hi; ++q) {
      if (p.count[q] == 1) {
        p.sole_edge[q] = e;
        alone = true;
      }
    }
    if (alone) p.singleton_edges.push_back(e);
  }
  std::sort(p.singleton_edges.begin(), p.singleton_edges.end());
  return p;
}

TypeCode classify(const Tree& tree, const TreeCutProfile& profile, const CutChain& chain, int q) {
  if (q <= 0 || q >= chain.xi_count() - 1) throw PreconditionError("types are defined only at internal xi-narrow cuts");
  TypeCode type;
  bool singleton = false;
  for (const Edge& e : tree.edges()) {
    const auto [lo, hi] = chain.xi_span(e);
    if (!(lo <= q && q < hi)) continue;
    ++type.m;
    if (lo <= q - 1) ++type.l;
    if (hi > q + 1) ++type.r;
    if (std::binary_search(profile.singleton_edges.begin(), profile.singleton_edges.end(), e)) singleton = true;
  }
  type.good = type.m >= 3 || type.l + type.r >= 3 || (type.l + type.r >= 1 && !singleton);
  return type;
}

TypeCode classify(const Tree& tree, const CutChain& chain, int q) {
  return classify(tree, profile_tree(tree, chain), chain, q);
}

ExchangeRecord exchange(const Tree& s1, const Tree& s2, const CutChain& chain, int q) {
  const TreeCutProfile p1 = profile_tree(s1, chain);
  const TreeCutProfile p2 = profile_tree(s2, chain);
  if (!classify(s1, p1, chain, q).is("120")) throw PreconditionError("first tree must have type 120 at the cut");
  if (!classify(s2, p2, chain, q).is("011")) throw PreconditionError("second tree must have type 011 at the cut");

  ExchangeRecord rec;
  rec.cut = q;
  rec.s1 = s1;
  rec.s2 = s2;
  rec.e2 = p2.sole_edge[q];
  rec.k = chain.xi_span(rec.e2).second - 1;

  const std::vector<Edge> path = tree_path(s1, chain.n(), chain.s(), chain.t());
  std::vector<Edge> in_cut;
  for (const Edge& e : s1.edges()) {
    if (chain.xi_crossed(e, q)) in_cut.push_back(e);
  }
  int on_path = 0;
  for (const Edge& e : in_cut) {
    if (std::find(path.begin(), path.end(), e) != path.end()) {
      rec.e0 = e;
      ++on_path;
    } else {
      rec.e1 = e;
    }
  }
  if (in_cut.size() != 2 || on_path != 1) throw InternalError("type-120 tree does not meet the cut in one path and one non-path edge");
  rec.h = -1;
  for (int j = q - 1; j >= 0; --j) {
    if (p1.count[j] == 1 && p1.sole_edge[j] == rec.e0) {
      rec.h = j;
      break;
    }
  }
  if (rec.h < 0) throw InternalError("no earlier cut is crossed by the path edge alone");
  rec.s1_new = s1.exchanged(rec.e1, rec.e2);
  rec.s2_new = s2.exchanged(rec.e2, rec.e1);
  if (!is_spanning_tree(rec.s1_new, chain.n()) || !is_spanning_tree(rec.s2_new, chain.n())) {
    throw InternalError("edge exchange did not produce spanning trees");
  }
  return rec;
}

std::vector<std::string> validate_exchange(const ExchangeRecord& rec, const CutChain& original) {
  const CutChain chain = rec.mirrored ? original.reversed() : original;
  std::vector<std::string> bad;
  const std::string where = "exchange at cut " + std::to_string(rec.cut) + (rec.mirrored ? " (mirrored)" : "") + ": ";
  if (!is_spanning_tree(rec.s1_new, chain.n()) || !is_spanning_tree(rec.s2_new, chain.n())) {
    bad.push_back(where + "result is not a pair of spanning trees");
    return bad;
  }
  if (rec.s1_new != rec.s1.exchanged(rec.e1, rec.e2) || rec.s2_new != rec.s2.exchanged(rec.e2, rec.e1)) {
    bad.push_back(where + "result does not match the recorded edges");
  }
  const int last = chain.xi_count() - 1;
  const TreeCutProfile a1 = profile_tree(rec.s1, chain), a2 = profile_tree(rec.s2, chain);
  const TreeCutProfile b1 = profile_tree(rec.s1_new, chain), b2 = profile_tree(rec.s2_new, chain);
  std::vector<TypeCode> t1(last), t2(last), n1(last), n2(last);
  for (int j = 1; j < last; ++j) {
    t1[j] = classify(rec.s1, a1, chain, j);
    t2[j] = classify(rec.s2, a2, chain, j);
    n1[j] = classify(rec.s1_new, b1, chain, j);
    n2[j] = classify(rec.s2_new, b2, chain, j);
  }
  const int i = rec.cut;
  for (int j = 1; j < i; ++j) {
    if (t1[j].str() != n1[j].str() || t2[j].str() != n2[j].str()) {
      bad.push_back(where + "(a) type changed at earlier cut " + std::to_string(j));
    }
  }
  if (!n1[i].is("121") || !n2[i].is("010")) {
    bad.push_back(where + "(b) new types are " + n1[i].str() + "/" + n2[i].str());
  }
  auto left_bad = [](const TypeCode& t) { return t.is("110") || t.is("021"); };
  for (int j = i + 1; j < last; ++j) {
    if (left_bad(n1[j]) && n1[j].str() != t1[j].str()) bad.push_back(where + "(c) fails at cut " + std::to_string(j));
    if (left_bad(n2[j]) && n2[j].str() != t2[j].str()) {
      bool covered = true;
      for (int h = i + 1; h <= j; ++h) covered = covered && n1[h].good;
      if (!covered) bad.push_back(where + "(d) fails at cut " + std::to_string(j));
    }
  }
  for (int j = i + 1; j <= std::min(rec.k, last - 1); ++j) {
    if (!n1[j].good) bad.push_back(where + "first new tree not GOOD at cut " + std::to_string(j));
  }
  return bad;
}

namespace {

void require_grid(const TreeDistribution& d, const Rational& eps, int n) {
  if (!on_grid(d, eps, n)) throw PreconditionError("weights must be integer multiples of eps/n^2");
}

}  // namespace

TreeDistribution sweep_right(const TreeDistribution& d, const CutChain& chain, const Rational& eps,
                             std::vector<ExchangeRecord>* log) {
  require_grid(d, eps, chain.n());
  TreeDistribution current = d;
  for (int q = 1; q + 1 < chain.xi_count(); ++q) {
    for (;;) {
      const Atom* first120 = nullptr;
      const Atom* first011 = nullptr;
      for (const Atom& atom : current.atoms()) {
        const TypeCode type = classify(atom.tree, chain, q);
        if (!first120 && type.is("120")) first120 = &atom;
        if (!first011 && type.is("011")) first011 = &atom;
        if (first120 && first011) break;
      }
      if (!first120 || !first011) break;
      ExchangeRecord rec = exchange(first120->tree, first011->tree, chain, q);
      rec.delta = min_of(first120->weight, first011->weight);
      current.remove(rec.s1, rec.delta);
      current.remove(rec.s2, rec.delta);
      current.add(rec.s1_new, rec.delta, "exchange");
      current.add(rec.s2_new, rec.delta, "exchange");
      if (log) log->push_back(std::move(rec));
    }
  }
  return current;
}

TreeDistribution sweep_left(const TreeDistribution& d, const CutChain& chain, const Rational& eps,
                            std::vector<ExchangeRecord>* log) {
  std::vector<ExchangeRecord> local;
  TreeDistribution out = sweep_right(d, chain.reversed(), eps, &local);
  if (log) {
    for (ExchangeRecord& rec : local) {
      rec.mirrored = true;
      log->push_back(std::move(rec));
    }
  }
  return out;
}

std::map<std::string, Rational> type_census(const TreeDistribution& d, const CutChain& chain, int q) {
  std::map<std::string, Rational> census;
  for (const Atom& atom : d.atoms()) census[classify(atom.tree, chain, q).str()] += atom.weight;
  return census;
}

std::vector<ReassemblyCheck> reassembly_condition(const TreeDistribution& d, const CutChain& chain, const Rational& eps) {
  std::vector<ReassemblyCheck> out;
  for (int q = 1; q + 1 < chain.xi_count(); ++q) {
    std::map<std::string, Rational> census = type_census(d, chain, q);
    ReassemblyCheck check;
    check.cut = q;
    check.sums[0] = census["120"] + census["021"];
    check.sums[1] = census["011"] + census["110"];
    check.sums[2] = census["011"] + census["021"];
    check.sums[3] = census["120"] + census["110"];
    check.good = census["GOOD"];
    const Rational bound = check.good + eps;
    check.holds = std::any_of(std::begin(check.sums), std::end(check.sums), [&](const Rational& v) { return v <= bound; });
    out.push_back(std::move(check));
  }
  return out;
}

Reassembly reassemble_distribution(const TreeDistribution& initial, const CutChain& chain, const Rational& eps) {
  Reassembly out{chain, initial, {}, {}, {}, {}, {}, {}, {}};
  RoundedDistribution rounded = round_distribution(initial, eps, chain.n());
  out.rounded = std::move(rounded.rounded);
  out.residual = std::move(rounded.residual);
  out.after_left = sweep_left(out.rounded, chain, eps, &out.left_log);
  out.after_right = sweep_right(out.after_left, chain, eps, &out.right_log);
  out.final = out.after_right;
  for (const Atom& atom : out.residual.atoms()) out.final.add(atom.tree, atom.weight, atom.origin);
  return out;
}

Reassembly reassemble(const EdgeVector& xstar, const Instance& inst, const Rational& xi, const Rational& eps) {
  if (xi <= make_rational(3, 2) || xi >= 2) throw PreconditionError("xi must lie strictly between 3/2 and 2");
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  const CutChain chain = narrow_cuts(xstar, inst, xi);
  return reassemble_distribution(decompose(xstar, inst.n()), chain, eps);
}

std::string format_exchange(const ExchangeRecord& rec) {
  std::ostringstream out;
  auto edge = [](const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); };
  out << "exchange pass=" << (rec.mirrored ? "left" : "right") << " cut=" << rec.cut << " h=" << rec.h << " k=" << rec.k
      << " e0=" << edge(rec.e0) << " e1=" << edge(rec.e1) << " e2=" << edge(rec.e2) << " delta=" << to_string(rec.delta);
  return out.str();
}

}  // namespace pathtsp
