#include "pathtsp/cuts.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "pathtsp/cut_enum.hpp"
#include "pathtsp/errors.hpp"

namespace pathtsp {

CutChain::CutChain(int n, int s, int t, std::vector<int> rank, std::vector<Rational> loads, Rational xi)
    : n_(n), s_(s), t_(t), rank_(std::move(rank)), loads_(std::move(loads)), xi_(std::move(xi)) {
  const int levels = static_cast<int>(loads_.size());
  if (static_cast<int>(rank_.size()) != n_ || levels < 1) throw PreconditionError("chain shape mismatch");
  if (s_ == t_ || rank_[s_] != 0 || rank_[t_] != levels) throw PreconditionError("chain must start at {s} and end at V-{t}");
  std::vector<int> used(levels + 1, 0);
  for (int v = 0; v < n_; ++v) {
    if (rank_[v] < 0 || rank_[v] > levels) throw PreconditionError("vertex rank out of range");
    ++used[rank_[v]];
  }
  if (used[0] != 1 || used[levels] != 1) throw PreconditionError("only s may start and only t may end the chain");
  for (int j = 1; j < levels; ++j) {
    if (used[j] == 0) throw PreconditionError("chain levels must be strictly nested");
  }
  if (xi_ <= 1) throw PreconditionError("xi must exceed 1");
  xi_index_.assign(levels, -1);
  for (int j = 0; j < levels; ++j) {
    if (loads_[j] < xi_) {
      xi_index_[j] = static_cast<int>(xi_levels_.size());
      xi_levels_.push_back(j);
    }
  }
  if (xi_index_[0] < 0 || xi_index_[levels - 1] < 0) throw PreconditionError("end cuts must be xi-narrow");
}

CutChain CutChain::from_levels(int n, int s, int t, const std::vector<std::vector<int>>& levels, std::vector<Rational> loads,
                               Rational xi) {
  const int count = static_cast<int>(levels.size());
  std::vector<int> rank(n, count);
  for (int j = count - 1; j >= 0; --j) {
    for (int v : levels[j]) rank[v] = j;
  }
  CutChain chain(n, s, t, rank, std::move(loads), std::move(xi));
  for (int j = 0; j < count; ++j) {
    std::vector<int> members = levels[j];
    std::sort(members.begin(), members.end());
    if (members != chain.level_members(j)) throw PreconditionError("levels are not nested");
  }
  return chain;
}

CutChain CutChain::with_xi(const Rational& xi) const { return CutChain(n_, s_, t_, rank_, loads_, xi); }

CutChain CutChain::reversed() const {
  const int levels = level_count();
  std::vector<int> rank(n_);
  for (int v = 0; v < n_; ++v) rank[v] = levels - rank_[v];
  std::vector<Rational> loads(loads_.rbegin(), loads_.rend());
  return CutChain(n_, t_, s_, std::move(rank), std::move(loads), xi_);
}

std::vector<char> CutChain::level_set(int level) const {
  std::vector<char> in(n_);
  for (int v = 0; v < n_; ++v) in[v] = static_cast<char>(rank_[v] <= level);
  return in;
}

std::vector<int> CutChain::level_members(int level) const {
  std::vector<int> out;
  for (int v = 0; v < n_; ++v) {
    if (rank_[v] <= level) out.push_back(v);
  }
  return out;
}

std::pair<int, int> CutChain::level_span(Edge e) const {
  const int a = rank_[e.u];
  const int b = rank_[e.v];
  return {std::min(a, b), std::max(a, b)};
}

std::pair<int, int> CutChain::xi_span(Edge e) const {
  const auto [lo, hi] = level_span(e);
  const auto first = std::lower_bound(xi_levels_.begin(), xi_levels_.end(), lo);
  const auto last = std::lower_bound(xi_levels_.begin(), xi_levels_.end(), hi);
  return {static_cast<int>(first - xi_levels_.begin()), static_cast<int>(last - xi_levels_.begin())};
}

std::vector<int> CutChain::crossings(const Tree& tree) const {
  std::vector<int> diff(level_count() + 1, 0);
  for (const Edge& e : tree.edges()) {
    const auto [lo, hi] = level_span(e);
    ++diff[lo];
    --diff[hi];
  }
  std::vector<int> out(level_count());
  int running = 0;
  for (int j = 0; j < level_count(); ++j) {
    running += diff[j];
    out[j] = running;
  }
  return out;
}

namespace {

CutChain chain_from_shores(const Instance& inst, std::vector<std::pair<std::vector<char>, Rational>> shores,
                           const Rational& xi) {
  const int n = inst.n();
  auto size_of = [](const std::vector<char>& side) { return std::count(side.begin(), side.end(), 1); };
  std::sort(shores.begin(), shores.end(), [&](const auto& a, const auto& b) { return size_of(a.first) < size_of(b.first); });
  std::vector<int> rank(n, static_cast<int>(shores.size()));
  std::vector<Rational> loads;
  for (std::size_t j = 0; j < shores.size(); ++j) {
    const std::vector<char>& side = shores[j].first;
    for (int v = 0; v < n; ++v) {
      if (side[v] && rank[v] == static_cast<int>(shores.size())) rank[v] = static_cast<int>(j);
      if (!side[v] && rank[v] <= static_cast<int>(j)) throw PreconditionError("narrow cuts do not form a chain");
    }
    loads.push_back(shores[j].second);
  }
  return CutChain(n, inst.s(), inst.t(), std::move(rank), std::move(loads), xi);
}

}  // namespace

CutChain narrow_cuts(const EdgeVector& x, const Instance& inst, const Rational& xi) {
  const int n = inst.n();
  const std::vector<Rational> dense = x.dense(n);
  std::vector<std::pair<std::vector<char>, Rational>> shores;
  if (n <= kEnumerationLimit) {
    CutEnumerator cuts(n, dense);
    const std::int64_t two = cuts.strict_bound(2);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    const std::uint64_t t_bit = std::uint64_t{1} << inst.t();
    bool even_violation = false;
    std::vector<std::pair<std::uint64_t, std::int64_t>> found;
    cuts.for_each(inst.s(), [&](std::uint64_t mask, std::int64_t load) {
      if (mask == full || load >= two) return;
      if (mask & t_bit) {
        even_violation = true;
      } else {
        found.emplace_back(mask, load);
      }
    });
    if (even_violation) throw PreconditionError("an even cut has load below 2");
    for (const auto& [mask, load] : found) shores.emplace_back(mask_to_set(mask, n), cuts.unscale(load));
  } else {
    FlowNetwork network(n, dense);
    std::set<std::vector<char>> seen;
    {
      const FlowNetwork joined = network.merged(inst.s(), inst.t());
      for (int v = 0; v < n; ++v) {
        if (v != inst.s() && v != inst.t() && joined.min_cut(inst.s(), v).value < 2) {
          throw PreconditionError("an even cut has load below 2");
        }
      }
    }
    for (int u = 0; u < n; ++u) {
      if (u == inst.t()) continue;
      const FlowNetwork with_u = u == inst.s() ? network : network.merged(inst.s(), u);
      for (int w = 0; w < n; ++w) {
        if (w == inst.s() || w == u) continue;
        const FlowNetwork both = w == inst.t() ? with_u : with_u.merged(inst.t(), w);
        FlowNetwork::Cut cut = both.min_cut(inst.s(), inst.t());
        if (cut.value >= 2) continue;
        cut.source_side[u] = 1;
        if (seen.insert(cut.source_side).second) shores.emplace_back(cut.source_side, cut.value);
      }
    }
  }
  return chain_from_shores(inst, std::move(shores), xi);
}

std::vector<IntersectionMargin> pairwise_intersection_check(const CutChain& chain, const EdgeVector& x) {
  std::vector<IntersectionMargin> out;
  const int levels = chain.level_count();
  for (int i = 0; i < levels; ++i) {
    for (int j = i + 1; j < levels; ++j) {
      Rational shared = 0;
      for (const auto& [e, value] : x.entries()) {
        const auto [lo, hi] = chain.level_span(e);
        if (lo <= i && j < hi) shared += value;
      }
      Rational margin = (chain.load(i) + chain.load(j)) / 2 - 1 - shared;
      out.push_back(IntersectionMargin{i, j, shared, margin});
    }
  }
  return out;
}

std::vector<CutStats> cut_stats(const CutChain& chain, const TreeDistribution& d) {
  std::vector<CutStats> out(chain.level_count());
  for (int j = 0; j < chain.level_count(); ++j) {
    out[j].level = j;
    out[j].load = chain.load(j);
  }
  Rational product;
  for (const Atom& atom : d.atoms()) {
    const std::vector<int> count = chain.crossings(atom.tree);
    for (int j = 0; j < chain.level_count(); ++j) {
      const int m = count[j];
      CutStats& st = out[j];
      if (m == 0) st.tree_disjoint = true;
      if (m % 2 == 0) st.p_even += atom.weight;
      if (m == 1) st.p_one += atom.weight;
      if (m >= 1) {
        product = atom.weight * ((m - 1) / 2);
        st.p_many += product;
      }
      product = atom.weight * m;
      st.crossing_mass += product;
    }
  }
  return out;
}

std::vector<std::string> cut_stats_violations(const std::vector<CutStats>& stats) {
  std::vector<std::string> out;
  for (const CutStats& st : stats) {
    const std::string where = "cut " + std::to_string(st.level) + ": ";
    if (st.crossing_mass != st.load) out.push_back(where + "crossing mass differs from load");
    if (st.tree_disjoint) out.push_back(where + "a tree misses the cut");
    if (st.p_even > st.load - 1) out.push_back(where + "even mass exceeds load - 1");
    if (st.p_one < 2 - st.load) out.push_back(where + "single-crossing mass below 2 - load");
    if (st.p_many != (st.load - 1 - st.p_even) / 2) out.push_back(where + "many-crossing mass identity fails");
  }
  return out;
}

std::vector<PackingMargin> packing_check(const CutChain& chain, const TreeDistribution& d) {
  std::map<Edge, PackingMargin> terms;
  auto slot = [&](Edge e) -> PackingMargin& {
    auto it = terms.find(e);
    if (it == terms.end()) it = terms.emplace(e, PackingMargin{e, Rational(0), Rational(0)}).first;
    return it->second;
  };
  for (const Atom& atom : d.atoms()) {
    for (const Edge& e : tree_path(atom.tree, chain.n(), chain.s(), chain.t())) slot(e).path_mass += atom.weight;
    const std::vector<int> count = chain.crossings(atom.tree);
    for (const Edge& e : atom.tree.edges()) {
      const auto [lo, hi] = chain.level_span(e);
      for (int j = lo; j < hi; ++j) {
        if (count[j] == 1) slot(e).singleton_mass += atom.weight;
      }
    }
  }
  std::vector<PackingMargin> out;
  for (auto& [e, term] : terms) out.push_back(std::move(term));
  return out;
}

}  // namespace pathtsp
