#pragma once

// Random cut chains and tree distributions that are not tied to any LP point.
// Trees favour edges between neighbouring levels so that the exchangeable
// 120/011 pairs show up often.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "pathtsp/cuts.hpp"
#include "pathtsp/reassembler.hpp"
#include "pathtsp/tree.hpp"

namespace synthetic {

using pathtsp::CutChain;
using pathtsp::Edge;
using pathtsp::Rational;
using pathtsp::Tree;
using pathtsp::TreeDistribution;

/// s = 0, t = n-1, every internal level non-empty; loads 1 at the ends and
/// 3/2 inside so every level is narrow for any ξ in (3/2, 2).
inline CutChain random_chain(int n, std::mt19937_64& rng) {
  const int levels = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 2));
  std::vector<int> rank(n, 0);
  rank[n - 1] = levels;
  std::vector<int> inner(n - 2);
  std::iota(inner.begin(), inner.end(), 1);
  std::shuffle(inner.begin(), inner.end(), rng);
  for (std::size_t i = 0; i < inner.size(); ++i) {
    rank[inner[i]] = i + 1 < static_cast<std::size_t>(levels) ? static_cast<int>(i) + 1
                                                                : 1 + static_cast<int>(rng() % (levels - 1));
  }
  std::vector<Rational> loads(levels, Rational(3, 2));
  loads.front() = 1;
  loads.back() = 1;
  return CutChain(n, 0, n - 1, rank, loads, Rational(173, 100));
}

/// Kruskal on random weights that grow with the number of levels an edge spans.
inline Tree random_local_tree(const CutChain& chain, std::mt19937_64& rng) {
  const int n = chain.n();
  struct Candidate {
    std::uint64_t key;
    Edge e;
  };
  std::vector<Candidate> cand;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const auto [lo, hi] = chain.level_span(pathtsp::make_edge(u, v));
      const std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
      cand.push_back({span * span * 16 + rng() % 160, pathtsp::make_edge(u, v)});
    }
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    return a.key != b.key ? a.key < b.key : a.e < b.e;
  });
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<Edge> edges;
  for (const Candidate& c : cand) {
    const int a = find(c.e.u);
    const int b = find(c.e.v);
    if (a == b) continue;
    parent[a] = b;
    edges.push_back(c.e);
  }
  return Tree(edges);
}

/// A convex combination with weights on the ε/n² grid.
inline TreeDistribution random_distribution(const CutChain& chain, const Rational& eps, int trees, std::mt19937_64& rng) {
  const Rational unit = eps / (chain.n() * chain.n());
  std::vector<long> parts(trees);
  long total = 0;
  for (long& p : parts) total += p = 1 + static_cast<long>(rng() % 40);
  Rational left = 1;
  TreeDistribution d;
  for (int i = 0; i < trees; ++i) {
    Rational w = 0;
    if (i + 1 == trees) {
      w = left;
    } else {
      const Rational raw = Rational(parts[i]) / total;
      const mpz_class steps(Rational(raw / unit));  // truncates toward zero
      w = Rational(steps) * unit;
    }
    left -= w;
    if (w > 0) d.add(random_local_tree(chain, rng), w, "synthetic");
  }
  return d;
}

}  // namespace synthetic
