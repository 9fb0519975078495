#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "pathtsp/errors.hpp"
#include "pathtsp/instance.hpp"
#include "pathtsp/rational.hpp"

namespace pathtsp {

/// Largest vertex count for which exhaustive subset enumeration is used.
inline constexpr int kEnumerationLimit = 22;

/// Walks every vertex set U containing a fixed anchor (2^(n-1) sets) in Gray-code
/// order and reports x(δ(U)) scaled to an integer. Weights are indexed by
/// edge_index. Throws LimitError when the scaled weights overflow 62 bits.
class CutEnumerator {
 public:
  CutEnumerator(int n, std::span<const Rational> weights);

  int n() const { return n_; }
  const mpz_class& scale() const { return scale_; }

  /// Smallest integer m such that (load < bound) iff (scaled load < m).
  std::int64_t strict_bound(const Rational& bound) const;
  Rational unscale(std::int64_t scaled) const;

  /// visit(mask, scaled_load) for every U ∋ anchor, including U = V.
  template <class Visit>
  void for_each(int anchor, Visit&& visit) const {
    std::vector<int> others;
    for (int v = 0; v < n_; ++v) {
      if (v != anchor) others.push_back(v);
    }
    std::uint64_t mask = std::uint64_t{1} << anchor;
    std::int64_t load = 0;
    for (int v = 0; v < n_; ++v) load += w(anchor, v);
    visit(mask, load);
    const std::uint64_t count = std::uint64_t{1} << others.size();
    for (std::uint64_t i = 1; i < count; ++i) {
      const int v = others[std::countr_zero(i)];
      const std::uint64_t bit = std::uint64_t{1} << v;
      const bool was_in = (mask & bit) != 0;
      const std::int64_t* row = &w_[static_cast<std::size_t>(v) * n_];
      std::int64_t same = 0;
      std::int64_t other = 0;
      for (int u = 0; u < n_; ++u) {
        if (u == v) continue;
        if (((mask >> u) & 1U) == static_cast<std::uint64_t>(was_in)) {
          same += row[u];
        } else {
          other += row[u];
        }
      }
      load += same - other;
      mask ^= bit;
      visit(mask, load);
    }
  }

 private:
  std::int64_t w(int a, int b) const { return w_[static_cast<std::size_t>(a) * n_ + b]; }

  int n_;
  mpz_class scale_;
  std::vector<std::int64_t> w_;  // dense n x n, zero diagonal
};

inline std::vector<char> mask_to_set(std::uint64_t mask, int n) {
  std::vector<char> in(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) in[v] = static_cast<char>((mask >> v) & 1U);
  return in;
}

/// Exact minimum cuts on a weighted graph via Dinic's algorithm on scaled integers.
class FlowNetwork {
 public:
  FlowNetwork(int n, std::span<const Rational> weights);

  struct Cut {
    Rational value;
    std::vector<char> source_side;  // vertices reachable from the source in the residual graph
  };

  Cut min_cut(int source, int sink) const;

  /// Graph with vertices `a` and `b` identified; vertex ids are unchanged and
  /// `b` becomes isolated.
  FlowNetwork merged(int a, int b) const;

 private:
  FlowNetwork(int n, mpz_class scale, std::vector<std::int64_t> cap) : n_(n), scale_(std::move(scale)), cap_(std::move(cap)) {}

  int n_;
  mpz_class scale_;
  std::vector<std::int64_t> cap_;  // dense symmetric n x n
};

}  // namespace pathtsp
