#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathtsp/rational.hpp"

namespace pathtsp {

/// Unordered vertex pair, stored with the smaller id first.
struct Edge {
  int u = 0;
  int v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Canonical edge; throws PreconditionError on a loop.
Edge make_edge(int a, int b);

inline int edge_count(int n) { return n * (n - 1) / 2; }

/// Position of `e` in the lexicographic enumeration of the complete graph's edges.
inline int edge_index(int n, Edge e) { return e.u * (2 * n - e.u - 1) / 2 + (e.v - e.u - 1); }

Edge edge_at(int n, int index);

inline bool crosses(Edge e, std::span<const char> in_set) { return in_set[e.u] != in_set[e.v]; }

/// Sparse exact vector over the complete graph's edges; absent entries are zero.
class EdgeVector {
 public:
  using Map = std::map<Edge, Rational>;

  EdgeVector() = default;

  Rational operator[](Edge e) const;
  void set(Edge e, const Rational& value);
  void add(Edge e, const Rational& delta);

  /// x(F)
  Rational sum(std::span<const Edge> edges) const;
  Rational total() const;

  /// x(δ(U)) for a membership vector over the vertices.
  Rational cut_load(std::span<const char> in_set) const;

  const Map& entries() const { return entries_; }
  std::vector<Edge> support() const;
  std::vector<Rational> dense(int n) const;
  bool empty() const { return entries_.empty(); }

  bool operator==(const EdgeVector&) const = default;

 private:
  Map entries_;
};

/// Metric s-t-path TSP instance with exact costs on all pairs.
class Instance {
 public:
  Instance(int n, int s, int t, std::vector<Rational> cost_by_edge_index);

  int n() const { return n_; }
  int s() const { return s_; }
  int t() const { return t_; }

  const Rational& cost(int a, int b) const { return cost_[edge_index(n_, make_edge(a, b))]; }
  const Rational& cost(Edge e) const { return cost_[edge_index(n_, e)]; }
  std::span<const Rational> costs() const { return cost_; }

  /// c(x)
  Rational cost_of(const EdgeVector& x) const;
  /// c(F) for an edge list (repeats counted).
  Rational cost_of(std::span<const Edge> edges) const;

  bool operator==(const Instance&) const = default;

 private:
  int n_;
  int s_;
  int t_;
  std::vector<Rational> cost_;
};

struct Triple {
  int u;
  int v;
  int w;
  auto operator<=>(const Triple&) const = default;
};

/// Every ordered triple (u,v,w) with c(u,w) > c(u,v) + c(v,w); empty iff metric.
std::vector<Triple> validate_metric(const Instance& inst);

/// Shortest-path closure of a connected weighted graph on n vertices.
Instance metric_closure(int n, int s, int t, std::span<const std::pair<Edge, Rational>> edges);

/// Deterministic metric instance; s = 0, t = n-1. Requires n >= 3.
Instance random_metric_instance(int n, std::uint64_t seed);

/// Canonical text: header "n s t", then every pair "u v a/b" in edge order.
std::string emit_instance(const Instance& inst);

/// Parses the instance format. Missing pairs throw unless `closure` is set,
/// in which case the listed edges are completed to their metric closure.
Instance parse_instance(std::string_view text, bool closure = false);

/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string instance_digest(const Instance& inst);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace pathtsp
