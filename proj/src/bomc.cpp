#include "pathtsp/bomc.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "pathtsp/errors.hpp"

namespace pathtsp {

Rational path_cost(const std::vector<int>& order, const Instance& inst) {
  Rational total = 0;
  for (std::size_t i = 1; i < order.size(); ++i) total += inst.cost(order[i - 1], order[i]);
  return total;
}

bool is_hamiltonian_path(const std::vector<int>& order, const Instance& inst) {
  if (static_cast<int>(order.size()) != inst.n() || order.front() != inst.s() || order.back() != inst.t()) return false;
  std::vector<char> seen(inst.n(), 0);
  for (int v : order) {
    if (v < 0 || v >= inst.n() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool is_st_tour(const std::vector<Edge>& edges, const Instance& inst) {
  const int n = inst.n();
  std::vector<int> degree(n, 0);
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for (const Edge& e : edges) {
    ++degree[e.u];
    ++degree[e.v];
    const int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  if (components != 1) return false;
  for (int v = 0; v < n; ++v) {
    const bool end = v == inst.s() || v == inst.t();
    if ((degree[v] % 2 == 1) != end) return false;
  }
  return true;
}

namespace {

/// Pair-cost oracle over T indices, on scaled integers when they fit.
template <class Value>
std::vector<std::pair<int, int>> match_subsets(int k, const std::vector<Value>& cost) {
  const std::size_t states = std::size_t{1} << k;
  std::vector<Value> best(states);
  std::vector<std::int8_t> partner(states, -1);
  std::vector<char> known(states, 0);
  known[0] = 1;
  for (std::size_t mask = 1; mask < states; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const int i = std::countr_zero(mask);
    for (int j = i + 1; j < k; ++j) {
      if (!((mask >> j) & 1U)) continue;
      const std::size_t rest = mask ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
      Value candidate = best[rest] + cost[static_cast<std::size_t>(i) * k + j];
      if (!known[mask] || candidate < best[mask]) {
        best[mask] = candidate;
        partner[mask] = static_cast<std::int8_t>(j);
        known[mask] = 1;
      }
    }
  }
  std::vector<std::pair<int, int>> pairs;
  std::size_t mask = states - 1;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    const int j = partner[mask];
    pairs.emplace_back(i, j);
    mask ^= (std::size_t{1} << i) | (std::size_t{1} << j);
  }
  return pairs;
}

}  // namespace

std::vector<Edge> min_tjoin(const std::vector<int>& odd_set, const Instance& inst) {
  const int k = static_cast<int>(odd_set.size());
  if (k % 2 != 0) throw PreconditionError("T-join needs an even vertex set");
  if (k > kMatchingLimit) throw LimitError("T-join matching is limited to 20 vertices");
  if (k == 0) return {};
  std::vector<Rational> cost(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) cost[static_cast<std::size_t>(i) * k + j] = inst.cost(odd_set[i], odd_set[j]);
  }
  const ScaledIntegers scaled = scale_to_integers(cost, static_cast<std::size_t>(k));
  const std::vector<std::pair<int, int>> pairs =
      scaled.fits ? match_subsets<std::int64_t>(k, scaled.values) : match_subsets<Rational>(k, cost);
  std::vector<Edge> join;
  for (const auto& [i, j] : pairs) join.push_back(make_edge(odd_set[i], odd_set[j]));
  std::sort(join.begin(), join.end());
  return join;
}

TreeTour tour_from_tree(const Tree& tree, const Instance& inst) {
  const int n = inst.n();
  const std::vector<int> degree = tree_degrees(tree, n);
  std::vector<int> odd;
  for (int v = 0; v < n; ++v) {
    const bool end = v == inst.s() || v == inst.t();
    if ((degree[v] % 2 == 1) != end) odd.push_back(v);
  }
  TreeTour out;
  const std::vector<Edge> join = min_tjoin(odd, inst);
  out.tree_cost = inst.cost_of(tree.edges());
  out.join_cost = inst.cost_of(join);
  out.st_tour.edges = tree.edges();
  out.st_tour.edges.insert(out.st_tour.edges.end(), join.begin(), join.end());
  out.st_tour.cost = out.tree_cost + out.join_cost;
  if (!is_st_tour(out.st_tour.edges, inst)) throw InternalError("tree plus join is not an {s,t}-tour");

  // Hierholzer from s; neighbours visited in increasing (vertex, edge id) order.
  const std::vector<Edge>& edges = out.st_tour.edges;
  std::vector<std::vector<std::pair<int, int>>> adjacency(n);
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    adjacency[edges[id].u].emplace_back(edges[id].v, id);
    adjacency[edges[id].v].emplace_back(edges[id].u, id);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  std::vector<std::size_t> cursor(n, 0);
  std::vector<char> used(edges.size(), 0);
  std::vector<int> stack{inst.s()};
  std::vector<int> walk;
  while (!stack.empty()) {
    const int v = stack.back();
    auto& list = adjacency[v];
    while (cursor[v] < list.size() && used[list[cursor[v]].second]) ++cursor[v];
    if (cursor[v] == list.size()) {
      walk.push_back(v);
      stack.pop_back();
    } else {
      const auto [w, id] = list[cursor[v]];
      used[id] = 1;
      stack.push_back(w);
    }
  }
  std::reverse(walk.begin(), walk.end());
  if (walk.size() != edges.size() + 1 || walk.front() != inst.s() || walk.back() != inst.t()) {
    throw InternalError("Eulerian walk does not run from s to t");
  }
  std::vector<char> seen(n, 0);
  for (int v : walk) {
    if (v == inst.t() || seen[v]) continue;
    seen[v] = 1;
    out.tour.order.push_back(v);
  }
  out.tour.order.push_back(inst.t());
  out.tour.cost = path_cost(out.tour.order, inst);
  return out;
}

BestOfMany best_of_many(const TreeDistribution& d, const Instance& inst) {
  if (d.empty()) throw PreconditionError("best-of-many needs a nonempty distribution");
  BestOfMany out;
  for (const Atom& atom : d.atoms()) out.per_atom.push_back(tour_from_tree(atom.tree, inst));
  for (std::size_t a = 0; a < out.per_atom.size(); ++a) {
    if (a == 0 || out.per_atom[a].st_tour.cost < out.value) {
      out.value = out.per_atom[a].st_tour.cost;
      out.best = static_cast<int>(a);
    }
  }
  out.tour = out.per_atom[out.best].tour;
  return out;
}

namespace {

template <class Value>
std::vector<int> held_karp(const Instance& inst, const std::vector<Value>& cost) {
  const int n = inst.n();
  auto c = [&](int a, int b) -> const Value& { return cost[edge_index(n, make_edge(a, b))]; };
  std::vector<int> inner;
  for (int v = 0; v < n; ++v) {
    if (v != inst.s() && v != inst.t()) inner.push_back(v);
  }
  const int k = static_cast<int>(inner.size());
  if (k == 0) return {inst.s(), inst.t()};
  const std::size_t states = std::size_t{1} << k;
  std::vector<Value> best(states * k);
  std::vector<std::int8_t> prev(states * k, -1);
  for (int v = 0; v < k; ++v) best[(std::size_t{1} << v) * k + v] = c(inst.s(), inner[v]);
  for (std::size_t mask = 1; mask < states; ++mask) {
    if (std::popcount(mask) < 2) continue;
    for (int v = 0; v < k; ++v) {
      if (!((mask >> v) & 1U)) continue;
      const std::size_t rest = mask ^ (std::size_t{1} << v);
      int choice = -1;
      Value value{};
      for (int u = 0; u < k; ++u) {
        if (!((rest >> u) & 1U)) continue;
        Value candidate = best[rest * k + u] + c(inner[u], inner[v]);
        if (choice < 0 || candidate < value) {
          value = candidate;
          choice = u;
        }
      }
      best[mask * k + v] = value;
      prev[mask * k + v] = static_cast<std::int8_t>(choice);
    }
  }
  const std::size_t full = states - 1;
  int last = -1;
  Value total{};
  for (int v = 0; v < k; ++v) {
    Value candidate = best[full * k + v] + c(inner[v], inst.t());
    if (last < 0 || candidate < total) {
      total = candidate;
      last = v;
    }
  }
  std::vector<int> order{inst.t()};
  std::size_t mask = full;
  int v = last;
  while (v >= 0) {
    order.push_back(inner[v]);
    const int u = prev[mask * k + v];
    mask ^= std::size_t{1} << v;
    v = u;
  }
  order.push_back(inst.s());
  std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace

Tour held_karp_opt(const Instance& inst) {
  if (inst.n() > kHeldKarpLimit) throw LimitError("Held-Karp is limited to 18 vertices");
  const ScaledIntegers scaled = scale_to_integers(inst.costs(), static_cast<std::size_t>(inst.n()));
  Tour tour;
  if (scaled.fits) {
    tour.order = held_karp<std::int64_t>(inst, scaled.values);
  } else {
    tour.order = held_karp<Rational>(inst, std::vector<Rational>(inst.costs().begin(), inst.costs().end()));
  }
  tour.cost = path_cost(tour.order, inst);
  return tour;
}

}  // namespace pathtsp
