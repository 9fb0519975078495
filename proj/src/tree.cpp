#include "pathtsp/tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pathtsp/errors.hpp"

namespace pathtsp {

Tree::Tree(std::vector<Edge> edges) : edges_(std::move(edges)) { std::sort(edges_.begin(), edges_.end()); }

bool Tree::contains(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

int Tree::crossing_count(std::span<const char> in_set) const {
  int count = 0;
  for (Edge e : edges_) count += crosses(e, in_set) ? 1 : 0;
  return count;
}

Tree Tree::exchanged(Edge removed, Edge added) const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (Edge e : edges_) {
    if (e != removed) out.push_back(e);
  }
  out.push_back(added);
  return Tree(std::move(out));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

std::vector<std::vector<int>> adjacency(const Tree& tree, int n) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (Edge e : tree.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

}  // namespace

bool is_spanning_tree(const Tree& tree, int n) {
  if (static_cast<int>(tree.size()) != n - 1) return false;
  UnionFind uf(n);
  for (Edge e : tree.edges()) {
    if (e.u < 0 || e.v >= n || e.u == e.v) return false;
    if (!uf.unite(e.u, e.v)) return false;
  }
  return true;
}

std::vector<Edge> tree_path(const Tree& tree, int n, int from, int to) {
  const auto adj = adjacency(tree, n);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> stack{from};
  parent[from] = from;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (parent[w] == -1) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  if (parent[to] == -1) throw PreconditionError("tree does not connect the path endpoints");
  std::vector<Edge> path;
  for (int v = to; v != from; v = parent[v]) path.push_back(make_edge(v, parent[v]));
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> tree_degrees(const Tree& tree, int n) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (Edge e : tree.edges()) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

void TreeDistribution::add(const Tree& tree, const Rational& weight, const std::string& origin) {
  if (weight < 0) throw PreconditionError("negative atom weight");
  if (weight == 0) return;
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), tree,
                             [](const Atom& a, const Tree& t) { return a.tree < t; });
  if (it != atoms_.end() && it->tree == tree) {
    it->weight += weight;
  } else {
    atoms_.insert(it, Atom{tree, weight, origin});
  }
}

void TreeDistribution::remove(const Tree& tree, const Rational& weight) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), tree,
                             [](const Atom& a, const Tree& t) { return a.tree < t; });
  if (it == atoms_.end() || it->tree != tree) throw InternalError("removing weight from an absent tree");
  if (it->weight < weight) throw InternalError("removing more weight than the atom holds");
  it->weight -= weight;
  if (it->weight == 0) atoms_.erase(it);
}

const Atom* TreeDistribution::find(const Tree& tree) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), tree,
                             [](const Atom& a, const Tree& t) { return a.tree < t; });
  return it != atoms_.end() && it->tree == tree ? &*it : nullptr;
}

Rational TreeDistribution::total_weight() const {
  Rational acc = 0;
  for (const Atom& a : atoms_) acc += a.weight;
  return acc;
}

EdgeVector TreeDistribution::reconstruct() const {
  EdgeVector x;
  for (const Atom& a : atoms_) {
    for (Edge e : a.tree.edges()) x.add(e, a.weight);
  }
  return x;
}

std::string emit_distribution(const TreeDistribution& d) {
  std::ostringstream out;
  for (const Atom& a : d.atoms()) {
    out << "tree " << to_string(a.weight) << '\n';
    for (Edge e : a.tree.edges()) out << e.u << ' ' << e.v << '\n';
  }
  return out.str();
}

TreeDistribution parse_distribution(std::string_view text, int n) {
  std::istringstream in{std::string(text)};
  std::string line;
  TreeDistribution d;
  bool open = false;
  Rational weight;
  std::vector<Edge> edges;
  auto flush = [&] {
    if (!open) return;
    if (static_cast<int>(edges.size()) != n - 1) {
      throw ParseError("tree block has " + std::to_string(edges.size()) + " edges, expected " + std::to_string(n - 1));
    }
    Tree tree(std::move(edges));
    if (!is_spanning_tree(tree, n)) throw ParseError("tree block is not a spanning tree");
    if (d.find(tree) != nullptr) throw ParseError("duplicate tree block");
    d.add(tree, weight, "file");
    edges.clear();
  };
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a;
    std::string b;
    if (!(ls >> a)) continue;
    if (a == "tree") {
      flush();
      if (!(ls >> b)) throw ParseError("tree block without weight");
      weight = parse_rational(b);
      if (weight <= 0) throw ParseError("tree weight must be positive");
      open = true;
      continue;
    }
    if (!open) throw ParseError("edge line before any tree block");
    if (!(ls >> b)) throw ParseError("edge line needs two endpoints");
    int u = 0;
    int v = 0;
    try {
      u = std::stoi(a);
      v = std::stoi(b);
    } catch (const std::exception&) {
      throw ParseError("bad edge line '" + line + "'");
    }
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw ParseError("edge endpoints out of range");
    edges.push_back(make_edge(u, v));
  }
  flush();
  return d;
}

}  // namespace pathtsp
