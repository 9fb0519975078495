#include "pathtsp/appendix.hpp"

#include <map>

#include "pathtsp/errors.hpp"

namespace pathtsp {

namespace {

struct Builder {
  std::vector<std::string> names;
  std::map<std::string, int> id;
  std::vector<std::pair<Edge, Rational>> support;

  int vertex(const std::string& name) {
    id.emplace(name, static_cast<int>(names.size()));
    names.push_back(name);
    return id.at(name);
  }
  Edge edge(const std::string& a, const std::string& b) const { return make_edge(id.at(a), id.at(b)); }
  void link(const std::string& a, const std::string& b, long num, long den) {
    support.emplace_back(edge(a, b), make_rational(num, den));
  }
};

std::string gadget(const char* base, int copy) {
  return copy == 0 ? std::string(base) : std::string(base) + "_" + std::to_string(copy);
}

}  // namespace

AppendixFixture build_appendix_instance(int extra_gadgets) {
  if (extra_gadgets < 0) throw PreconditionError("number of extra gadgets must be nonnegative");
  const int k = extra_gadgets;
  Builder b;
  for (const char* name : {"s", "a1", "a2", "b", "b2", "c1", "c2", "c3", "c4"}) b.vertex(name);
  for (int j = 0; j <= k; ++j) {
    for (const char* name : {"d", "d2", "e", "e2"}) b.vertex(gadget(name, j));
  }
  for (const char* name : {"f", "f2", "g", "g2", "h1", "h2", "t"}) b.vertex(name);
  const int n = static_cast<int>(b.names.size());

  const std::string d0 = gadget("d", 0), d20 = gadget("d2", 0), e0 = gadget("e", 0), e20 = gadget("e2", 0);
  const std::string dk = gadget("d", k), d2k = gadget("d2", k), ek = gadget("e", k), e2k = gadget("e2", k);

  // Rungs and the two ends.
  for (auto [u, v] : std::vector<std::pair<std::string, std::string>>{
           {"a1", "a2"}, {"b", "b2"}, {"c1", "c2"}, {"c3", "c4"}, {"f", "f2"}, {"g", "g2"}, {"h1", "h2"}}) {
    b.link(u, v, 1, 1);
  }
  b.link("s", "a1", 3, 4);
  b.link("s", "b2", 1, 4);
  b.link("a1", "b2", 1, 4);
  b.link("h2", "t", 3, 4);
  b.link("g2", "t", 1, 4);
  b.link("g2", "h2", 1, 4);
  for (auto [u, v] : std::vector<std::pair<std::string, std::string>>{
           {"a2", "c2"}, {"a2", "b"}, {"b", "c1"}, {"c1", "c3"}, {"c2", "c4"}, {"f", "g"}, {"g", "h1"}, {"f2", "h1"}}) {
    b.link(u, v, 1, 2);
  }
  // Entry into the first wall segment, the segments, and the exit of the last.
  b.link("c3", d0, 1, 2);
  b.link("c4", e20, 1, 2);
  b.link("b2", d20, 1, 2);
  for (int j = 0; j <= k; ++j) {
    b.link(gadget("d", j), gadget("d2", j), 1, 1);
    b.link(gadget("e", j), gadget("e2", j), 1, 1);
    b.link(gadget("d", j), gadget("e", j), 1, 2);
    if (j > 0) {
      b.link(gadget("e", j - 1), gadget("d", j), 1, 2);
      b.link(gadget("d2", j - 1), gadget("d2", j), 1, 2);
      b.link(gadget("e2", j - 1), gadget("e2", j), 1, 2);
    }
  }
  b.link(ek, "f", 1, 2);
  b.link(d2k, "f2", 1, 2);
  b.link(e2k, "g2", 1, 2);

  EdgeVector xstar;
  std::vector<std::pair<Edge, Rational>> unit;
  for (const auto& [e, value] : b.support) {
    xstar.set(e, value);
    unit.emplace_back(e, make_rational(1));
  }

  // Tree skeletons outside the wall segments.
  using Names = std::vector<std::pair<std::string, std::string>>;
  const std::vector<Names> outer = {
      {{"s", "a1"}, {"a1", "a2"}, {"a2", "c2"}, {"c2", "c4"}, {"c4", e20}, {e2k, "g2"}, {"g2", "t"},
       {"b", "b2"}, {"c1", "c2"}, {"c3", "c4"}, {"f", "f2"}, {"g", "g2"}, {"h1", "h2"},
       {"a2", "b"}, {"c3", d0}, {ek, "f"}, {"g", "h1"}},
      {{"s", "a1"}, {"a1", "a2"}, {"a2", "c2"}, {"c2", "c4"}, {"c4", e20}, {e2k, "g2"}, {"g2", "h2"}, {"h2", "t"},
       {"b", "b2"}, {"c1", "c2"}, {"c3", "c4"}, {"f", "f2"}, {"g", "g2"}, {"h1", "h2"},
       {"b", "c1"}, {"f", "g"}},
      {{"s", "b2"}, {"b2", d20}, {d2k, "f2"}, {"f2", "h1"}, {"h1", "h2"}, {"h2", "t"},
       {"a1", "a2"}, {"b", "b2"}, {"c1", "c2"}, {"c3", "c4"}, {"f", "f2"}, {"g", "g2"},
       {"a2", "b"}, {"c1", "c3"}, {"c3", d0}, {ek, "f"}, {"g", "h1"}},
      {{"s", "a1"}, {"a1", "b2"}, {"b2", d20}, {d2k, "f2"}, {"f2", "h1"}, {"h1", "h2"}, {"h2", "t"},
       {"a1", "a2"}, {"b", "b2"}, {"c1", "c2"}, {"c3", "c4"}, {"f", "f2"}, {"g", "g2"},
       {"b", "c1"}, {"c1", "c3"}, {"f", "g"}},
  };
  // Per tree: uses d-e inside a segment, and which of the links e->d', d2->d2', e2->e2' to the next one.
  struct Pattern {
    bool de, e_next, d2_next, e2_next;
  };
  const Pattern patterns[4] = {{false, true, false, true}, {true, false, false, true},
                               {false, true, true, false}, {true, false, true, false}};

  TreeDistribution trees;
  for (int which = 0; which < 4; ++which) {
    std::vector<Edge> edges;
    for (const auto& [u, v] : outer[which]) edges.push_back(b.edge(u, v));
    const Pattern& p = patterns[which];
    for (int j = 0; j <= k; ++j) {
      edges.push_back(b.edge(gadget("d", j), gadget("d2", j)));
      edges.push_back(b.edge(gadget("e", j), gadget("e2", j)));
      if (p.de) edges.push_back(b.edge(gadget("d", j), gadget("e", j)));
      if (j < k) {
        if (p.e_next) edges.push_back(b.edge(gadget("e", j), gadget("d", j + 1)));
        if (p.d2_next) edges.push_back(b.edge(gadget("d2", j), gadget("d2", j + 1)));
        if (p.e2_next) edges.push_back(b.edge(gadget("e2", j), gadget("e2", j + 1)));
      }
    }
    Tree tree(std::move(edges));
    if (!is_spanning_tree(tree, n)) throw InternalError("fixture tree is not spanning");
    trees.add(tree, make_rational(1, 4), "fixture");
  }

  std::vector<std::vector<int>> tight;
  for (int v = 0; v < n; ++v) tight.push_back({v});
  auto group = [&](std::initializer_list<std::string> members) {
    std::vector<int> set;
    for (const std::string& m : members) set.push_back(b.id.at(m));
    tight.push_back(set);
  };
  group({"a1", "a2"});
  group({"b", "b2"});
  group({"c1", "c2"});
  group({"c1", "c2", "c3", "c4"});
  group({"c3", "c4"});
  for (int j = 0; j <= k; ++j) {
    group({gadget("d", j), gadget("d2", j)});
    group({gadget("e", j), gadget("e2", j)});
  }
  group({"f", "f2"});
  group({"g", "g2"});
  group({"h1", "h2"});

  Instance instance = metric_closure(n, b.id.at("s"), b.id.at("t"), unit);
  return AppendixFixture{std::move(instance), std::move(xstar), std::move(trees), std::move(tight), std::move(b.names)};
}

}  // namespace pathtsp
