#pragma once

#include <string>
#include <vector>

#include "pathtsp/instance.hpp"
#include "pathtsp/tree.hpp"

namespace pathtsp {

/// The wall-like fixture: a fractional LP vertex whose narrow cuts all carry
/// load 3/2, with `extra_gadgets` additional 4-vertex wall segments.
struct AppendixFixture {
  Instance instance;
  EdgeVector xstar;
  TreeDistribution trees;                      // four trees at weight 1/4
  std::vector<std::vector<int>> tight_sets;    // sets U with x*(δ(U)) tight; incidence vectors independent
  std::vector<std::string> names;              // vertex labels, for reports
};

/// Costs are the shortest-path metric of the support graph with unit lengths.
AppendixFixture build_appendix_instance(int extra_gadgets);

}  // namespace pathtsp
