#pragma once

#include <vector>

#include "pathtsp/instance.hpp"
#include "pathtsp/tree.hpp"

namespace pathtsp {

/// Hamiltonian s-t path.
struct Tour {
  std::vector<int> order;
  Rational cost;
};

/// Connected multigraph in which exactly s and t have odd degree.
struct STTour {
  std::vector<Edge> edges;  // with repetition
  Rational cost;
};

Rational path_cost(const std::vector<int>& order, const Instance& inst);
bool is_hamiltonian_path(const std::vector<int>& order, const Instance& inst);
bool is_st_tour(const std::vector<Edge>& edges, const Instance& inst);

/// Largest |T| accepted by min_tjoin.
inline constexpr int kMatchingLimit = 20;

/// Minimum-cost T-join as a perfect matching on T (metric costs), by subset DP.
std::vector<Edge> min_tjoin(const std::vector<int>& odd_set, const Instance& inst);

struct TreeTour {
  Rational tree_cost;
  Rational join_cost;
  STTour st_tour;
  Tour tour;
};

/// Tree plus a minimum T_S-join, Eulerian walk from s (smallest neighbour
/// first), first-occurrence shortcutting with t kept last.
TreeTour tour_from_tree(const Tree& tree, const Instance& inst);

struct BestOfMany {
  std::vector<TreeTour> per_atom;  // aligned with the distribution's atoms
  int best = 0;                    // first atom attaining the minimum
  Rational value;                  // min over atoms of c(S) + c(join)
  Tour tour;
};

BestOfMany best_of_many(const TreeDistribution& d, const Instance& inst);

/// Largest n accepted by held_karp_opt.
inline constexpr int kHeldKarpLimit = 18;

/// Optimal Hamiltonian s-t path by subset dynamic programming.
Tour held_karp_opt(const Instance& inst);

}  // namespace pathtsp
