#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pathtsp/instance.hpp"

namespace pathtsp {

/// A cut δ(U) whose load is below the requirement for its {s,t}-parity.
/// `side` is the shore containing vertex 0.
struct ViolatedCut {
  std::vector<char> side;
  Rational load;
  Rational required;  // 2 when |U ∩ {s,t}| is even, 1 when odd
};

/// Cuts with x(δ(U)) < 2 (even) or < 1 (odd), most violated first, ties by
/// shore. At most `limit` are returned (0 = all). Exhaustive for n ≤ 22;
/// above that, one min cut per vertex pair class from exact max-flow.
std::vector<ViolatedCut> separate(const EdgeVector& x, const Instance& inst, std::size_t limit = 0);

struct LpOptions {
  int max_rounds = 500;
  std::size_t cuts_per_round = 64;
  std::size_t pivot_limit = 2'000'000;
};

struct LpSolution {
  EdgeVector x;
  Rational value;
  int rounds = 0;
  int cut_rows = 0;
};

/// Optimum of the path-TSP relaxation by cutting planes on an exact simplex.
LpSolution solve_lp(const Instance& inst, const LpOptions& options = {});

/// "# value a/b" then "u v a/b" per support edge.
std::string emit_solution(const LpSolution& solution);
/// Parses a solution file; the value comment is optional and recomputed.
LpSolution parse_solution(std::string_view text, const Instance& inst);

}  // namespace pathtsp
