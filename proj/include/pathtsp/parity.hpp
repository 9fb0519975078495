#pragma once

#include <string>
#include <vector>

#include "pathtsp/cuts.hpp"
#include "pathtsp/instance.hpp"
#include "pathtsp/reassembler.hpp"
#include "pathtsp/tree.hpp"

namespace pathtsp {

struct GammaParams {
  Rational beta = make_rational(401, 1000);
  Rational xi = make_rational(173, 100);
  Rational eps = make_rational(1, 100);
  bool legacy_half = false;  // γ ≡ ½ instead of the f1/f2 rule

  /// f(x) = β(2−x)(x−1)/(1−2β)
  Rational f(const Rational& x) const;
  /// ν = 1 − f(ξ)
  Rational nu() const;
  /// Throws PreconditionError unless 2/5 ≤ β < 1/2, 17/10 ≤ ξ ≤ 9/5, ε > 0 and ν > 1/2.
  void validate() const;
};

/// Path/join split of one tree, plus γ per path edge once assigned.
struct TreeParity {
  std::vector<Edge> path;      // I_S, ordered from s
  std::vector<Edge> join;      // J_S = S ∖ I_S, sorted
  std::vector<int> odd_set;    // T_S: wrong-parity vertices, sorted
  std::vector<Rational> gamma; // aligned with `path`; empty until assigned

  const Rational& gamma_of(Edge e) const;
  bool on_path(Edge e) const;
};

TreeParity split_path_join(const Tree& tree, const Instance& inst);

/// γ for every atom of d (aligned with d.atoms()). `chain` holds all narrow cuts.
std::vector<TreeParity> assign_gamma(const TreeDistribution& d, const CutChain& chain, const GammaParams& params);

/// First edge of the path, walking from s, that crosses chain level j.
Edge designated_edge(const TreeParity& parity, const CutChain& chain, int level);

struct TreeBenefit {
  int atom = 0;
  int crossings = 0;
  bool typed = false;  // cut is an internal ξ-narrow cut
  TypeCode type;
  Edge designated;
  Rational benefit;
  int a = 0;              // case marker (critical cuts only)
  bool case_ok = true;    // per-tree inequality of the active case
  bool many_ok = true;    // the m ≥ 3 inequality
  bool half_ok = true;    // benefit ≥ ½ (critical cuts, m = 1 or even)
  bool nu_ok = true;      // benefit ≥ ν when the designated edge is not a neighbour singleton
};

struct CutAudit {
  int level = 0;
  Rational load;
  int xi_index = -1;
  bool critical = false;  // f(load) > ½
  Rational p_even, p_one, p_many;
  Rational benefit;   // Σ p_S b_{S,C}
  Rational required;  // β(2−x(C)) p_even / (1−2β)
  Rational margin;
  std::string case_label;  // "less-critical", "1".."4", or "none"
  std::vector<TreeBenefit> trees;
  // Critical cuts only.
  bool window_ok = true;  // internal ξ-narrow and load ≥ 2 − ξ/3
  Rational claim_rhs;     // 1 + (5 − 3/2(x+ξ) − ε)(ν−½) − (4ν−1) p_many
  bool claim_ok = true;   // 2·benefit ≥ claim_rhs
  bool bound_ok = true;   // constant inequality at this load

  bool ok() const { return sgn(margin) >= 0; }
  /// Every lemma-level check recorded for this cut holds.
  bool lemmas_ok() const;
};

struct BenefitAudit {
  std::vector<CutAudit> cuts;
  bool all_ok() const;
};

BenefitAudit benefits(const TreeDistribution& d, const CutChain& chain, const std::vector<TreeParity>& parities,
                      const GammaParams& params);

struct CorrectionVectors {
  std::vector<Edge> cheapest;  // e_C per level
  std::vector<EdgeVector> z;   // per atom
  std::vector<EdgeVector> y;   // per atom: βx* + (1−2β)χ^J + z
};

CorrectionVectors correction_vectors(const TreeDistribution& d, const CutChain& chain, const EdgeVector& xstar,
                                     const std::vector<TreeParity>& parities, const GammaParams& params,
                                     const Instance& inst);

/// Violations of z^S(C) ≥ β(2 − x*(C)) on narrow cuts crossed an even number of times.
std::vector<std::string> requirement_violations(const TreeDistribution& d, const CutChain& chain,
                                                const CorrectionVectors& cv, const GammaParams& params);

struct JoinCutCheck {
  bool checked = false;   // false when n exceeds the enumeration limit
  long long odd_cuts = 0;
  long long violations = 0;
  Rational min_load;      // smallest y(C) over T-cuts
};

/// y(δ(U)) ≥ 1 for every U with |U ∩ T| odd, by exhaustive enumeration.
JoinCutCheck check_join_cuts(const EdgeVector& y, const std::vector<int>& odd_set, int n);

struct Certificate {
  bool certified = false;
  bool benefits_ok = false;
  Rational z_cost;       // Σ p_S c(z^S)
  Rational path_budget;  // (1−2β) Σ p_S c(I_S)
  Rational chain[4];     // the four sums of the cost-bounding chain
  bool chain_ok = false;
};

Certificate certify_bound(const TreeDistribution& d, const BenefitAudit& audit, const CorrectionVectors& cv,
                          const std::vector<TreeParity>& parities, const CutChain& chain, const GammaParams& params,
                          const Instance& inst);

/// 1 + (5 − 3/2(x+ξ) − ε)(ν−½) − 2β/(1−2β)(x−1)(2−x); nonnegative is the requirement.
Rational constant_bound_slack(const Rational& x, const GammaParams& params);

struct ConstantChecks {
  Rational nu;
  bool nu_above_three_fifths = false;
  Rational beta_floor;  // 3/(6+4ξ(2−ξ))
  bool beta_ok = false;
  bool window_ok = false;  // f ≤ ½ at 1.44 and 1.56, and 2 − ξ/3 ≤ 1.44
  long long grid_points = 0;
  Rational grid_min_slack;
  Rational extremum;        // minimiser of the slack
  Rational extremum_slack;
  bool bound_ok = false;
  bool all() const { return nu_above_three_fifths && beta_ok && window_ok && bound_ok; }
};

ConstantChecks theorem_constants(const GammaParams& params);

}  // namespace pathtsp
