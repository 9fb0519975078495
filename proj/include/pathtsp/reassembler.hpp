#pragma once

#include <map>
#include <string>
#include <vector>

#include "pathtsp/cuts.hpp"
#include "pathtsp/instance.hpp"
#include "pathtsp/tree.hpp"

namespace pathtsp {

/// Type of a tree at an internal ξ-narrow cut: l = |S∩C∩C_←|, m = |S∩C|,
/// r = |S∩C∩C_→|, plus the GOOD flag.
struct TypeCode {
  int l = 0;
  int m = 0;
  int r = 0;
  bool good = false;

  /// "GOOD" or the digits "lmr".
  std::string str() const;
  bool is(const std::string& code) const { return str() == code; }
};

/// Per-tree data for classification: ξ-cut crossing counts and, for cuts
/// crossed once, the crossing edge.
struct TreeCutProfile {
  std::vector<int> count;        // indexed by ξ-index
  std::vector<Edge> sole_edge;   // meaningful where count == 1
  std::vector<Edge> singleton_edges;  // edges that are alone in some ξ-narrow cut (sorted)
};

TreeCutProfile profile_tree(const Tree& tree, const CutChain& chain);
TypeCode classify(const Tree& tree, const CutChain& chain, int q);
TypeCode classify(const Tree& tree, const TreeCutProfile& profile, const CutChain& chain, int q);

/// One application of the 120/011 edge exchange at ξ-cut q.
struct ExchangeRecord {
  int cut = 0;            // ξ-index in the chain the sweep ran on
  bool mirrored = false;  // true when the sweep ran on the reversed chain
  Tree s1, s2;            // types 120 and 011 at the cut
  Tree s1_new, s2_new;
  Edge e0, e1, e2;
  int h = 0;  // largest ξ-index < cut with S1 ∩ C_h = {e0}
  int k = 0;  // rightmost ξ-cut containing e2
  Rational delta;
};

/// S1' = S1 − e1 + e2 and S2' = S2 − e2 + e1. Throws PreconditionError on a
/// type mismatch and InternalError if the exchange edges cannot be located.
ExchangeRecord exchange(const Tree& s1, const Tree& s2, const CutChain& chain, int q);

/// Re-checks spanning trees, postconditions (a)–(d) and the GOOD run after the
/// cut. `chain` is the un-mirrored chain. Empty result means valid.
std::vector<std::string> validate_exchange(const ExchangeRecord& record, const CutChain& chain);

/// Left-to-right pass removing simultaneous 120/011 mass at every internal
/// ξ-narrow cut. Weights must lie on the ε/n² grid.
TreeDistribution sweep_right(const TreeDistribution& d, const CutChain& chain, const Rational& eps,
                             std::vector<ExchangeRecord>* log = nullptr);
/// Mirror pass removing simultaneous 110/021 mass.
TreeDistribution sweep_left(const TreeDistribution& d, const CutChain& chain, const Rational& eps,
                            std::vector<ExchangeRecord>* log = nullptr);

/// Mass of each type code at ξ-cut q.
std::map<std::string, Rational> type_census(const TreeDistribution& d, const CutChain& chain, int q);

struct ReassemblyCheck {
  int cut = 0;  // ξ-index
  Rational sums[4];  // 120+021, 011+110, 011+021, 120+110
  Rational good;
  bool holds = false;  // min(sums) ≤ good + ε
};

std::vector<ReassemblyCheck> reassembly_condition(const TreeDistribution& d, const CutChain& chain, const Rational& eps);

struct Reassembly {
  CutChain chain;
  TreeDistribution initial;
  TreeDistribution rounded;
  TreeDistribution residual;
  TreeDistribution after_left;
  TreeDistribution after_right;
  TreeDistribution final;
  std::vector<ExchangeRecord> left_log;
  std::vector<ExchangeRecord> right_log;
};

/// Round, sweep left, sweep right, then add the rounding residual back.
Reassembly reassemble_distribution(const TreeDistribution& initial, const CutChain& chain, const Rational& eps);

/// decompose(x*) followed by reassemble_distribution.
Reassembly reassemble(const EdgeVector& xstar, const Instance& inst, const Rational& xi, const Rational& eps);

std::string format_exchange(const ExchangeRecord& record);

}  // namespace pathtsp
