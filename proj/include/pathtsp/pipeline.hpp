#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathtsp/bomc.hpp"
#include "pathtsp/cuts.hpp"
#include "pathtsp/instance.hpp"
#include "pathtsp/parity.hpp"
#include "pathtsp/reassembler.hpp"
#include "pathtsp/tree.hpp"

namespace pathtsp {

struct PipelineOptions {
  GammaParams params;
  bool skip_reassembly = false;
  bool compute_opt = true;        // Held–Karp when n is small enough
  bool check_join_cuts = true;    // exhaustive T_S-cut check when n is small enough
};

/// What the pipeline starts from. Missing pieces are computed: x* by solve_lp,
/// the starting distribution by decompose.
struct PipelineInput {
  std::string label;
  Instance instance;
  std::optional<EdgeVector> xstar;
  std::optional<TreeDistribution> start;
};

struct NamedCheck {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string detail;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0;
};

struct PipelineResult {
  std::string label;
  Instance instance;
  PipelineOptions options;
  EdgeVector xstar;
  Rational lp_value;
  bool lp_solved = false;
  CutChain chain;
  TreeDistribution initial;
  std::optional<Reassembly> reassembly;
  TreeDistribution final;
  std::vector<TreeParity> parities;
  BenefitAudit audit;
  CorrectionVectors corrections;
  Certificate certificate;
  std::vector<ReassemblyCheck> condition;
  BestOfMany bomc;
  std::optional<Tour> opt;
  std::vector<NamedCheck> checks;
  std::vector<StageTiming> timings;

  bool checks_ok() const;
  /// 0 when every check passes, 1 otherwise.
  int exit_code() const { return checks_ok() ? 0 : 1; }
  /// Deterministic report body (no timings).
  std::string report() const;
  /// Timing section, kept apart so reports can be compared byte for byte.
  std::string timing_report() const;
};

PipelineResult run_pipeline(PipelineInput input, const PipelineOptions& options);

/// Audits an externally supplied distribution against an instance and solution
/// without modifying them.
PipelineResult verify(const TreeDistribution& d, const Instance& inst, const EdgeVector& xstar,
                      const PipelineOptions& options);

}  // namespace pathtsp
