#include "pathtsp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <type_traits>

#include "pathtsp/cut_enum.hpp"
#include "pathtsp/errors.hpp"
#include "pathtsp/lp_relax.hpp"
#include "pathtsp/parallel.hpp"
#include "pathtsp/tree_decomp.hpp"

namespace pathtsp {

namespace {

template <class Fn>
auto timed(std::vector<StageTiming>& timings, const std::string& stage, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    const std::chrono::duration<double, std::milli> spent = std::chrono::steady_clock::now() - start;
    timings.push_back(StageTiming{stage, spent.count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      finish();
    } else {
      auto value = fn();
      finish();
      return value;
    }
  } catch (const ParseError& e) {
    throw ParseError(stage + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(stage + ": " + e.what());
  } catch (const LimitError& e) {
    throw LimitError(stage + ": " + e.what());
  } catch (const InternalError& e) {
    throw InternalError(stage + ": " + e.what());
  }
}

void add_check(PipelineResult& r, std::string name, bool passed, std::string detail = {}) {
  r.checks.push_back(NamedCheck{std::move(name), passed, false, std::move(detail)});
}

void skip_check(PipelineResult& r, std::string name, std::string detail) {
  r.checks.push_back(NamedCheck{std::move(name), true, true, std::move(detail)});
}

std::string join_list(const std::vector<std::string>& items, std::size_t keep = 3) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < keep; ++i) out += (i ? "; " : "") + items[i];
  if (items.size() > keep) out += "; +" + std::to_string(items.size() - keep) + " more";
  return out;
}

bool degrees_ok(const EdgeVector& x, const Instance& inst) {
  for (int v = 0; v < inst.n(); ++v) {
    std::vector<char> side(inst.n(), 0);
    side[v] = 1;
    const Rational want = make_rational(v == inst.s() || v == inst.t() ? 1 : 2);
    if (x.cut_load(side) != want) return false;
  }
  return true;
}

std::vector<std::string> sweep_guarantee_violations(const TreeDistribution& before, const TreeDistribution& after,
                                                    const CutChain& chain, bool left) {
  // Left pass: min{110, 021} = 0, 011 and 120 grow only by GOOD mass; right pass mirrored.
  const std::string kill_a = left ? "110" : "011";
  const std::string kill_b = left ? "021" : "120";
  const std::string keep_a = left ? "011" : "110";
  const std::string keep_b = left ? "120" : "021";
  std::vector<std::string> out;
  for (int q = 1; q + 1 < chain.xi_count(); ++q) {
    auto old_census = type_census(before, chain, q);
    auto new_census = type_census(after, chain, q);
    const std::string where = std::string(left ? "left" : "right") + " pass, cut " + std::to_string(q) + ": ";
    if (sgn(min_of(new_census[kill_a], new_census[kill_b])) != 0) out.push_back(where + kill_a + "/" + kill_b + " both remain");
    for (const std::string& code : {keep_a, keep_b}) {
      if (new_census[code] > old_census[code] + new_census["GOOD"]) out.push_back(where + code + " grew beyond GOOD mass");
    }
  }
  return out;
}

void analyse(PipelineResult& r) {
  const Instance& inst = r.instance;
  const GammaParams& params = r.options.params;
  const int n = inst.n();

  timed(r.timings, "gamma", [&] { r.parities = assign_gamma(r.final, r.chain, params); });
  timed(r.timings, "benefits", [&] { r.audit = benefits(r.final, r.chain, r.parities, params); });
  timed(r.timings, "corrections", [&] {
    r.corrections = correction_vectors(r.final, r.chain, r.xstar, r.parities, params, inst);
  });
  timed(r.timings, "certify", [&] {
    r.certificate = certify_bound(r.final, r.audit, r.corrections, r.parities, r.chain, params, inst);
  });
  r.condition = reassembly_condition(r.final, r.chain, params.eps);

  // Structural checks on the final distribution.
  {
    std::vector<std::string> bad;
    for (const Atom& atom : r.final.atoms()) {
      if (!is_spanning_tree(atom.tree, n)) bad.push_back("atom is not a spanning tree");
      if (sgn(atom.weight) <= 0) bad.push_back("nonpositive weight");
    }
    if (r.final.total_weight() != 1) bad.push_back("weights sum to " + to_string(r.final.total_weight()));
    add_check(r, "trees", bad.empty(), join_list(bad));
  }
  {
    std::vector<std::string> bad;
    auto expect = [&](const TreeDistribution& d, const TreeDistribution* extra, const std::string& stage) {
      TreeDistribution whole = d;
      if (extra) {
        for (const Atom& atom : extra->atoms()) whole.add(atom.tree, atom.weight, atom.origin);
      }
      if (whole.reconstruct() != r.xstar) bad.push_back(stage);
    };
    expect(r.initial, nullptr, "initial");
    if (r.reassembly) {
      expect(r.reassembly->rounded, &r.reassembly->residual, "rounded");
      expect(r.reassembly->after_left, &r.reassembly->residual, "left pass");
      expect(r.reassembly->after_right, &r.reassembly->residual, "right pass");
    }
    expect(r.final, nullptr, "final");
    add_check(r, "reconstruction", bad.empty(), join_list(bad));
  }
  {
    std::vector<std::string> bad;
    for (const IntersectionMargin& m : pairwise_intersection_check(r.chain, r.xstar)) {
      if (sgn(m.margin) < 0) bad.push_back("cuts " + std::to_string(m.first) + "," + std::to_string(m.second));
    }
    add_check(r, "intersection", bad.empty(), join_list(bad));
  }
  {
    const std::vector<std::string> bad = cut_stats_violations(cut_stats(r.chain, r.final));
    add_check(r, "cut_stats", bad.empty(), join_list(bad));
  }
  {
    std::vector<std::string> bad;
    for (const PackingMargin& m : packing_check(r.chain, r.final)) {
      if (m.singleton_mass > m.path_mass) bad.push_back("edge " + std::to_string(m.edge.u) + "-" + std::to_string(m.edge.v));
    }
    add_check(r, "packing", bad.empty(), join_list(bad));
  }
  if (r.reassembly) {
    const Reassembly& ra = *r.reassembly;
    std::vector<std::string> bad;
    for (const auto* log : {&ra.left_log, &ra.right_log}) {
      for (const ExchangeRecord& rec : *log) {
        for (std::string& v : validate_exchange(rec, r.chain)) bad.push_back(std::move(v));
      }
    }
    add_check(r, "exchanges", bad.empty(), std::to_string(ra.left_log.size() + ra.right_log.size()) + " records" +
                                                 (bad.empty() ? "" : ": " + join_list(bad)));
    std::vector<std::string> sweep = sweep_guarantee_violations(ra.rounded, ra.after_left, r.chain, true);
    for (std::string& v : sweep_guarantee_violations(ra.after_left, ra.after_right, r.chain, false)) sweep.push_back(std::move(v));
    add_check(r, "sweeps", sweep.empty(), join_list(sweep));
    const Rational limit = Rational(n * n) / params.eps;
    const bool grid = on_grid(ra.rounded, params.eps, n) && on_grid(ra.after_left, params.eps, n) &&
                      on_grid(ra.after_right, params.eps, n);
    const bool small = Rational(static_cast<long>(ra.after_left.size())) <= limit &&
                       Rational(static_cast<long>(ra.after_right.size())) <= limit;
    add_check(r, "grid", grid && small);
    std::vector<std::string> failing;
    for (const ReassemblyCheck& c : r.condition) {
      if (!c.holds) failing.push_back("cut " + std::to_string(c.cut));
    }
    add_check(r, "reassembly_condition", failing.empty(), join_list(failing));
  }
  {
    const std::vector<std::string> bad = requirement_violations(r.final, r.chain, r.corrections, params);
    add_check(r, "requirement", bad.empty(), join_list(bad));
  }
  if (r.options.check_join_cuts && n <= kEnumerationLimit) {
    const std::size_t atoms = r.final.size();
    std::vector<JoinCutCheck> results(atoms);
    timed(r.timings, "join_cuts", [&] {
      parallel_for(atoms, [&](std::size_t a) {
        results[a] = check_join_cuts(r.corrections.y[a], r.parities[a].odd_set, n);
      });
    });
    long long odd = 0;
    long long bad = 0;
    for (const JoinCutCheck& c : results) {
      odd += c.odd_cuts;
      bad += c.violations;
    }
    add_check(r, "join_cuts", bad == 0, std::to_string(odd) + " odd cuts, " + std::to_string(bad) + " below 1");
  } else {
    skip_check(r, "join_cuts", "n above enumeration limit or disabled");
  }
  {
    std::vector<std::string> bad;
    for (const CutAudit& c : r.audit.cuts) {
      if (!c.ok()) bad.push_back("cut " + std::to_string(c.level));
    }
    add_check(r, "benefit", bad.empty(), join_list(bad));
    std::vector<std::string> lemmas;
    for (const CutAudit& c : r.audit.cuts) {
      if (!c.lemmas_ok()) lemmas.push_back("cut " + std::to_string(c.level));
    }
    add_check(r, "critical_cuts", lemmas.empty(), join_list(lemmas));
  }
  add_check(r, "cost_chain", r.certificate.chain_ok);
  add_check(r, "certificate", r.certificate.certified);

  timed(r.timings, "tours", [&] { r.bomc = best_of_many(r.final, inst); });
  {
    std::vector<std::string> bad;
    const std::vector<Atom>& atoms = r.final.atoms();
    Rational basic = inst.cost_of(r.xstar);
    Rational product;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const TreeTour& tt = r.bomc.per_atom[a];
      if (tt.tour.cost > tt.st_tour.cost) bad.push_back("shortcut tour above its multigraph");
      if (tt.join_cost > inst.cost_of(r.parities[a].join)) bad.push_back("join above the tree's own join");
      product = atoms[a].weight * inst.cost_of(r.corrections.y[a]);
      basic += product;
    }
    if (r.bomc.tour.cost > r.bomc.value) bad.push_back("tour above best-of-many value");
    if (r.bomc.value > basic) bad.push_back("best-of-many above the basic bound");
    if (r.bomc.value > (2 - params.beta) * r.lp_value) bad.push_back("best-of-many above (2-beta) c(x*)");
    add_check(r, "tours", bad.empty(), join_list(bad));
  }
  if (r.options.compute_opt && n <= kHeldKarpLimit) {
    r.opt = timed(r.timings, "held_karp", [&] { return held_karp_opt(inst); });
    const bool ok = r.lp_value <= r.opt->cost && r.bomc.tour.cost <= (2 - params.beta) * r.opt->cost;
    add_check(r, "optimum", ok);
  }
}

}  // namespace

bool PipelineResult::checks_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

PipelineResult run_pipeline(PipelineInput input, const PipelineOptions& options) {
  options.params.validate();
  PipelineResult r{.label = input.label, .instance = std::move(input.instance), .options = options};
  const Instance& inst = r.instance;
  {
    const std::vector<Triple> bad = validate_metric(inst);
    if (!bad.empty()) throw PreconditionError("instance: cost function violates the triangle inequality");
  }
  if (input.xstar) {
    r.xstar = std::move(*input.xstar);
  } else {
    LpSolution lp = timed(r.timings, "solve_lp", [&] { return solve_lp(inst); });
    r.xstar = std::move(lp.x);
    r.lp_solved = true;
  }
  r.lp_value = inst.cost_of(r.xstar);
  {
    const bool degree = degrees_ok(r.xstar, inst);
    const std::vector<ViolatedCut> cuts = timed(r.timings, "separate", [&] { return separate(r.xstar, inst, 1); });
    add_check(r, "lp_feasible", degree && cuts.empty(), degree ? "" : "degree constraints fail");
  }
  r.chain = timed(r.timings, "narrow_cuts", [&] { return narrow_cuts(r.xstar, inst, options.params.xi); });
  if (input.start) {
    r.initial = std::move(*input.start);
  } else {
    r.initial = timed(r.timings, "decompose", [&] { return decompose(r.xstar, inst.n()); });
  }
  if (options.skip_reassembly) {
    r.final = r.initial;
  } else {
    r.reassembly = timed(r.timings, "reassemble",
                         [&] { return reassemble_distribution(r.initial, r.chain, options.params.eps); });
    r.final = r.reassembly->final;
  }
  analyse(r);
  return r;
}

PipelineResult verify(const TreeDistribution& d, const Instance& inst, const EdgeVector& xstar,
                      const PipelineOptions& options) {
  options.params.validate();
  PipelineResult r{.label = "verify", .instance = inst, .options = options};
  r.options.skip_reassembly = true;
  r.xstar = xstar;
  r.lp_value = inst.cost_of(xstar);
  {
    const bool metric = validate_metric(inst).empty();
    add_check(r, "metric", metric);
    const bool degree = degrees_ok(xstar, inst);
    bool cuts_ok = false;
    if (degree) cuts_ok = separate(xstar, inst, 1).empty();
    add_check(r, "lp_feasible", degree && cuts_ok, degree ? "" : "degree constraints fail");
    if (!degree || !cuts_ok) return r;
  }
  r.chain = narrow_cuts(xstar, inst, options.params.xi);
  r.initial = d;
  r.final = d;
  {
    bool spanning = true;
    for (const Atom& atom : d.atoms()) spanning = spanning && is_spanning_tree(atom.tree, inst.n());
    const bool whole = d.total_weight() == 1 && d.reconstruct() == xstar;
    if (!spanning || !whole) {
      add_check(r, "trees", spanning);
      add_check(r, "reconstruction", whole, "weights sum to " + to_string(d.total_weight()));
      return r;
    }
  }
  analyse(r);
  {
    std::vector<std::string> failing;
    for (const ReassemblyCheck& c : r.condition) {
      if (!c.holds) failing.push_back("cut " + std::to_string(c.cut));
    }
    add_check(r, "reassembly_condition", failing.empty(), join_list(failing));
  }
  return r;
}

namespace {

std::string census_line(const std::map<std::string, Rational>& census) {
  std::string out;
  for (const auto& [code, mass] : census) {
    if (sgn(mass) != 0) out += " " + code + "=" + to_string(mass);
  }
  return out;
}

std::string vertex_list(const std::vector<int>& members) {
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + std::to_string(members[i]);
  return out;
}

}  // namespace

std::string PipelineResult::report() const {
  std::ostringstream out;
  const GammaParams& params = options.params;
  out << "report " << label << "\n";
  out << "instance n=" << instance.n() << " s=" << instance.s() << " t=" << instance.t()
      << " digest=" << instance_digest(instance) << "\n";
  out << "params beta=" << to_string(params.beta) << " xi=" << to_string(params.xi) << " eps=" << to_string(params.eps)
      << " gamma=" << (params.legacy_half ? "half" : "cutoff") << " reassembly=" << (reassembly ? "yes" : "no") << "\n";
  out << "lp value=" << to_string(lp_value) << " source=" << (lp_solved ? "solved" : "given")
      << " support=" << xstar.support().size() << "\n";
  if (chain.level_count() == 0) {
    out << "cuts: unavailable\n";
  } else {
    out << "cuts: count=" << chain.level_count() << " xi_narrow=" << chain.xi_count() << "\n";
    for (int j = 0; j < chain.level_count(); ++j) {
      out << "level=" << j << " vertices=" << vertex_list(chain.level_members(j)) << " load=" << to_string(chain.load(j))
          << " xi_narrow=" << (chain.xi_index_of_level(j) >= 0 ? "yes" : "no") << "\n";
    }
  }
  out << "distribution initial_atoms=" << initial.size() << " final_atoms=" << final.size();
  if (reassembly) {
    out << " residual_mass=" << to_string(reassembly->residual.total_weight())
        << " exchanges_left=" << reassembly->left_log.size() << " exchanges_right=" << reassembly->right_log.size();
  }
  out << "\n";
  if (chain.level_count() > 0 && !final.empty()) {
    for (int q = 1; q + 1 < chain.xi_count(); ++q) {
      out << "types cut=" << q << " level=" << chain.xi_level(q) << " before:" << census_line(type_census(initial, chain, q))
          << " after:" << census_line(type_census(final, chain, q)) << "\n";
    }
    for (const ReassemblyCheck& c : condition) {
      out << "condition cut=" << c.cut << " sums=" << to_string(c.sums[0]) << "," << to_string(c.sums[1]) << ","
          << to_string(c.sums[2]) << "," << to_string(c.sums[3]) << " good=" << to_string(c.good)
          << " holds=" << (c.holds ? "yes" : "no") << "\n";
    }
  }
  if (!audit.cuts.empty()) {
    out << "audit:\n";
    for (const CutAudit& c : audit.cuts) {
      out << "cut=" << c.level << " load=" << to_string(c.load) << " case=" << c.case_label
          << " benefit=" << to_string(c.benefit) << " required=" << to_string(c.required)
          << " margin=" << to_string(c.margin) << " status=" << (c.ok() ? "OK" : "FAIL") << "\n";
      if (c.critical) {
        out << "critical cut=" << c.level << " claim_rhs=" << to_string(c.claim_rhs)
            << " claim=" << (c.claim_ok ? "OK" : "FAIL") << " bound=" << (c.bound_ok ? "OK" : "FAIL")
            << " lemmas=" << (c.lemmas_ok() ? "OK" : "FAIL") << "\n";
      }
    }
    out << "correction z_cost=" << to_string(certificate.z_cost) << " budget=" << to_string(certificate.path_budget)
        << " chain=" << to_string(certificate.chain[0]) << "," << to_string(certificate.chain[1]) << ","
        << to_string(certificate.chain[2]) << "," << to_string(certificate.chain[3]) << "\n";
    out << "certified_beta=" << (certificate.certified ? to_string(params.beta) : std::string("none")) << "\n";
  }
  if (!bomc.per_atom.empty()) {
    out << "tours:\n";
    for (std::size_t a = 0; a < bomc.per_atom.size(); ++a) {
      const TreeTour& tt = bomc.per_atom[a];
      out << "atom=" << a << " tree_cost=" << to_string(tt.tree_cost) << " join_cost=" << to_string(tt.join_cost)
          << " total=" << to_string(tt.st_tour.cost) << "\n";
    }
    out << "bomc=" << to_string(bomc.value) << " tour=" << to_string(bomc.tour.cost);
    if (opt) {
      const Rational ratio = bomc.tour.cost / opt->cost;
      out << " opt=" << to_string(opt->cost) << " ratio≈" << to_decimal(ratio, 6);
    } else {
      out << " opt=n/a";
    }
    out << "\n";
  }
  out << "checks:\n";
  for (const NamedCheck& c : checks) {
    out << "check " << c.name << " " << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL");
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  out << "verdict=" << (certificate.certified && checks_ok() ? "certified" : "not-certified") << " exit=" << exit_code()
      << "\n";
  return out.str();
}

std::string PipelineResult::timing_report() const {
  std::ostringstream out;
  out << "timings:\n";
  for (const StageTiming& t : timings) {
    out << "stage=" << t.stage << " ms=" << static_cast<long long>(t.milliseconds + 0.5) << "\n";
  }
  return out.str();
}

}  // namespace pathtsp
