// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Optional argv[1]: path of the command-line tool, used for the determinism check.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "synthetic.hpp"
#include "pathtsp/appendix.hpp"
#include "pathtsp/bomc.hpp"
#include "pathtsp/cuts.hpp"
#include "pathtsp/lp_relax.hpp"
#include "pathtsp/parity.hpp"
#include "pathtsp/pipeline.hpp"
#include "pathtsp/reassembler.hpp"

using namespace pathtsp;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      if (notes.size() < 8) notes.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << s << "s";
  return out.str();
}

/// Rank of a rational matrix by exact Gaussian elimination.
int rank(std::vector<std::vector<Rational>> m) {
  int r = 0;
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i) {
      if (sgn(m[i][c]) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[r], m[pivot]);
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational factor = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    ++r;
  }
  return r;
}

std::set<std::string> failing_checks(const PipelineResult& r) {
  std::set<std::string> out;
  for (const NamedCheck& c : r.checks) {
    if (!c.passed) out.insert(c.name);
  }
  return out;
}

std::string join(const std::set<std::string>& names) {
  std::string out;
  for (const std::string& n : names) out += (out.empty() ? "" : ",") + n;
  return out;
}

PipelineInput fixture_input(int k) {
  AppendixFixture fx = build_appendix_instance(k);
  return PipelineInput{.label = "appendix k=" + std::to_string(k), .instance = fx.instance, .xstar = fx.xstar,
                       .start = fx.trees};
}

bool fractional(const EdgeVector& x) {
  for (const auto& [e, value] : x.entries()) {
    if (value != 1) return true;
  }
  return false;
}

// 1. Fixture shape, loads, reconstruction and the vertex certificate.
Outcome appendix_fixture() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const AppendixFixture fx = build_appendix_instance(0);
  const Instance& inst = fx.instance;
  o.require(inst.n() == 20, "n != 20");
  const std::vector<Edge> support = fx.xstar.support();
  o.require(support.size() == 30, "support size " + std::to_string(support.size()));
  o.require(oracle::lp_feasible(fx.xstar, inst), "x* infeasible by subset enumeration");

  const CutChain chain = narrow_cuts(fx.xstar, inst);
  o.require(chain.level_count() == 12, "chain has " + std::to_string(chain.level_count()) + " levels");
  for (int j = 0; j < chain.level_count(); ++j) {
    const bool end = j == 0 || j == chain.level_count() - 1;
    const Rational expect = end ? Rational(1) : make_rational(3, 2);
    o.require(chain.load(j) == expect, "level " + std::to_string(j) + " load " + to_string(chain.load(j)));
  }
  const std::vector<unsigned> narrow = oracle::narrow_sets(fx.xstar, inst, Rational(2));
  o.require(narrow.size() == 12, "enumeration finds " + std::to_string(narrow.size()) + " narrow cuts");

  o.require(fx.trees.size() == 4, "fixture has " + std::to_string(fx.trees.size()) + " trees");
  EdgeVector sum;
  for (const Atom& a : fx.trees.atoms()) {
    o.require(a.weight == make_rational(1, 4), "tree weight " + to_string(a.weight));
    o.require(oracle::spanning(a.tree.edges(), inst.n()), "fixture atom is not a spanning tree");
    for (const Edge& e : a.tree.edges()) sum.add(e, a.weight);
  }
  o.require(sum == fx.xstar, "four trees do not reconstruct x*");

  o.require(fx.tight_sets.size() == 30, "tight family has " + std::to_string(fx.tight_sets.size()) + " sets");
  std::vector<std::vector<Rational>> rows;
  for (const std::vector<int>& set : fx.tight_sets) {
    std::vector<char> in(inst.n(), 0);
    for (int v : set) in[v] = 1;
    const bool odd = in[inst.s()] != in[inst.t()];
    const Rational load = oracle::load(fx.xstar, in);
    o.require(load == (odd ? 1 : 2), "a listed set is not tight");
    std::vector<Rational> row;
    for (const Edge& e : support) row.push_back(Rational(in[e.u] != in[e.v] ? 1 : 0));
    rows.push_back(row);
  }
  const int r = rank(rows);
  o.require(r == 30, "tight cut vectors have rank " + std::to_string(r));

  const PipelineResult run = run_pipeline(fixture_input(0), PipelineOptions{});
  o.require(run.final.reconstruct() == fx.xstar, "pipeline output does not reconstruct x*");
  const double spent = seconds_since(start);
  o.require(spent <= 10, "took " + fmt_seconds(spent));
  o.notes.insert(o.notes.begin(), "n=20 support=30 rank=" + std::to_string(r) + " time=" + fmt_seconds(spent));
  return o;
}

// 2. Raw four trees: benefit exactly 1/2 and a negative margin on every wall cut.
Outcome negative_control() {
  Outcome o;
  PipelineOptions options;
  options.skip_reassembly = true;
  options.params.beta = make_rational(401, 1000);
  const PipelineResult r = run_pipeline(fixture_input(0), options);
  int walls = 0;
  for (int level = 5; level <= 8; ++level) {
    const CutAudit& c = r.audit.cuts[level];
    o.require(c.benefit == make_rational(1, 2), "wall level " + std::to_string(level) + " benefit " + to_string(c.benefit));
    o.require(c.margin < 0, "wall level " + std::to_string(level) + " margin " + to_string(c.margin));
    ++walls;
  }
  o.require(!r.certificate.certified, "raw distribution certified");
  o.require(r.exit_code() != 0, "raw distribution passed every check");
  o.notes.insert(o.notes.begin(), std::to_string(walls) + " wall cuts at benefit 1/2, margin " +
                                      to_string(r.audit.cuts[5].margin));
  return o;
}

// 3. Reassembled fixture for k = 0, 1, 2.
Outcome positive_result() {
  Outcome o;
  std::string summary;
  for (int k = 0; k <= 2; ++k) {
    const auto start = std::chrono::steady_clock::now();
    const PipelineResult r = run_pipeline(fixture_input(k), PipelineOptions{});
    const double spent = seconds_since(start);
    const std::string tag = "k=" + std::to_string(k) + ": ";
    for (const ReassemblyCheck& c : r.condition) o.require(c.holds, tag + "condition fails at cut " + std::to_string(c.cut));
    for (const CutAudit& c : r.audit.cuts) o.require(sgn(c.margin) >= 0, tag + "margin negative at level " + std::to_string(c.level));
    o.require(r.certificate.certified, tag + "not certified");
    o.require(r.bomc.value <= (2 - make_rational(401, 1000)) * r.lp_value, tag + "bomc above (2-beta)c(x*)");
    o.require(r.final.reconstruct() == r.xstar, tag + "reconstruction");
    const std::set<std::string> bad = failing_checks(r);
    o.require(bad.empty(), tag + "failing checks " + join(bad));
    o.require(spent <= 60, tag + "took " + fmt_seconds(spent));
    summary += (summary.empty() ? "" : " ") + tag + "bomc=" + to_string(r.bomc.value) + " c(x*)=" + to_string(r.lp_value) +
               " " + fmt_seconds(spent);
  }
  o.notes.insert(o.notes.begin(), summary);
  return o;
}

// 4. Constants.
Outcome constants() {
  Outcome o;
  const GammaParams params;
  const ConstantChecks c = theorem_constants(params);
  const Rational beta = make_rational(401, 1000);
  const Rational xi = make_rational(173, 100);
  const Rational nu = 1 - beta * (2 - xi) * (xi - 1) / (1 - 2 * beta);
  o.require(nu > make_rational(3, 5), "nu = " + to_string(nu));
  o.require(c.nu == nu, "library nu differs");
  const Rational floor = 3 / (6 + 4 * xi * (2 - xi));
  o.require(beta >= floor, "beta below " + to_string(floor));
  Rational worst = -1;
  for (int i = 1440; i <= 1560; ++i) {
    const Rational x = make_rational(i, 1000);
    const Rational slack = 1 + (5 - make_rational(3, 2) * (x + xi) - params.eps) * (nu - make_rational(1, 2)) -
                           2 * beta / (1 - 2 * beta) * (x - 1) * (2 - x);
    if (worst < 0 || slack < worst) worst = slack;
    o.require(slack >= 0, "slack negative at " + to_string(x));
  }
  // The slack is quadratic in x with positive leading coefficient; its vertex solves the derivative.
  const Rational a = 2 * beta / (1 - 2 * beta);
  const Rational b = make_rational(3, 2) * (nu - make_rational(1, 2));
  // d/dx: -b - a(3 - 2x) = 0  =>  x = (3 + b/a)/2
  const Rational vertex = (3 + b / a) / 2;
  const Rational at_vertex = 1 + (5 - make_rational(3, 2) * (vertex + xi) - params.eps) * (nu - make_rational(1, 2)) -
                             a * (vertex - 1) * (2 - vertex);
  o.require(at_vertex >= 0, "slack negative at the analytic minimiser");
  o.require(c.extremum == vertex, "library extremum differs");
  o.require(c.all(), "library constant checks fail");
  o.notes.insert(o.notes.begin(), "nu=" + to_string(nu) + " beta_floor~" + to_decimal(floor, 6) + " min grid slack~" +
                                      to_decimal(worst, 6) + " vertex x~" + to_decimal(vertex, 6));
  return o;
}

struct RandomCase {
  std::uint64_t seed;
  int n;
};

/// Seeds 1..200 with n cycling through 5..12, then further seeds until 40 cases have a fractional x*.
std::vector<RandomCase> random_cases(int& fractional_count) {
  std::vector<RandomCase> out;
  fractional_count = 0;
  for (std::uint64_t seed = 1; out.size() < 200 || fractional_count < 40; ++seed) {
    const int n = 5 + static_cast<int>(seed % 8);
    const bool frac = fractional(solve_lp(random_metric_instance(n, seed)).x);
    if (out.size() >= 200 && !frac) continue;
    out.push_back(RandomCase{seed, n});
    fractional_count += frac;
    if (seed > 20000) break;
  }
  return out;
}

// 5. Property suite.
Outcome property_suite(const std::vector<RandomCase>& cases, int fractional_count) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  long long exchanges = 0;
  Rational worst_ratio = 0;
  for (const RandomCase& rc : cases) {
    const Instance inst = random_metric_instance(rc.n, rc.seed);
    PipelineInput in{.label = "random", .instance = inst};
    const PipelineResult r = run_pipeline(std::move(in), PipelineOptions{});
    const std::string tag = "seed " + std::to_string(rc.seed) + " n=" + std::to_string(rc.n) + ": ";
    const std::set<std::string> bad = failing_checks(r);
    o.require(bad.empty(), tag + join(bad));
    // Independent re-checks.
    o.require(oracle::lp_feasible(r.xstar, inst), tag + "x* infeasible");
    o.require(r.final.reconstruct() == r.xstar, tag + "reconstruction");
    if (r.reassembly) {
      exchanges += static_cast<long long>(r.reassembly->left_log.size() + r.reassembly->right_log.size());
      for (const auto* log : {&r.reassembly->left_log, &r.reassembly->right_log}) {
        for (const ExchangeRecord& rec : *log) o.require(validate_exchange(rec, r.chain).empty(), tag + "exchange");
      }
    }
    for (std::size_t a = 0; a < r.parities.size(); ++a) {
      const std::vector<int>& odd = r.parities[a].odd_set;
      for (unsigned mask = 1; mask + 1 < (1U << rc.n); ++mask) {
        int inside = 0;
        for (int v : odd) inside += (mask >> v) & 1U;
        if (inside % 2 == 1) {
          o.require(oracle::load(r.corrections.y[a], oracle::members(mask, rc.n)) >= 1, tag + "odd cut below 1");
        }
      }
    }
    o.require(r.certificate.certified, tag + "not certified");
    o.require(r.bomc.tour.cost <= r.bomc.value, tag + "tour above bomc");
    o.require(r.bomc.value <= make_rational(1599, 1000) * r.lp_value, tag + "bomc above 1.599 c(x*)");
    const Rational opt = oracle::path_optimum(inst);
    o.require(r.opt && r.opt->cost == opt, tag + "optimum mismatch");
    const Rational ratio = r.bomc.tour.cost / opt;
    o.require(ratio <= make_rational(1599, 1000), tag + "ratio " + to_string(ratio));
    if (ratio > worst_ratio) worst_ratio = ratio;
  }
  // LP optima of small random instances rarely contain exchangeable pairs, so
  // the exchange postconditions are also exercised on synthetic chains.
  std::mt19937_64 rng(2024);
  long long synthetic_exchanges = 0;
  const Rational eps = make_rational(1, 100);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 5 + trial % 10;
    const CutChain chain = synthetic::random_chain(n, rng);
    const TreeDistribution d = synthetic::random_distribution(chain, eps, 2 + trial % 6, rng);
    std::vector<ExchangeRecord> log;
    const TreeDistribution left = sweep_left(d, chain, eps, &log);
    const TreeDistribution right = sweep_right(left, chain, eps, &log);
    const std::string tag = "synthetic trial " + std::to_string(trial) + ": ";
    o.require(right.reconstruct() == d.reconstruct(), tag + "mass moved");
    for (const Atom& a : right.atoms()) o.require(oracle::spanning(a.tree.edges(), n), tag + "not a tree");
    for (int q = 1; q + 1 < chain.xi_count(); ++q) {
      auto census = type_census(right, chain, q);
      o.require(census["011"] == 0 || census["120"] == 0, tag + "120/011 remain");
    }
    for (const ExchangeRecord& rec : log) o.require(validate_exchange(rec, chain).empty(), tag + "exchange");
    synthetic_exchanges += static_cast<long long>(log.size());
  }
  o.require(synthetic_exchanges > 0, "no synthetic exchanges");
  const double spent = seconds_since(start);
  o.require(spent <= 600, "took " + fmt_seconds(spent));
  o.notes.insert(o.notes.begin(), std::to_string(cases.size()) + " instances (" + std::to_string(fractional_count) +
                                      " fractional), " + std::to_string(exchanges) + " exchanges, " +
                                      std::to_string(synthetic_exchanges) + " synthetic exchanges, worst ratio~" +
                                      to_decimal(worst_ratio, 6) + ", " + fmt_seconds(spent));
  return o;
}

// 6. Legacy weighting at beta = 2/5 on the same instances.
Outcome legacy_mode(const std::vector<RandomCase>& cases) {
  Outcome o;
  PipelineOptions options;
  options.params.beta = make_rational(2, 5);
  options.params.legacy_half = true;
  options.compute_opt = false;
  options.check_join_cuts = false;
  int cuts = 0;
  for (const RandomCase& rc : cases) {
    PipelineInput in{.label = "random", .instance = random_metric_instance(rc.n, rc.seed)};
    const PipelineResult r = run_pipeline(std::move(in), options);
    for (const CutAudit& c : r.audit.cuts) {
      ++cuts;
      o.require(sgn(c.margin) >= 0, "seed " + std::to_string(rc.seed) + " level " + std::to_string(c.level));
    }
  }
  o.notes.insert(o.notes.begin(), std::to_string(cases.size()) + " instances, " + std::to_string(cuts) + " cuts");
  return o;
}

// 7. Library routines against brute force.
Outcome oracle_equivalences() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 8 + trial % 5;
    const Instance inst = random_metric_instance(n, 1000 + static_cast<std::uint64_t>(trial));
    std::vector<int> vertices(n);
    for (int v = 0; v < n; ++v) vertices[v] = v;
    std::shuffle(vertices.begin(), vertices.end(), rng);
    const int size = 2 * static_cast<int>(rng() % 5);  // 0..8
    std::vector<int> odd(vertices.begin(), vertices.begin() + size);
    std::sort(odd.begin(), odd.end());
    const Rational got = inst.cost_of(min_tjoin(odd, inst));
    o.require(got == oracle::matching_cost(odd, inst), "T-join trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 6;
    const Instance inst = random_metric_instance(n, 5000 + static_cast<std::uint64_t>(trial));
    o.require(held_karp_opt(inst).cost == oracle::path_optimum(inst), "Held-Karp trial " + std::to_string(trial));
  }
  int lp_cases = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 5 + trial % 8;
    const Instance inst = random_metric_instance(n, 9000 + static_cast<std::uint64_t>(trial));
    const LpSolution sol = solve_lp(inst);
    o.require(separate(sol.x, inst).empty() && oracle::lp_feasible(sol.x, inst), "LP optimum trial " + std::to_string(trial));
    o.require(sol.value <= oracle::path_optimum(inst), "LP above optimum, trial " + std::to_string(trial));
    // Damage one coordinate and move the mass elsewhere: both methods must agree on the cut constraints.
    EdgeVector x = sol.x;
    const std::vector<Edge> support = x.support();
    const Edge e = support[rng() % support.size()];
    const Rational moved = x[e] / 2;
    x.add(e, -moved);
    const int u = static_cast<int>(rng() % n);
    const int v = (u + 1 + static_cast<int>(rng() % (n - 1))) % n;
    x.add(make_edge(u, v), moved);
    const int brute = oracle::violated_cut_count(x, inst);
    o.require(static_cast<int>(separate(x, inst).size()) == brute, "separation count, trial " + std::to_string(trial));
    ++lp_cases;
  }
  o.notes.insert(o.notes.begin(), "500 T-join, 100 Held-Karp, " + std::to_string(lp_cases) + " LP feasibility cases");
  return o;
}

std::string capture(const std::string& command) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return out;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe.get())) > 0) out.append(buffer, got);
  return out;
}

// 8. Byte-identical reports.
Outcome determinism(const std::string& tool) {
  Outcome o;
  for (int k = 0; k <= 1; ++k) {
    o.require(run_pipeline(fixture_input(k), PipelineOptions{}).report() ==
                  run_pipeline(fixture_input(k), PipelineOptions{}).report(),
              "appendix report differs");
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto once = [&] {
      PipelineInput in{.label = "random", .instance = random_metric_instance(12, seed)};
      return run_pipeline(std::move(in), PipelineOptions{}).report();
    };
    o.require(once() == once(), "random report differs, seed " + std::to_string(seed));
  }
  std::string how = "library";
  if (!tool.empty()) {
    for (const std::string args : {"run appendix --k 0", "run random --n 12 --seed 7", "run appendix --k 0 --skip-reassembly"}) {
      const std::string a = capture(tool + " " + args);
      const std::string b = capture(tool + " " + args);
      o.require(!a.empty() && a == b, "command output differs: " + args);
    }
    how = "library and command line";
  }
  o.notes.insert(o.notes.begin(), how);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string tool = argc > 1 ? argv[1] : "";
  int failures = 0;
  auto report = [&](int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " " << name;
    for (const std::string& n : o.notes) std::cout << " | " << n;
    std::cout << std::endl;
  };
  report(1, "appendix fixture", appendix_fixture);
  report(2, "appendix negative control", negative_control);
  report(3, "appendix after reassembly", positive_result);
  report(4, "constants", constants);
  int fractional_count = 0;
  std::vector<RandomCase> cases;
  report(5, "random property suite", [&] {
    cases = random_cases(fractional_count);
    return property_suite(cases, fractional_count);
  });
  report(6, "legacy weighting", [&] { return legacy_mode(cases); });
  report(7, "oracle equivalences", oracle_equivalences);
  report(8, "determinism", [&] { return determinism(tool); });
  return failures == 0 ? 0 : 1;
}
