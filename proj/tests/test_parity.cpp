#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "figures.hpp"
#include "oracles.hpp"
#include "pathtsp/appendix.hpp"
#include "pathtsp/errors.hpp"
#include "pathtsp/lp_relax.hpp"
#include "pathtsp/parity.hpp"
#include "pathtsp/reassembler.hpp"
#include "pathtsp/tree_decomp.hpp"

using namespace pathtsp;

namespace {

Instance uniform(int n) { return Instance(n, 0, n - 1, std::vector<Rational>(edge_count(n), Rational(1))); }

GammaParams params_with_beta(const Rational& beta, bool legacy = false) {
  GammaParams p;
  p.beta = beta;
  p.legacy_half = legacy;
  return p;
}

/// Smallest y(δ(U)) over U with |U ∩ T| odd, by plain enumeration; -1 if T is empty.
Rational min_odd_cut(const EdgeVector& y, const std::vector<int>& odd, int n) {
  Rational best = -1;
  for (unsigned mask = 1; mask + 1 < (1U << n); ++mask) {
    int inside = 0;
    for (int v : odd) inside += (mask >> v) & 1U;
    if (inside % 2 == 0) continue;
    const Rational value = oracle::load(y, oracle::members(mask, n));
    if (best < 0 || value < best) best = value;
  }
  return best;
}

}  // namespace

TEST_CASE("path and join of the hand-built tree") {
  const Instance inst = uniform(figures::fig1_n);
  const TreeParity p = split_path_join(figures::fig1_tree(), inst);
  CHECK(p.path == figures::fig1_path());
  std::vector<Edge> join = figures::fig1_join();
  std::sort(join.begin(), join.end());
  CHECK(p.join == join);
  std::vector<int> odd = figures::fig1_odd();
  std::sort(odd.begin(), odd.end());
  CHECK(p.odd_set == odd);
}

TEST_CASE("a Hamiltonian path has an empty join") {
  const Instance inst = uniform(5);
  const Tree path({make_edge(0, 2), make_edge(2, 1), make_edge(1, 3), make_edge(3, 4)});
  const TreeParity p = split_path_join(path, inst);
  CHECK(p.path.size() == 4);
  CHECK(p.path.front() == make_edge(0, 2));
  CHECK(p.join.empty());
  CHECK(p.odd_set.empty());
}

TEST_CASE("star centred at s") {
  const Instance inst = uniform(4);
  const Tree star({make_edge(0, 1), make_edge(0, 2), make_edge(0, 3)});
  const TreeParity p = split_path_join(star, inst);
  CHECK(p.path == std::vector<Edge>{make_edge(0, 3)});
  CHECK(p.join == std::vector<Edge>{make_edge(0, 1), make_edge(0, 2)});
  CHECK(p.odd_set == std::vector<int>{1, 2});
}

TEST_CASE("the weighting function") {
  const GammaParams p = params_with_beta(make_rational(2, 5));
  CHECK(p.f(make_rational(3, 2)) == make_rational(1, 2));
  const GammaParams q;
  CHECK(q.f(make_rational(3, 2)) == make_rational(401, 792));
  CHECK(q.f(make_rational(3, 2)) > make_rational(1, 2));
  CHECK(q.f(Rational(1)) == 0);
  CHECK(q.f(Rational(2)) == 0);
  CHECK_THROWS_AS(params_with_beta(make_rational(1, 2)).validate(), PreconditionError);
  CHECK_THROWS_AS(params_with_beta(make_rational(1, 3)).validate(), PreconditionError);
}

TEST_CASE("gamma on edges in no narrow cut is 1") {
  TreeDistribution d;
  d.add(figures::fig1_tree(), Rational(1), "test");
  const std::vector<TreeParity> p = assign_gamma(d, figures::fig1_chain(), GammaParams{});
  CHECK(p[0].gamma_of(make_edge(figures::e2, figures::e)) == 1);
  CHECK(p[0].gamma_of(make_edge(figures::f, figures::f2)) == 1);
  CHECK_THROWS_AS(p[0].gamma_of(make_edge(figures::c, figures::d)), PreconditionError);
}

TEST_CASE("gamma rule evaluated by hand") {
  // Every internal cut of the hand-built chain has load 3/2, so f = 401/792 > 1/2 is capped at 1/2.
  TreeDistribution d;
  d.add(figures::fig1_tree(), Rational(1), "test");
  const CutChain chain = figures::fig1_chain();
  const std::vector<TreeParity> p = assign_gamma(d, chain, GammaParams{});
  const Rational half = make_rational(1, 2);
  for (std::size_t i = 0; i < p[0].path.size(); ++i) {
    const Edge e = p[0].path[i];
    bool one = false;
    bool even = false;
    for (int j = 0; j < chain.level_count(); ++j) {
      const std::vector<char> side = chain.level_set(j);
      if (side[e.u] == side[e.v] || chain.load(j) == 1) continue;
      const int c = oracle::crossing(figures::fig1_tree(), side);
      one |= c == 1;
      even |= c % 2 == 0;
    }
    // f1 = 1/2 when a crossed cut has one tree edge, f2 = 1/2 when one has an even count.
    const Rational f1 = one ? half : Rational(0);
    const Rational f2 = even ? half : Rational(0);
    const Rational expected = f2 < f1 ? f2 : Rational(1 - f1);
    CHECK(p[0].gamma[i] == expected);
  }
  const std::vector<TreeParity> legacy = assign_gamma(d, chain, params_with_beta(make_rational(2, 5), true));
  for (const Rational& g : legacy[0].gamma) CHECK(g == half);
}

TEST_CASE("designated edge is the first path edge in the cut") {
  const Instance inst = uniform(figures::fig1_n);
  const TreeParity p = split_path_join(figures::fig1_tree(), inst);
  const CutChain chain = figures::fig1_chain();
  CHECK(designated_edge(p, chain, 0) == make_edge(figures::s, figures::a));
  CHECK(designated_edge(p, chain, 1) == make_edge(figures::a, figures::d2));
  CHECK(designated_edge(p, chain, 4) == make_edge(figures::d2, figures::e2));
  CHECK(designated_edge(p, chain, 7) == make_edge(figures::f2, figures::t));
}

TEST_CASE("raw appendix trees get benefit one half on the wall") {
  const AppendixFixture fx = build_appendix_instance(0);
  const CutChain chain = narrow_cuts(fx.xstar, fx.instance);
  const GammaParams params;
  const std::vector<TreeParity> p = assign_gamma(fx.trees, chain, params);
  const BenefitAudit audit = benefits(fx.trees, chain, p, params);
  for (int j = 5; j <= 8; ++j) {
    const CutAudit& c = audit.cuts[j];
    CHECK(c.benefit == make_rational(1, 2));
    CHECK(c.required == make_rational(401, 792));
    CHECK(c.margin < 0);
    CHECK(c.critical);
  }
  // Trees crossing a wall cut once get gamma 1/2 on the crossing path edge.
  for (std::size_t a = 0; a < p.size(); ++a) {
    const std::vector<int> count = chain.crossings(fx.trees.atoms()[a].tree);
    for (int j = 5; j <= 8; ++j) {
      if (count[j] == 1) CHECK(p[a].gamma_of(designated_edge(p[a], chain, j)) == make_rational(1, 2));
    }
  }
  const CorrectionVectors cv = correction_vectors(fx.trees, chain, fx.xstar, p, params, fx.instance);
  const Certificate cert = certify_bound(fx.trees, audit, cv, p, chain, params, fx.instance);
  CHECK(!cert.certified);
}

TEST_CASE("legacy mode at beta 2/5 meets the requirement on the raw appendix trees") {
  const AppendixFixture fx = build_appendix_instance(0);
  const CutChain chain = narrow_cuts(fx.xstar, fx.instance);
  const GammaParams params = params_with_beta(make_rational(2, 5), true);
  const std::vector<TreeParity> p = assign_gamma(fx.trees, chain, params);
  const BenefitAudit audit = benefits(fx.trees, chain, p, params);
  CHECK(audit.all_ok());
  for (int j = 5; j <= 8; ++j) CHECK(audit.cuts[j].margin == 0);
}

TEST_CASE("correction vectors on the raw appendix trees") {
  const AppendixFixture fx = build_appendix_instance(0);
  const CutChain chain = narrow_cuts(fx.xstar, fx.instance);
  const GammaParams params;
  const Rational beta = params.beta;
  const std::vector<TreeParity> p = assign_gamma(fx.trees, chain, params);
  const CorrectionVectors cv = correction_vectors(fx.trees, chain, fx.xstar, p, params, fx.instance);
  bool saw_top_up = false;
  for (std::size_t a = 0; a < p.size(); ++a) {
    const Tree& tree = fx.trees.atoms()[a].tree;
    EdgeVector z;
    for (std::size_t i = 0; i < p[a].path.size(); ++i) z.add(p[a].path[i], (1 - 2 * beta) * p[a].gamma[i]);
    for (int j = 0; j < chain.level_count(); ++j) {
      const std::vector<char> side = chain.level_set(j);
      if (oracle::crossing(tree, side) % 2 != 0) continue;
      // cheapest crossing edge, lexicographic among ties
      Edge cheapest{};
      bool found = false;
      for (int u = 0; u < chain.n(); ++u) {
        for (int v = u + 1; v < chain.n(); ++v) {
          if (side[u] == side[v]) continue;
          if (!found || fx.instance.cost(u, v) < fx.instance.cost(cheapest)) cheapest = Edge{u, v};
          found = true;
        }
      }
      CHECK(cv.cheapest[j] == cheapest);
      Edge first{};
      for (const Edge& e : p[a].path) {
        if (side[e.u] != side[e.v]) {
          first = e;
          break;
        }
      }
      const Rational top = beta * (2 - chain.load(j)) - (1 - 2 * beta) * p[a].gamma_of(first);
      if (top > 0) z.add(cheapest, top);
      if (p[a].gamma_of(first) == make_rational(1, 2) && chain.load(j) == make_rational(3, 2)) {
        CHECK(top == make_rational(203, 2000));
        saw_top_up = true;
      }
    }
    CHECK(cv.z[a] == z);
    EdgeVector y;
    for (const auto& [e, value] : fx.xstar.entries()) y.add(e, beta * value);
    for (const Edge& e : p[a].join) y.add(e, 1 - 2 * beta);
    for (const auto& [e, value] : z.entries()) y.add(e, value);
    CHECK(cv.y[a] == y);
  }
  CHECK(saw_top_up);
  CHECK(requirement_violations(fx.trees, chain, cv, params).empty());
}

TEST_CASE("correction vectors cover every odd cut") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 5 + static_cast<int>(seed % 6);
    const Instance inst = random_metric_instance(n, seed);
    const LpSolution sol = solve_lp(inst);
    const GammaParams params;
    const Reassembly r = reassemble(sol.x, inst, params.xi, params.eps);
    const std::vector<TreeParity> p = assign_gamma(r.final, r.chain, params);
    const CorrectionVectors cv = correction_vectors(r.final, r.chain, sol.x, p, params, inst);
    CHECK(requirement_violations(r.final, r.chain, cv, params).empty());
    for (std::size_t a = 0; a < p.size(); ++a) {
      const JoinCutCheck check = check_join_cuts(cv.y[a], p[a].odd_set, n);
      CHECK(check.checked);
      CHECK(check.violations == 0);
      if (!p[a].odd_set.empty()) {
        const Rational expected = min_odd_cut(cv.y[a], p[a].odd_set, n);
        CHECK(check.min_load == expected);
        CHECK(expected >= 1);
      }
    }
  }
}

TEST_CASE("benefit audit on reassembled distributions") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 5 + static_cast<int>(seed % 8);
    const Instance inst = random_metric_instance(n, seed);
    const LpSolution sol = solve_lp(inst);
    const GammaParams params;
    const Reassembly r = reassemble(sol.x, inst, params.xi, params.eps);
    const std::vector<TreeParity> p = assign_gamma(r.final, r.chain, params);
    const BenefitAudit audit = benefits(r.final, r.chain, p, params);
    for (const CutAudit& c : audit.cuts) {
      CHECK(c.margin >= 0);
      if (!c.critical) continue;
      CHECK(c.lemmas_ok());
      for (const TreeBenefit& t : c.trees) {
        if (t.crossings == 1) CHECK(t.benefit >= make_rational(1, 2));
      }
    }
  }
}

TEST_CASE("certificate for the reassembled appendix") {
  const AppendixFixture fx = build_appendix_instance(0);
  const GammaParams params;
  const CutChain chain = narrow_cuts(fx.xstar, fx.instance, params.xi);
  const Reassembly r = reassemble_distribution(fx.trees, chain, params.eps);
  const std::vector<TreeParity> p = assign_gamma(r.final, chain, params);
  const BenefitAudit audit = benefits(r.final, chain, p, params);
  CHECK(audit.all_ok());
  const CorrectionVectors cv = correction_vectors(r.final, chain, fx.xstar, p, params, fx.instance);
  const Certificate cert = certify_bound(r.final, audit, cv, p, chain, params, fx.instance);
  CHECK(cert.certified);
  CHECK(cert.chain_ok);
  CHECK(cert.z_cost <= cert.path_budget);
}

TEST_CASE("instance-independent constants") {
  const GammaParams params;
  const ConstantChecks c = theorem_constants(params);
  // Independent evaluation of the same quantities.
  const Rational beta = make_rational(401, 1000);
  const Rational xi = make_rational(173, 100);
  const Rational f_xi = beta * (2 - xi) * (xi - 1) / (1 - 2 * beta);
  const Rational nu = 1 - f_xi;
  CHECK(c.nu == nu);
  CHECK(nu > make_rational(3, 5));
  const Rational floor = 3 / (6 + 4 * xi * (2 - xi));
  CHECK(c.beta_floor == floor);
  CHECK(beta >= floor);
  CHECK(c.grid_points == 121);
  CHECK(c.all());
  Rational grid_min = -1;
  for (int i = 1440; i <= 1560; ++i) {
    const Rational x = make_rational(i, 1000);
    const Rational slack = 1 + (5 - make_rational(3, 2) * (x + xi) - params.eps) * (nu - make_rational(1, 2)) -
                           2 * beta / (1 - 2 * beta) * (x - 1) * (2 - x);
    CHECK(slack == constant_bound_slack(x, params));
    if (grid_min < 0 || slack < grid_min) grid_min = slack;
  }
  CHECK(c.grid_min_slack == grid_min);
  CHECK(grid_min >= 0);
  CHECK(c.extremum_slack >= 0);
  CHECK(c.extremum_slack == constant_bound_slack(c.extremum, params));
  // The slack is a convex quadratic in x; its minimiser lies where the derivative vanishes.
  const Rational h = make_rational(1, 1000000);
  CHECK(constant_bound_slack(c.extremum + h, params) >= c.extremum_slack);
  CHECK(constant_bound_slack(c.extremum - h, params) >= c.extremum_slack);
}
