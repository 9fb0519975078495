#include "pathtsp/parity.hpp"

#include <algorithm>
#include <bit>

#include "pathtsp/cut_enum.hpp"
#include "pathtsp/errors.hpp"

namespace pathtsp {

Rational GammaParams::f(const Rational& x) const {
  Rational value = beta * (2 - x) * (x - 1) / (1 - 2 * beta);
  return value;
}

Rational GammaParams::nu() const {
  Rational value = 1 - f(xi);
  return value;
}

void GammaParams::validate() const {
  if (beta < make_rational(2, 5) || beta >= make_rational(1, 2)) throw PreconditionError("beta must lie in [2/5, 1/2)");
  if (xi < make_rational(17, 10) || xi > make_rational(9, 5)) throw PreconditionError("xi must lie in [17/10, 9/5]");
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  if (nu() <= make_rational(1, 2)) throw PreconditionError("nu = 1 - f(xi) must exceed 1/2");
}

const Rational& TreeParity::gamma_of(Edge e) const {
  const auto it = std::find(path.begin(), path.end(), e);
  if (it == path.end() || gamma.size() != path.size()) throw PreconditionError("gamma queried off the path or before assignment");
  return gamma[static_cast<std::size_t>(it - path.begin())];
}

bool TreeParity::on_path(Edge e) const { return std::find(path.begin(), path.end(), e) != path.end(); }

namespace {

TreeParity split(const Tree& tree, int n, int s, int t) {
  TreeParity parity;
  parity.path = tree_path(tree, n, s, t);
  for (const Edge& e : tree.edges()) {
    if (!parity.on_path(e)) parity.join.push_back(e);
  }
  const std::vector<int> degree = tree_degrees(tree, n);
  for (int v = 0; v < n; ++v) {
    const bool end = v == s || v == t;
    if ((degree[v] % 2 == 1) != end) parity.odd_set.push_back(v);
  }
  return parity;
}

}  // namespace

TreeParity split_path_join(const Tree& tree, const Instance& inst) { return split(tree, inst.n(), inst.s(), inst.t()); }

std::vector<TreeParity> assign_gamma(const TreeDistribution& d, const CutChain& chain, const GammaParams& params) {
  std::vector<TreeParity> out;
  const Rational half = make_rational(1, 2);
  for (const Atom& atom : d.atoms()) {
    TreeParity parity = split(atom.tree, chain.n(), chain.s(), chain.t());
    const std::vector<int> count = chain.crossings(atom.tree);
    for (const Edge& e : parity.path) {
      if (params.legacy_half) {
        parity.gamma.push_back(half);
        continue;
      }
      bool any_one = false;
      bool any_even = false;
      Rational f1 = 0;
      Rational f2 = 0;
      const auto [lo, hi] = chain.level_span(e);
      for (int j = lo; j < hi; ++j) {
        const Rational value = params.f(chain.load(j));
        if (count[j] == 1) {
          if (!any_one || value > f1) f1 = value;
          any_one = true;
        } else if (count[j] % 2 == 0) {
          if (!any_even || value > f2) f2 = value;
          any_even = true;
        }
      }
      f1 = any_one ? min_of(half, f1) : Rational(0);
      f2 = any_even ? min_of(half, f2) : Rational(0);
      parity.gamma.push_back(f2 < f1 ? f2 : Rational(1 - f1));
    }
    out.push_back(std::move(parity));
  }
  return out;
}

Edge designated_edge(const TreeParity& parity, const CutChain& chain, int level) {
  for (const Edge& e : parity.path) {
    if (chain.level_crossed(e, level)) return e;
  }
  throw InternalError("s-t path misses a narrow cut");
}

bool CutAudit::lemmas_ok() const {
  if (!critical) return true;
  if (!window_ok || !claim_ok || !bound_ok || case_label == "none") return false;
  return std::all_of(trees.begin(), trees.end(),
                     [](const TreeBenefit& t) { return t.case_ok && t.many_ok && t.half_ok && t.nu_ok; });
}

bool BenefitAudit::all_ok() const {
  return std::all_of(cuts.begin(), cuts.end(), [](const CutAudit& c) { return c.ok(); });
}

namespace {

/// Coefficient combination of the per-tree inequality for case 1..4.
int case_combination(int which, const TypeCode& t, int a) {
  switch (which) {
    case 1: return t.l + t.r - t.m + a;
    case 2: return t.l + t.r + t.m + a - 3;
    case 3: return 2 * t.l + t.r + a - 2;
    default: return t.l + 2 * t.r + a - 2;
  }
}

int case_marker(int which, const TypeCode& t) {
  if (t.good) return -1;
  const std::string code = t.str();
  switch (which) {
    case 1: return code == "120" || code == "021" ? 1 : 0;
    case 2: return code == "011" || code == "110" ? 1 : 0;
    case 3: return code == "011" || code == "021" ? 1 : 0;
    default: return code == "110" || code == "120" ? 1 : 0;
  }
}

}  // namespace

BenefitAudit benefits(const TreeDistribution& d, const CutChain& input_chain, const std::vector<TreeParity>& parities,
                      const GammaParams& params) {
  if (parities.size() != d.size()) throw PreconditionError("one parity record per atom required");
  const CutChain chain = input_chain.with_xi(params.xi);
  const Rational half = make_rational(1, 2);
  const Rational one_minus = 1 - 2 * params.beta;
  const Rational nu = params.nu();
  const Rational nu_gap = nu - half;
  const Rational many_coeff = 4 * nu - 1;
  const std::vector<Atom>& atoms = d.atoms();

  std::vector<std::vector<int>> counts;
  std::vector<TreeCutProfile> profiles;
  for (const Atom& atom : atoms) {
    counts.push_back(chain.crossings(atom.tree));
    profiles.push_back(profile_tree(atom.tree, chain));
  }

  BenefitAudit audit;
  Rational product;
  for (int j = 0; j < chain.level_count(); ++j) {
    CutAudit cut;
    cut.level = j;
    cut.load = chain.load(j);
    cut.xi_index = chain.xi_index_of_level(j);
    const Rational cap = params.beta * (2 - cut.load) / one_minus;
    cut.critical = params.f(cut.load) > half;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const int m = counts[a][j];
      TreeBenefit tb;
      tb.atom = static_cast<int>(a);
      tb.crossings = m;
      tb.designated = designated_edge(parities[a], chain, j);
      const Rational& gamma = parities[a].gamma_of(tb.designated);
      if (m % 2 == 0) {
        tb.benefit = min_of(cap, gamma);
        cut.p_even += atoms[a].weight;
      } else if (m == 1) {
        tb.benefit = 1 - gamma;
        cut.p_one += atoms[a].weight;
      }
      if (m >= 1) {
        product = atoms[a].weight * ((m - 1) / 2);
        cut.p_many += product;
      }
      product = atoms[a].weight * tb.benefit;
      cut.benefit += product;
      cut.trees.push_back(std::move(tb));
    }
    cut.required = cap * cut.p_even;
    cut.margin = cut.benefit - cut.required;

    if (!cut.critical) {
      cut.case_label = "less-critical";
      audit.cuts.push_back(std::move(cut));
      continue;
    }
    const int q = cut.xi_index;
    const bool internal = q >= 1 && q + 1 < chain.xi_count();
    cut.window_ok = internal && cut.load >= 2 - params.xi / 3;
    cut.claim_rhs = 1 + (5 - make_rational(3, 2) * (cut.load + params.xi) - params.eps) * nu_gap - many_coeff * cut.p_many;
    cut.claim_ok = 2 * cut.benefit >= cut.claim_rhs;
    cut.bound_ok = sgn(constant_bound_slack(cut.load, params)) >= 0;
    cut.case_label = "none";
    if (!internal) {
      audit.cuts.push_back(std::move(cut));
      continue;
    }
    std::map<std::string, Rational> census;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      TreeBenefit& tb = cut.trees[a];
      tb.typed = true;
      tb.type = classify(atoms[a].tree, profiles[a], chain, q);
      census[tb.type.str()] += atoms[a].weight;
    }
    const Rational bound = census["GOOD"] + params.eps;
    const Rational sums[4] = {census["120"] + census["021"], census["011"] + census["110"], census["011"] + census["021"],
                              census["120"] + census["110"]};
    int which = 0;
    for (int c = 0; c < 4; ++c) {
      if (sums[c] <= bound) {
        which = c + 1;
        break;
      }
    }
    if (which != 0) cut.case_label = std::to_string(which);
    const int left = chain.xi_level(q - 1);
    const int right = chain.xi_level(q + 1);
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      TreeBenefit& tb = cut.trees[a];
      const int m = tb.crossings;
      const Rational floor_many = make_rational((m - 1) / 2);
      if (m >= 3) {
        tb.many_ok = 2 * tb.benefit - (m + 1) * nu_gap + many_coeff * floor_many >= 1;
      }
      if (which != 0) {
        tb.a = case_marker(which, tb.type);
        tb.case_ok = 2 * tb.benefit + case_combination(which, tb.type, tb.a) * nu_gap + many_coeff * floor_many >= 1;
      }
      if (m == 1 || m % 2 == 0) {
        tb.half_ok = tb.benefit >= half;
        const bool neighbour = chain.level_crossed(tb.designated, left) || chain.level_crossed(tb.designated, right);
        const auto& singles = profiles[a].singleton_edges;
        const bool alone_somewhere = std::binary_search(singles.begin(), singles.end(), tb.designated);
        if (!neighbour || !alone_somewhere) tb.nu_ok = tb.benefit >= nu;
      }
    }
    audit.cuts.push_back(std::move(cut));
  }
  return audit;
}

CorrectionVectors correction_vectors(const TreeDistribution& d, const CutChain& chain, const EdgeVector& xstar,
                                     const std::vector<TreeParity>& parities, const GammaParams& params,
                                     const Instance& inst) {
  if (params.beta > make_rational(1, 2)) throw PreconditionError("beta must not exceed 1/2");
  if (parities.size() != d.size()) throw PreconditionError("one parity record per atom required");
  const int n = inst.n();
  const Rational one_minus = 1 - 2 * params.beta;
  CorrectionVectors cv;
  for (int j = 0; j < chain.level_count(); ++j) {
    const std::vector<char> side = chain.level_set(j);
    bool found = false;
    Edge best{};
    for (int idx = 0; idx < edge_count(n); ++idx) {
      const Edge e = edge_at(n, idx);
      if (!crosses(e, side)) continue;
      if (!found || inst.cost(e) < inst.cost(best)) {
        best = e;
        found = true;
      }
    }
    cv.cheapest.push_back(best);
  }
  const std::vector<Atom>& atoms = d.atoms();
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const TreeParity& parity = parities[a];
    EdgeVector z;
    for (std::size_t i = 0; i < parity.path.size(); ++i) {
      const Rational direct = one_minus * parity.gamma[i];
      if (sgn(direct) != 0) z.add(parity.path[i], direct);
    }
    const std::vector<int> count = chain.crossings(atoms[a].tree);
    for (int j = 0; j < chain.level_count(); ++j) {
      if (count[j] % 2 != 0) continue;
      const Rational top =
          params.beta * (2 - chain.load(j)) - one_minus * parity.gamma_of(designated_edge(parity, chain, j));
      if (sgn(top) > 0) z.add(cv.cheapest[j], top);
    }
    EdgeVector y;
    for (const auto& [e, value] : xstar.entries()) y.add(e, params.beta * value);
    for (const Edge& e : parity.join) y.add(e, one_minus);
    for (const auto& [e, value] : z.entries()) y.add(e, value);
    cv.z.push_back(std::move(z));
    cv.y.push_back(std::move(y));
  }
  return cv;
}

std::vector<std::string> requirement_violations(const TreeDistribution& d, const CutChain& chain,
                                                const CorrectionVectors& cv, const GammaParams& params) {
  std::vector<std::string> out;
  const std::vector<Atom>& atoms = d.atoms();
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const std::vector<int> count = chain.crossings(atoms[a].tree);
    for (int j = 0; j < chain.level_count(); ++j) {
      if (count[j] % 2 != 0) continue;
      Rational load = 0;
      for (const auto& [e, value] : cv.z[a].entries()) {
        if (chain.level_crossed(e, j)) load += value;
      }
      if (load < params.beta * (2 - chain.load(j))) {
        out.push_back("atom " + std::to_string(a) + " cut " + std::to_string(j) + ": correction load " + to_string(load));
      }
    }
  }
  return out;
}

JoinCutCheck check_join_cuts(const EdgeVector& y, const std::vector<int>& odd_set, int n) {
  JoinCutCheck result;
  if (n > kEnumerationLimit) return result;
  result.checked = true;
  const std::vector<Rational> dense = y.dense(n);
  CutEnumerator cuts(n, dense);
  std::uint64_t odd_mask = 0;
  for (int v : odd_set) odd_mask |= std::uint64_t{1} << v;
  const std::int64_t one = cuts.strict_bound(1);
  bool seen = false;
  std::int64_t lowest = 0;
  long long odd = 0;
  long long bad = 0;
  cuts.for_each(0, [&](std::uint64_t mask, std::int64_t load) {
    if ((std::popcount(mask & odd_mask) & 1) == 0) return;
    ++odd;
    if (load < one) ++bad;
    if (!seen || load < lowest) {
      lowest = load;
      seen = true;
    }
  });
  result.odd_cuts = odd;
  result.violations = bad;
  result.min_load = seen ? cuts.unscale(lowest) : Rational(0);
  return result;
}

Certificate certify_bound(const TreeDistribution& d, const BenefitAudit& audit, const CorrectionVectors& cv,
                          const std::vector<TreeParity>& parities, const CutChain& chain, const GammaParams& params,
                          const Instance& inst) {
  Certificate cert;
  cert.benefits_ok = audit.all_ok();
  const Rational one_minus = 1 - 2 * params.beta;
  const std::vector<Atom>& atoms = d.atoms();
  Rational path_cost_total = 0;
  Rational direct = 0;
  Rational product;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    product = atoms[a].weight * inst.cost_of(cv.z[a]);
    cert.z_cost += product;
    const TreeParity& parity = parities[a];
    product = atoms[a].weight * inst.cost_of(parity.path);
    path_cost_total += product;
    for (std::size_t i = 0; i < parity.path.size(); ++i) {
      product = atoms[a].weight * parity.gamma[i] * inst.cost(parity.path[i]);
      direct += product;
    }
  }
  cert.path_budget = one_minus * path_cost_total;
  cert.certified = cert.benefits_ok && cert.z_cost <= cert.path_budget;

  Rational via_cheapest = 0;
  Rational via_designated = 0;
  for (int j = 0; j < chain.level_count(); ++j) {
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (atoms[a].tree.crossing_count(chain.level_set(j)) != 1) continue;
      const Edge e = designated_edge(parities[a], chain, j);
      const Rational share = atoms[a].weight * (1 - parities[a].gamma_of(e));
      product = share * inst.cost(cv.cheapest[j]);
      via_cheapest += product;
      product = share * inst.cost(e);
      via_designated += product;
    }
  }
  cert.chain[0] = cert.z_cost / one_minus;
  cert.chain[1] = direct + via_cheapest;
  cert.chain[2] = direct + via_designated;
  cert.chain[3] = path_cost_total;
  cert.chain_ok = cert.chain[0] <= cert.chain[1] && cert.chain[1] <= cert.chain[2] && cert.chain[2] <= cert.chain[3];
  return cert;
}

Rational constant_bound_slack(const Rational& x, const GammaParams& params) {
  const Rational nu_gap = params.nu() - make_rational(1, 2);
  Rational value = 1 + (5 - make_rational(3, 2) * (x + params.xi) - params.eps) * nu_gap -
                   2 * params.beta / (1 - 2 * params.beta) * (x - 1) * (2 - x);
  return value;
}

ConstantChecks theorem_constants(const GammaParams& params) {
  ConstantChecks c;
  c.nu = params.nu();
  c.nu_above_three_fifths = c.nu > make_rational(3, 5);
  c.beta_floor = 3 / (6 + 4 * params.xi * (2 - params.xi));
  c.beta_ok = params.beta >= c.beta_floor;
  const Rational low = make_rational(144, 100);
  const Rational high = make_rational(156, 100);
  const Rational half = make_rational(1, 2);
  c.window_ok = params.f(low) <= half && params.f(high) <= half && 2 - params.xi / 3 <= low;
  const Rational step = make_rational(1, 1000);
  bool first = true;
  for (Rational x = low; x <= high; x += step) {
    const Rational slack = constant_bound_slack(x, params);
    if (first || slack < c.grid_min_slack) c.grid_min_slack = slack;
    first = false;
    ++c.grid_points;
  }
  const Rational b = make_rational(3, 2) * (c.nu - half);
  const Rational k = 2 * params.beta / (1 - 2 * params.beta);
  c.extremum = (3 + b / k) / 2;
  c.extremum_slack = constant_bound_slack(c.extremum, params);
  c.bound_ok = sgn(c.grid_min_slack) >= 0 && sgn(c.extremum_slack) >= 0;
  return c;
}

}  // namespace pathtsp
