#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "pathtsp/appendix.hpp"
#include "pathtsp/bomc.hpp"
#include "pathtsp/errors.hpp"
#include "pathtsp/instance.hpp"
#include "pathtsp/lp_relax.hpp"
#include "pathtsp/pipeline.hpp"
#include "pathtsp/reassembler.hpp"
#include "pathtsp/tree_decomp.hpp"

using namespace pathtsp;

namespace {

struct ParamFlags {
  std::string beta;
  std::string xi;
  std::string eps;
  bool legacy = false;

  void attach(CLI::App* app) {
    app->add_option("--beta", beta, "beta as a/b (default 401/1000)");
    app->add_option("--xi", xi, "xi as a/b (default 173/100)");
    app->add_option("--eps", eps, "epsilon as a/b (default 1/100)");
    app->add_flag("--legacy-gamma-half", legacy, "use gamma = 1/2 on every path edge");
  }

  GammaParams params() const {
    GammaParams p;
    if (!beta.empty()) p.beta = parse_rational(beta);
    if (!xi.empty()) p.xi = parse_rational(xi);
    if (!eps.empty()) p.eps = parse_rational(eps);
    p.legacy_half = legacy;
    return p;
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

Instance load_instance(const std::string& path, bool closure) { return parse_instance(read_text_file(path), closure); }

std::string tour_report(const BestOfMany& b) {
  std::string out;
  for (std::size_t a = 0; a < b.per_atom.size(); ++a) {
    const TreeTour& tt = b.per_atom[a];
    out += "atom=" + std::to_string(a) + " tree_cost=" + to_string(tt.tree_cost) + " join_cost=" + to_string(tt.join_cost) +
           " total=" + to_string(tt.st_tour.cost) + "\n";
  }
  return out;
}

std::string order_line(const Tour& tour) {
  std::string out = "tour";
  for (int v : tour.order) out += " " + std::to_string(v);
  return out + "\n";
}

int finish(const PipelineResult& r, const std::string& out_path, bool timings) {
  std::string text = r.report();
  if (timings) text += r.timing_report();
  emit(out_path, text);
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact best-of-many s-t path TSP lab"};
  app.require_subcommand(1);
  bool closure = false;
  app.add_flag("--closure", closure, "complete sparse instance files to their metric closure");

  std::string inst_path, sol_path, dist_path, out_path, trace_path;
  int max_rounds = 500;
  ParamFlags flags;

  auto* solve = app.add_subcommand("solve-lp", "solve the LP relaxation");
  solve->add_option("instance", inst_path)->required();
  solve->add_option("-o,--output", out_path);
  solve->add_option("--max-rounds", max_rounds);

  auto* dec = app.add_subcommand("decompose", "write x* as a convex combination of spanning trees");
  dec->add_option("instance", inst_path)->required();
  dec->add_option("solution", sol_path)->required();
  dec->add_option("-o,--output", out_path);

  auto* rea = app.add_subcommand("reassemble", "decompose and reassemble");
  rea->add_option("instance", inst_path)->required();
  rea->add_option("solution", sol_path)->required();
  rea->add_option("-o,--output", out_path);
  rea->add_option("--xi", flags.xi);
  rea->add_option("--eps", flags.eps);
  rea->add_option("--trace", trace_path, "one line per exchange");

  ParamFlags audit_flags;
  bool audit_timings = false;
  auto* aud = app.add_subcommand("audit", "audit a distribution (same as verify, instance first)");
  aud->add_option("instance", inst_path)->required();
  aud->add_option("solution", sol_path)->required();
  aud->add_option("distribution", dist_path)->required();
  aud->add_option("-o,--output", out_path);
  audit_flags.attach(aud);
  aud->add_flag("--timings", audit_timings);

  auto* tour = app.add_subcommand("tour", "best-of-many tours of a distribution");
  tour->add_option("instance", inst_path)->required();
  tour->add_option("distribution", dist_path)->required();
  tour->add_option("-o,--output", out_path);

  ParamFlags verify_flags;
  auto* ver = app.add_subcommand("verify", "check every invariant on an external distribution");
  ver->add_option("distribution", dist_path)->required();
  ver->add_option("instance", inst_path)->required();
  ver->add_option("solution", sol_path)->required();
  ver->add_option("-o,--output", out_path);
  verify_flags.attach(ver);

  ParamFlags run_flags;
  bool skip = false;
  bool use_decompose = false;
  bool timings = false;
  int k = 0;
  int n = 10;
  std::uint64_t seed = 1;
  auto* run = app.add_subcommand("run", "full pipeline: appendix, random, or an instance file");
  run->add_option("source", inst_path, "appendix | random | <instance file>")->required();
  run->add_option("--k", k, "extra wall gadgets for the appendix fixture");
  run->add_option("--n", n, "vertices for random instances");
  run->add_option("--seed", seed);
  run->add_option("-o,--output", out_path);
  run->add_flag("--skip-reassembly", skip);
  run->add_flag("--decompose", use_decompose, "start the fixture from decompose(x*) instead of its four trees");
  run->add_flag("--timings", timings, "append the timing section");
  run_flags.attach(run);

  std::string gen_kind;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("kind", gen_kind, "random | appendix")->required()->check(CLI::IsMember({"random", "appendix"}));
  gen->add_option("--n", n);
  gen->add_option("--seed", seed);
  gen->add_option("--k", k);
  gen->add_option("-o,--output", out_path);
  std::string gen_sol, gen_dist;
  gen->add_option("--solution", gen_sol, "appendix only: also write x*");
  gen->add_option("--distribution", gen_dist, "appendix only: also write the four trees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) {
      const Instance inst = load_instance(inst_path, closure);
      LpOptions options;
      options.max_rounds = max_rounds;
      emit(out_path, emit_solution(solve_lp(inst, options)));
      return 0;
    }
    if (*dec) {
      const Instance inst = load_instance(inst_path, closure);
      const LpSolution sol = parse_solution(read_text_file(sol_path), inst);
      emit(out_path, emit_distribution(decompose(sol.x, inst.n())));
      return 0;
    }
    if (*rea) {
      const Instance inst = load_instance(inst_path, closure);
      const LpSolution sol = parse_solution(read_text_file(sol_path), inst);
      const GammaParams p = flags.params();
      const Reassembly r = reassemble(sol.x, inst, p.xi, p.eps);
      emit(out_path, emit_distribution(r.final));
      if (!trace_path.empty()) {
        std::string trace;
        for (const auto* log : {&r.left_log, &r.right_log}) {
          for (const ExchangeRecord& rec : *log) trace += format_exchange(rec) + "\n";
        }
        write_text_file(trace_path, trace);
      }
      return 0;
    }
    if (*aud || *ver) {
      const Instance inst = load_instance(inst_path, closure);
      const LpSolution sol = parse_solution(read_text_file(sol_path), inst);
      const TreeDistribution d = parse_distribution(read_text_file(dist_path), inst.n());
      PipelineOptions options;
      options.params = (*aud ? audit_flags : verify_flags).params();
      return finish(verify(d, inst, sol.x, options), out_path, *aud && audit_timings);
    }
    if (*tour) {
      const Instance inst = load_instance(inst_path, closure);
      const TreeDistribution d = parse_distribution(read_text_file(dist_path), inst.n());
      const BestOfMany b = best_of_many(d, inst);
      std::string text = tour_report(b);
      text += "bomc=" + to_string(b.value);
      if (inst.n() <= kHeldKarpLimit) {
        const Tour opt = held_karp_opt(inst);
        const Rational ratio = b.tour.cost / opt.cost;
        text += " opt=" + to_string(opt.cost) + " ratio≈" + to_decimal(ratio, 6);
      } else {
        text += " opt=n/a";
      }
      text += "\n" + order_line(b.tour);
      emit(out_path, text);
      return 0;
    }
    if (*gen) {
      if (gen_kind == "random") {
        emit(out_path, emit_instance(random_metric_instance(n, seed)));
      } else {
        const AppendixFixture fx = build_appendix_instance(k);
        emit(out_path, emit_instance(fx.instance));
        if (!gen_sol.empty()) {
          LpSolution sol;
          sol.x = fx.xstar;
          sol.value = fx.instance.cost_of(fx.xstar);
          write_text_file(gen_sol, emit_solution(sol));
        }
        if (!gen_dist.empty()) write_text_file(gen_dist, emit_distribution(fx.trees));
      }
      return 0;
    }
    if (*run) {
      PipelineOptions options;
      options.params = run_flags.params();
      options.skip_reassembly = skip;
      auto make_input = [&]() -> PipelineInput {
        if (inst_path == "appendix") {
          AppendixFixture fx = build_appendix_instance(k);
          PipelineInput in{.label = "appendix k=" + std::to_string(k), .instance = fx.instance, .xstar = fx.xstar};
          if (!use_decompose) in.start = fx.trees;
          return in;
        }
        if (inst_path == "random") {
          return PipelineInput{.label = "random n=" + std::to_string(n) + " seed=" + std::to_string(seed),
                               .instance = random_metric_instance(n, seed)};
        }
        return PipelineInput{.label = inst_path, .instance = load_instance(inst_path, closure)};
      };
      PipelineInput input = make_input();
      return finish(run_pipeline(std::move(input), options), out_path, timings);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
