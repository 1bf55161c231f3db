#include "maxalg/scenarios.hpp"

#include "maxalg/families.hpp"
#include "maxalg/transforms.hpp"

namespace maxalg::scenarios {

namespace {

using namespace limit_lab;
using json_io::json;
using json_io::to_json;

struct Ctx {
  KnSchedule schedule;
  double threshold_or(double def) const {
    return threshold ? *threshold : def;
  }
  std::optional<double> threshold;
};

json wrap(const char* name, json body) {
  json j;
  j["scenario"] = name;
  j["report"] = std::move(body);
  return j;
}

json run_single(const char* name, const SequenceSpec& spec, Conv conv,
                const DistFn& candidate, const Ctx& ctx, double def_threshold) {
  EvalGrid grid = default_grid(candidate);
  return wrap(name, to_json(run_limit(spec, ctx.schedule, conv, candidate, grid,
                                      ctx.threshold_or(def_threshold))));
}

json run_bc(const char* name, const SequenceSpec& spec, const DistFn& grid_ref,
            const Ctx& ctx) {
  EvalGrid grid = default_grid(grid_ref);
  return wrap(name, to_json(theorem_boolean_classical_check(
                        spec, ctx.schedule, grid,
                        ctx.threshold_or(kDefaultThreshold))));
}

}  // namespace

std::vector<std::string> names() {
  return {
      "limit-dagum-boolean",
      "limit-dagum-classical",
      "limit-dagum-free",
      "bn-limit-dagum",
      "cp-prelimit-classical",
      "cp-prelimit-free",
      "bp-boolean-classical-dagum",
      "bp-boolean-classical-frechet",
      "bp-boolean-classical-dirac",
      "bp-boolean-classical-cp",
      "bp-boolean-classical-truncpareto",
      "converse-cp",
      "remark-counterexample",
      "conjecture-remark-f1",
      "conjecture-remark-f2",
      "corollary-classical-to-free",
  };
}

json run(const std::string& name, const Overrides& o) {
  Ctx ctx{o.schedule ? *o.schedule : default_schedule(), o.threshold};
  DistFn d1 = families::dagum(1.0, 1.0);
  DistFn phi1 = families::frechet(1.0);

  if (name == "limit-dagum-boolean")
    return run_single("limit-dagum-boolean", bool_root_seq(d1), Conv::Bool, d1,
                      ctx, kExactThreshold);
  if (name == "limit-dagum-classical")
    return run_single("limit-dagum-classical", bool_root_seq(d1),
                      Conv::Classical, phi1, ctx, kDefaultThreshold);
  if (name == "limit-dagum-free")
    return run_single("limit-dagum-free", bool_root_seq(d1), Conv::Free,
                      families::pareto(1.0), ctx, kDefaultThreshold);
  if (name == "bn-limit-dagum") {
    EvalGrid grid = default_grid(d1);
    return wrap("bn-limit-dagum",
                to_json(theorem_limit_check(bool_root_seq(d1), ctx.schedule, d1,
                                            grid,
                                            ctx.threshold_or(kDefaultThreshold))));
  }
  if (name == "cp-prelimit-classical") {
    DistFn cand = families::compound_poisson_classical(1.0, phi1);
    return run_single("cp-prelimit-classical", cp_prelimit_seq(1.0, phi1),
                      Conv::Classical, cand, ctx, kDefaultThreshold);
  }
  if (name == "cp-prelimit-free") {
    DistFn cand = families::compound_poisson_free(1.0, phi1);
    return run_single("cp-prelimit-free", cp_prelimit_seq(1.0, phi1), Conv::Free,
                      cand, ctx, kDefaultThreshold);
  }
  if (name == "bp-boolean-classical-dagum")
    return run_bc("bp-boolean-classical-dagum", bool_root_seq(d1), d1, ctx);
  if (name == "bp-boolean-classical-frechet")
    return run_bc("bp-boolean-classical-frechet", classical_root_seq(phi1), phi1,
                  ctx);
  if (name == "bp-boolean-classical-dirac")
    return run_bc("bp-boolean-classical-dirac", bool_root_seq(dirac(1.0)),
                  dirac(1.0), ctx);
  if (name == "bp-boolean-classical-cp")
    return run_bc("bp-boolean-classical-cp", cp_prelimit_seq(1.0, phi1), phi1,
                  ctx);
  if (name == "bp-boolean-classical-truncpareto")
    return run_bc("bp-boolean-classical-truncpareto",
                  remark_truncated_pareto_seq(1.0), d1, ctx);
  if (name == "converse-cp") {
    DistFn f = families::compound_poisson_free(0.5, phi1);
    EvalGrid grid = default_grid(f);
    return wrap("converse-cp",
                to_json(theorem_converse_check(cp_prelimit_seq(0.5, phi1),
                                               ctx.schedule, f, grid,
                                               ctx.threshold_or(kDefaultThreshold))));
  }
  if (name == "remark-counterexample") {
    EvalGrid grid = default_grid(d1);
    return wrap("remark-counterexample",
                to_json(counterexample_remark(1.0, ctx.schedule, grid)));
  }
  if (name == "conjecture-remark-f1") {
    DistFn p1 = families::pareto(1.0);
    EvalGrid grid = default_grid(p1);
    return wrap("conjecture-remark-f1",
                to_json(conjecture_probe(remark_f1_seq(p1), ctx.schedule, grid)));
  }
  if (name == "conjecture-remark-f2") {
    DistFn p1 = families::pareto(1.0);
    EvalGrid grid = default_grid(p1);
    return wrap("conjecture-remark-f2",
                to_json(conjecture_probe(remark_f2_seq(p1), ctx.schedule, grid)));
  }
  if (name == "corollary-classical-to-free")
    return run_single("corollary-classical-to-free", classical_root_seq(phi1),
                      Conv::Free, families::pareto(1.0), ctx, kDefaultThreshold);

  throw DomainError("unknown scenario '" + name + "'");
}

}  // namespace maxalg::scenarios
