#include "maxalg/limit_lab.hpp"

#include <algorithm>
#include <cmath>

#include "maxalg/families.hpp"
#include "maxalg/transforms.hpp"

namespace maxalg::limit_lab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kTrendSlack = 1e-12;

double alpha_or_throw(const DistFn& f, const char* what) {
  double a = f.alpha();
  if (!std::isfinite(a) || !(a > 0.0))
    throw DomainError(std::string(what) +
                      ": needs a target with finite alpha(F) > 0");
  return a;
}

// Free-root branch (1/n) F + (1 - 1/n), zeroed below `cut`.
DistFn root_branch(const DistFn& target, long n, double cut) {
  return truncate_below(
      free_power_total(target, 1.0 / static_cast<double>(n)), cut);
}

}  // namespace

const char* seq_kind_name(SeqKind k) {
  switch (k) {
    case SeqKind::BoolRoot: return "bool-root";
    case SeqKind::FreeRoot: return "free-root";
    case SeqKind::ClassicalRoot: return "classical-root";
    case SeqKind::TruncatedFreeRoot: return "truncated-free-root";
    case SeqKind::CpPrelimit: return "cp-prelimit";
    case SeqKind::RemarkTruncatedPareto: return "remark-truncated-pareto";
    case SeqKind::RemarkF1: return "remark-f1";
    case SeqKind::RemarkF2: return "remark-f2";
  }
  return "?";
}

SequenceSpec bool_root_seq(const DistFn& target) {
  return SequenceSpec{SeqKind::BoolRoot, target, 0.0, 0.0};
}
SequenceSpec free_root_seq(const DistFn& target) {
  return SequenceSpec{SeqKind::FreeRoot, target, 0.0, 0.0};
}
SequenceSpec classical_root_seq(const DistFn& target) {
  return SequenceSpec{SeqKind::ClassicalRoot, target, 0.0, 0.0};
}
SequenceSpec truncated_free_root_seq(const DistFn& target) {
  return SequenceSpec{SeqKind::TruncatedFreeRoot, target, 0.0, 0.0};
}
SequenceSpec cp_prelimit_seq(double lambda, const DistFn& g) {
  return SequenceSpec{SeqKind::CpPrelimit, g, lambda, 0.0};
}
SequenceSpec remark_truncated_pareto_seq(double alpha) {
  if (!(alpha > 0.0))
    throw ParameterError("remark sequence: alpha must be > 0");
  return SequenceSpec{SeqKind::RemarkTruncatedPareto, DistFn(), 0.0, alpha};
}
SequenceSpec remark_f1_seq(const DistFn& target) {
  alpha_or_throw(target, "remark-f1");
  return SequenceSpec{SeqKind::RemarkF1, target, 0.0, 0.0};
}
SequenceSpec remark_f2_seq(const DistFn& target) {
  alpha_or_throw(target, "remark-f2");
  return SequenceSpec{SeqKind::RemarkF2, target, 0.0, 0.0};
}

DistFn build_sequence(const SequenceSpec& spec, long n) {
  if (n < 1) throw DomainError("build_sequence: index must be >= 1");
  switch (spec.kind) {
    case SeqKind::BoolRoot:
      return bool_nth_root(spec.target, n);
    case SeqKind::FreeRoot:
      return free_nth_root(spec.target, n);
    case SeqKind::ClassicalRoot:
      return power(Conv::Classical, spec.target, 1.0 / static_cast<double>(n));
    case SeqKind::TruncatedFreeRoot:
      return root_branch(spec.target, n, -static_cast<double>(n));
    case SeqKind::CpPrelimit:
      return families::cp_prelimit(spec.lambda, spec.target, n);
    case SeqKind::RemarkTruncatedPareto: {
      double scale = std::pow(static_cast<double>(n), 1.0 / spec.alpha);
      return truncate_below(
          affine_rescale(families::pareto(spec.alpha), scale, 0.0), 1.0);
    }
    case SeqKind::RemarkF1: {
      // Branch formula glued to the ramp (1 - 1/n) x / alpha(F) on
      // [0, alpha(F)): the product of the 0-truncated root branch with the
      // uniform law on [0, alpha(F)] realizes both branches at once, since
      // F = 0 below alpha(F).
      double a = alpha_or_throw(spec.target, "remark-f1");
      DistFn ramp = affine_rescale(families::beta_law(1.0), 1.0 / a, -1.0);
      return combine(Conv::Classical, root_branch(spec.target, n, 0.0), ramp);
    }
    case SeqKind::RemarkF2:
      alpha_or_throw(spec.target, "remark-f2");
      return root_branch(spec.target, n, 0.0);
  }
  throw DomainError("build_sequence: unknown kind");
}

KnSchedule KnSchedule::identity(std::vector<long> ns) {
  return with_kn(ns, ns);
}

KnSchedule KnSchedule::with_kn(std::vector<long> ns, std::vector<long> ks) {
  if (ns.empty() || ns.size() != ks.size())
    throw DomainError("schedule: need matching nonempty index/k lists");
  for (size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1 || ks[i] < 1)
      throw DomainError("schedule: indices and k_n must be positive");
    if (i > 0 && (ns[i] <= ns[i - 1] || ks[i] <= ks[i - 1]))
      throw DomainError("schedule: indices and k_n must be strictly increasing");
  }
  KnSchedule s;
  s.indices = std::move(ns);
  s.kn = std::move(ks);
  return s;
}

KnSchedule default_schedule() {
  return KnSchedule::identity({10, 31, 100, 316, 1000, 3162});
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Diverged: return "diverged";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

double fit_decay(const std::vector<long>& ns, const std::vector<double>& ds) {
  size_t m = ds.size();
  size_t start = m / 2;
  if (m - start < 3) {
    if (m < 3) return kNan;
    start = m - 3;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t cnt = 0;
  for (size_t i = start; i < m; ++i) {
    double x = std::log(static_cast<double>(ns[i]));
    double y = std::log(std::max(ds[i], 1e-300));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  double den = cnt * sxx - sx * sx;
  if (den == 0.0) return kNan;
  return (cnt * sxy - sx * sy) / den;
}

Verdict judge(const std::vector<double>& ds, double threshold) {
  size_t m = ds.size();
  size_t look = std::min<size_t>(3, m);
  bool nonincreasing = true, nondecreasing = true;
  for (size_t i = m - look; i + 1 < m; ++i) {
    if (ds[i + 1] > ds[i] + kTrendSlack) nonincreasing = false;
    if (ds[i + 1] + kTrendSlack < ds[i]) nondecreasing = false;
  }
  if (ds.back() < threshold && nonincreasing) return Verdict::Converged;
  if (ds.back() >= threshold && nondecreasing) return Verdict::Diverged;
  return Verdict::Inconclusive;
}

ConvergenceReport run_powers(const SequenceSpec& spec,
                             const KnSchedule& schedule, Conv conv,
                             const DistFn& candidate, const EvalGrid& grid,
                             double threshold) {
  ConvergenceReport r;
  r.sequence = std::string(seq_kind_name(spec.kind)) +
               (spec.target.valid() ? "(" + spec.target.describe() + ")" : "");
  r.conv = conv_name(conv);
  r.candidate = candidate.describe();
  r.indices = schedule.indices;
  r.kn = schedule.kn;
  r.threshold = threshold;
  for (size_t i = 0; i < schedule.indices.size(); ++i) {
    DistFn fn = build_sequence(spec, schedule.indices[i]);
    DistFn p = power(conv, fn, static_cast<double>(schedule.kn[i]));
    r.sup_distances.push_back(sup_distance(p, candidate, grid));
    r.levy_distances.push_back(levy_distance(p, candidate, kLevyResolution));
  }
  r.decay_exponent = fit_decay(r.indices, r.sup_distances);
  r.verdict = judge(r.sup_distances, threshold);
  double dmax = *std::max_element(r.sup_distances.begin(), r.sup_distances.end());
  if (dmax <= 1e-12) r.flags.push_back("exact-identity");
  return r;
}

}  // namespace

ConvergenceReport run_limit(const SequenceSpec& spec, const KnSchedule& schedule,
                            Conv conv, const DistFn& candidate,
                            const EvalGrid& grid, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("run_limit: threshold must be > 0");
  return run_powers(spec, schedule, conv, candidate, grid, threshold);
}

TheoremCheck theorem_limit_check(const SequenceSpec& spec,
                                 const KnSchedule& schedule, const DistFn& f,
                                 const EvalGrid& grid, double threshold) {
  TheoremCheck c;
  c.premise = run_limit(spec, schedule, Conv::Bool, f, grid, threshold);
  c.conclusion =
      run_limit(spec, schedule, Conv::Free, transforms::bn(f, 1.0), grid, threshold);
  c.contract_holds = c.premise.verdict != Verdict::Converged ||
                     c.conclusion.verdict == Verdict::Converged;
  return c;
}

TheoremCheck theorem_converse_check(const SequenceSpec& spec,
                                    const KnSchedule& schedule, const DistFn& f,
                                    const EvalGrid& grid, double threshold) {
  if (f.eval(0.0) <= 1e-12)
    throw HypothesisError(
        "theorem_converse_check: F must be strictly positive on [0,inf), "
        "but F(0) <= 1e-12");
  TheoremCheck c;
  c.premise = run_limit(spec, schedule, Conv::Free, f, grid, threshold);
  DistFn g = truncate_below(b1_inverse_map(f), 0.0);
  c.conclusion = run_limit(spec, schedule, Conv::Bool, g, grid, threshold);
  c.contract_holds = c.premise.verdict != Verdict::Converged ||
                     c.conclusion.verdict == Verdict::Converged;
  return c;
}

TheoremCheck theorem_boolean_classical_check(const SequenceSpec& spec,
                                             const KnSchedule& schedule,
                                             const EvalGrid& grid,
                                             double threshold) {
  DistFn classical_limit, boolean_limit;
  switch (spec.kind) {
    case SeqKind::ClassicalRoot:
      classical_limit = spec.target;
      boolean_limit = transforms::classical_to_boolean(spec.target);
      break;
    case SeqKind::BoolRoot:
      boolean_limit = spec.target;
      classical_limit = transforms::boolean_to_classical(spec.target);
      break;
    case SeqKind::CpPrelimit:
      classical_limit =
          families::compound_poisson_classical(spec.lambda, spec.target);
      boolean_limit = transforms::classical_to_boolean(classical_limit);
      break;
    case SeqKind::RemarkTruncatedPareto:
      classical_limit = truncate_below(families::frechet(spec.alpha), 1.0);
      boolean_limit = truncate_below(families::dagum(1.0, spec.alpha), 1.0);
      break;
    default:
      throw DomainError(
          "theorem_boolean_classical_check: no closed-form limits for this "
          "sequence kind");
  }
  TheoremCheck c;
  c.premise =
      run_limit(spec, schedule, Conv::Classical, classical_limit, grid, threshold);
  c.conclusion =
      run_limit(spec, schedule, Conv::Bool, boolean_limit, grid, threshold);
  c.contract_holds = c.premise.verdict == c.conclusion.verdict;

  long n_last = schedule.indices.back();
  long k_last = schedule.kn.back();
  DistFn fn = build_sequence(spec, n_last);
  DistFn p_cls = power(Conv::Classical, fn, static_cast<double>(k_last));
  DistFn p_bool = power(Conv::Bool, fn, static_cast<double>(k_last));
  c.pairing_distance =
      sup_distance(transforms::boolean_to_classical(p_bool), p_cls, grid);
  c.notes.push_back("chi pairing of final powers: sup distance " +
                    std::to_string(c.pairing_distance));
  return c;
}

CounterexampleReport counterexample_remark(double alpha,
                                           const KnSchedule& schedule,
                                           const EvalGrid& grid) {
  SequenceSpec spec = remark_truncated_pareto_seq(alpha);
  CounterexampleReport rep;
  rep.free_run = run_limit(spec, schedule, Conv::Free, families::pareto(alpha),
                           grid, kExactThreshold);
  DistFn dag = families::dagum(1.0, alpha);
  DistFn truncated = truncate_below(dag, 1.0);
  rep.boolean_run =
      run_limit(spec, schedule, Conv::Bool, truncated, grid, kDefaultThreshold);
  rep.disagreement_at_half = std::abs(truncated.eval(0.5) - dag.eval(0.5));
  rep.flags.push_back(
      "limits disagree with untruncated dagum(1, " + std::to_string(alpha) +
      "): |limit - dagum| = " + std::to_string(rep.disagreement_at_half) +
      " at x = 0.5");
  rep.flags.push_back("free powers reproduce pareto(" + std::to_string(alpha) +
                      ") exactly at every index");
  return rep;
}

ConvergenceReport conjecture_probe(const SequenceSpec& spec,
                                   const KnSchedule& schedule,
                                   const EvalGrid& grid) {
  DistFn f;  // the free-power limit of the sequence
  switch (spec.kind) {
    case SeqKind::FreeRoot:
    case SeqKind::TruncatedFreeRoot:
    case SeqKind::RemarkF1:
    case SeqKind::RemarkF2:
      f = spec.target;
      break;
    case SeqKind::RemarkTruncatedPareto:
      f = families::pareto(spec.alpha);
      break;
    case SeqKind::CpPrelimit:
      f = families::compound_poisson_free(spec.lambda, spec.target);
      break;
    default:
      throw DomainError("conjecture_probe: free-power limit unknown for this "
                        "sequence kind");
  }
  DistFn candidate = b1_inverse_map(f);

  // Restrict the grid to {F > 0}.
  EvalGrid positive;
  positive.exclusion_radius = grid.exclusion_radius;
  std::vector<double> zero_region;
  for (double x : grid.points) {
    if (f.eval(x) > 1e-12)
      positive.points.push_back(x);
    else if (x >= 0.0)
      zero_region.push_back(x);
  }
  if (positive.points.empty())
    throw EmptyGridError("conjecture_probe: no grid points with F > 0");

  ConvergenceReport r;
  r.sequence = std::string(seq_kind_name(spec.kind)) +
               (spec.target.valid() ? "(" + spec.target.describe() + ")" : "");
  r.conv = conv_name(Conv::Bool);
  r.candidate = "1/(2 - F) on {F > 0}, F = " + f.describe();
  r.indices = schedule.indices;
  r.kn = schedule.kn;
  r.threshold = kDefaultThreshold;
  // Levy distances are left empty: the candidate is only meaningful on
  // {F > 0}, and the Levy metric would mix in the unresolved region.
  DistFn last_power;
  for (size_t i = 0; i < schedule.indices.size(); ++i) {
    DistFn fn = build_sequence(spec, schedule.indices[i]);
    DistFn p = power(Conv::Bool, fn, static_cast<double>(schedule.kn[i]));
    r.sup_distances.push_back(sup_distance(p, candidate, positive));
    last_power = p;
  }
  r.decay_exponent = fit_decay(r.indices, r.sup_distances);
  r.verdict = judge(r.sup_distances, r.threshold);
  if (!zero_region.empty()) {
    double lo = 1.0, hi = 0.0;
    for (double x : zero_region) {
      double v = last_power.eval(x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    r.flags.push_back("on {F = 0} (x in [" + std::to_string(zero_region.front()) +
                      ", " + std::to_string(zero_region.back()) +
                      "]) the final Boolean power ranges over [" +
                      std::to_string(lo) + ", " + std::to_string(hi) +
                      "]; no verdict asserted there");
  }
  return r;
}

}  // namespace maxalg::limit_lab
