#pragma once

// Limit-theorem laboratory: named sequence constructors, k_n schedules, and
// convergence experiments. A run evaluates power(conv, F_n, k_n) against a
// candidate limit on a continuity grid across a schedule of indices and
// reports sup/Levy distances, a fitted decay exponent, and a verdict.

#include <string>
#include <vector>

#include "maxalg/distfn.hpp"

namespace maxalg::limit_lab {

enum class SeqKind {
  BoolRoot,             // Boolean n-th root of the target
  FreeRoot,             // free n-th root of the target
  ClassicalRoot,        // classical n-th root of the target
  TruncatedFreeRoot,    // free-root branch formula truncated at -n
  CpPrelimit,           // compound Poisson pre-limit F_N
  RemarkTruncatedPareto,  // Pareto rescaled by n^{1/alpha}, truncated at 1
  RemarkF1,             // free-root branch glued to a linear ramp on [0, alpha)
  RemarkF2,             // free-root branch held constant on [0, alpha)
};

const char* seq_kind_name(SeqKind k);

struct SequenceSpec {
  SeqKind kind;
  DistFn target;        // unused by RemarkTruncatedPareto and CpPrelimit's G slot
  double lambda = 0.0;  // CpPrelimit rate
  double alpha = 1.0;   // RemarkTruncatedPareto tail exponent
};

SequenceSpec bool_root_seq(const DistFn& target);
SequenceSpec free_root_seq(const DistFn& target);
SequenceSpec classical_root_seq(const DistFn& target);
SequenceSpec truncated_free_root_seq(const DistFn& target);
SequenceSpec cp_prelimit_seq(double lambda, const DistFn& g);
SequenceSpec remark_truncated_pareto_seq(double alpha);
SequenceSpec remark_f1_seq(const DistFn& target);
SequenceSpec remark_f2_seq(const DistFn& target);

// The n-th member F_n.
DistFn build_sequence(const SequenceSpec& spec, long n);

// n -> k_n, strictly increasing positive integers over a fixed index list.
struct KnSchedule {
  std::vector<long> indices;  // the n values to run
  std::vector<long> kn;       // matching k_n values

  static KnSchedule identity(std::vector<long> ns);
  static KnSchedule with_kn(std::vector<long> ns, std::vector<long> ks);
};

// n in {10, 31, 100, 316, 1000, 3162}, k_n = n.
KnSchedule default_schedule();

enum class Verdict { Converged, Diverged, Inconclusive };

const char* verdict_name(Verdict v);

struct ConvergenceReport {
  std::string sequence;          // description of the sequence spec
  std::string conv;              // convolution used
  std::string candidate;         // description of the candidate limit
  std::vector<long> indices;
  std::vector<long> kn;
  std::vector<double> sup_distances;
  std::vector<double> levy_distances;
  double decay_exponent = std::numeric_limits<double>::quiet_NaN();
  double threshold = 1e-2;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> flags;
};

// Default threshold when a closed-form identity should make the run exact.
inline constexpr double kExactThreshold = 1e-10;
inline constexpr double kDefaultThreshold = 1e-2;
inline constexpr double kLevyResolution = 1e-3;

ConvergenceReport run_limit(const SequenceSpec& spec, const KnSchedule& schedule,
                            Conv conv, const DistFn& candidate,
                            const EvalGrid& grid, double threshold);

struct TheoremCheck {
  ConvergenceReport premise;
  ConvergenceReport conclusion;
  bool contract_holds = false;   // premise converged => conclusion converged
  double pairing_distance = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> notes;
};

// Boolean powers -> F implies free powers -> bn(F, 1).
TheoremCheck theorem_limit_check(const SequenceSpec& spec,
                                 const KnSchedule& schedule, const DistFn& f,
                                 const EvalGrid& grid, double threshold);

// Free powers -> F with F > 0 on [0, inf) implies Boolean powers -> G where
// G = 1/(2 - F) on x >= 0, 0 below. Throws HypothesisError if F(0) <= 1e-12.
TheoremCheck theorem_converse_check(const SequenceSpec& spec,
                                    const KnSchedule& schedule, const DistFn& f,
                                    const EvalGrid& grid, double threshold);

// Classical and Boolean powers converge together; when they do, the limits
// are chi-images of each other. Candidates are derived from the sequence
// kind (roots converge to their target under their own convolution).
// pairing_distance is sup |chi(final Boolean power) - final classical power|.
TheoremCheck theorem_boolean_classical_check(const SequenceSpec& spec,
                                             const KnSchedule& schedule,
                                             const EvalGrid& grid,
                                             double threshold);

struct CounterexampleReport {
  ConvergenceReport free_run;      // vs pareto(alpha): exact at every index
  ConvergenceReport boolean_run;   // vs dagum truncated at 1
  double disagreement_at_half = 0.0;  // |truncated limit - dagum| at x = 1/2
  std::vector<std::string> flags;
};

// Free powers of the truncated rescaled Pareto sequence reproduce the Pareto
// law exactly, yet the Boolean powers converge to the truncated Dagum law,
// not the Dagum law itself.
CounterexampleReport counterexample_remark(double alpha,
                                           const KnSchedule& schedule,
                                           const EvalGrid& grid);

// Probes the conjecture that Boolean powers converge to 1/(2 - F) on {F > 0}
// whenever the free powers converge to F; reports the observed values on
// {F = 0} without asserting a verdict there.
ConvergenceReport conjecture_probe(const SequenceSpec& spec,
                                   const KnSchedule& schedule,
                                   const EvalGrid& grid);

}  // namespace maxalg::limit_lab
