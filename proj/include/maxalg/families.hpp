#pragma once

// Closed-form parametric leaves: the classical extreme value trio, the free
// trio, the Dagum family (Boolean max-stable), and the classical/free max
// compound Poisson laws with their pre-limit sequences.
//
// Closed forms:
//   gumbel            exp(-exp(-x))
//   frechet(a)        exp(-x^-a) on x > 0, else 0
//   weibull(a)        1 on x > 0, exp(-(-x)^a) on x <= 0
//   freeexp           (1 - e^-x)_+
//   pareto(a)         (1 - x^-a)_+ on x > 0, else 0
//   betalaw(a)        1 on x > 0, (1 - |x|^a)_+ on x <= 0
//   dagum(l, a)       (1 + l x^-a)^-1 on x > 0, else 0
//   cpc(l, G)         exp(-l (1 - G(x))) on x >= 0, else 0
//   cpf(l, G)         (1 - l (1 - G(x)))_+ on x >= 0, else 0

#include "maxalg/distfn.hpp"

namespace maxalg::families {

struct FamilySpec {
  FamilyKind kind;
  double p1 = 0.0;             // alpha, or lambda where two parameters exist
  double p2 = 0.0;             // alpha for Dagum
  std::optional<DistFn> base;  // G for the compound Poisson laws
};

DistFn make(const FamilySpec& spec);

DistFn gumbel();
DistFn frechet(double alpha);
DistFn weibull(double alpha);
DistFn free_exponential();
DistFn pareto(double alpha);
DistFn beta_law(double alpha);
DistFn dagum(double lambda, double alpha);
DistFn compound_poisson_classical(double lambda, const DistFn& g);
DistFn compound_poisson_free(double lambda, const DistFn& g);

// Pre-limit member F_N of the max compound Poisson construction:
//   F_N(x) = (1 - l/N) + (l/N) G(x) on x >= 0,  (l/N) G(x) on x < 0,
// i.e. the mixture (1 - l/N) dirac(0) + (l/N) G. Requires N >= l. The base
// G should be continuous at 0; a violation only warps the jump bookkeeping,
// so it warns on stderr instead of failing.
DistFn cp_prelimit(double lambda, const DistFn& g, long n);

}  // namespace maxalg::families
