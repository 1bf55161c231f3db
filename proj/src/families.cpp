#include "maxalg/families.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace maxalg::families {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0))
    throw ParameterError(std::string(what) + " must be > 0, got " +
                         std::to_string(v));
}

// nu({0}) = 0 is modeled as continuity of G at 0. The closed forms stay
// evaluable either way, so a violation only warns.
void warn_if_atom_at_zero(const DistFn& g, const char* what) {
  if (g.eval(0.0) - g.eval(-1e-9) > 1e-6)
    std::fprintf(stderr, "maxalg: warning: %s: base distribution has an atom at 0\n",
                 what);
}

std::vector<double> positive_jumps_with_zero(const DistFn& g) {
  std::vector<double> d{0.0};
  for (double x : g.discontinuities())
    if (x > 0.0) d.push_back(x);
  return d;
}

DistFn make_leaf(Node n) {
  return DistFn(std::make_shared<const Node>(std::move(n)));
}

DistFn simple_leaf(FamilyKind kind, double p1, double p2, SupportClass cls,
                   double alpha, double omega) {
  Node n;
  n.kind = NodeKind::Parametric;
  n.parametric = dag::Parametric{kind, p1, p2, std::nullopt};
  n.cls = cls;
  n.alpha = alpha;
  n.omega = omega;
  return make_leaf(std::move(n));
}

}  // namespace

DistFn gumbel() {
  return simple_leaf(FamilyKind::Gumbel, 0, 0, SupportClass::Whole, -kInf, kInf);
}

DistFn frechet(double alpha) {
  require_positive(alpha, "frechet: alpha");
  return simple_leaf(FamilyKind::Frechet, alpha, 0, SupportClass::Positive, 0.0,
                     kInf);
}

DistFn weibull(double alpha) {
  require_positive(alpha, "weibull: alpha");
  return simple_leaf(FamilyKind::Weibull, alpha, 0, SupportClass::Whole, -kInf,
                     0.0);
}

DistFn free_exponential() {
  return simple_leaf(FamilyKind::FreeExponential, 0, 0, SupportClass::Whole, 0.0,
                     kInf);
}

DistFn pareto(double alpha) {
  require_positive(alpha, "pareto: alpha");
  return simple_leaf(FamilyKind::Pareto, alpha, 0, SupportClass::Positive, 1.0,
                     kInf);
}

DistFn beta_law(double alpha) {
  require_positive(alpha, "betalaw: alpha");
  return simple_leaf(FamilyKind::BetaLaw, alpha, 0, SupportClass::Whole, -1.0,
                     0.0);
}

DistFn dagum(double lambda, double alpha) {
  require_positive(lambda, "dagum: lambda");
  require_positive(alpha, "dagum: alpha");
  return simple_leaf(FamilyKind::Dagum, lambda, alpha, SupportClass::Positive,
                     0.0, kInf);
}

DistFn compound_poisson_classical(double lambda, const DistFn& g) {
  if (!(lambda >= 0.0))
    throw ParameterError("cpc: lambda must be >= 0, got " + std::to_string(lambda));
  warn_if_atom_at_zero(g, "cpc");
  Node n;
  n.kind = NodeKind::Parametric;
  n.parametric = dag::Parametric{FamilyKind::CompoundPoissonClassical, lambda,
                                 0.0, g};
  n.cls = SupportClass::NonNegative;
  n.discs = positive_jumps_with_zero(g);
  n.alpha = 0.0;
  n.omega = lambda == 0.0 ? 0.0 : std::max(g.omega(), 0.0);
  return make_leaf(std::move(n));
}

DistFn compound_poisson_free(double lambda, const DistFn& g) {
  if (!(lambda >= 0.0))
    throw ParameterError("cpf: lambda must be >= 0, got " + std::to_string(lambda));
  warn_if_atom_at_zero(g, "cpf");
  Node n;
  n.kind = NodeKind::Parametric;
  n.parametric = dag::Parametric{FamilyKind::CompoundPoissonFree, lambda, 0.0, g};
  n.cls = SupportClass::NonNegative;
  n.discs = positive_jumps_with_zero(g);
  if (lambda >= 1.0) {
    // F vanishes where G <= 1 - 1/lambda.
    double cross =
        crossing_sup_leq([&g](double x) { return g.eval(x); }, 1.0 - 1.0 / lambda);
    n.alpha = std::max(0.0, cross);
  } else {
    n.alpha = 0.0;
  }
  n.omega = lambda == 0.0 ? 0.0 : std::max(g.omega(), 0.0);
  return make_leaf(std::move(n));
}

DistFn make(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Gumbel: return gumbel();
    case FamilyKind::Frechet: return frechet(spec.p1);
    case FamilyKind::Weibull: return weibull(spec.p1);
    case FamilyKind::FreeExponential: return free_exponential();
    case FamilyKind::Pareto: return pareto(spec.p1);
    case FamilyKind::BetaLaw: return beta_law(spec.p1);
    case FamilyKind::Dagum: return dagum(spec.p1, spec.p2);
    case FamilyKind::CompoundPoissonClassical:
      if (!spec.base) throw ParameterError("cpc: missing base distribution");
      return compound_poisson_classical(spec.p1, *spec.base);
    case FamilyKind::CompoundPoissonFree:
      if (!spec.base) throw ParameterError("cpf: missing base distribution");
      return compound_poisson_free(spec.p1, *spec.base);
  }
  throw ParameterError("make: unknown family");
}

DistFn cp_prelimit(double lambda, const DistFn& g, long n) {
  if (!(lambda >= 0.0))
    throw ParameterError("prelimit: lambda must be >= 0");
  if (n < 1) throw ParameterError("prelimit: N must be >= 1");
  if (static_cast<double>(n) < lambda)
    throw ParameterError("prelimit: N = " + std::to_string(n) +
                         " must be >= lambda = " + std::to_string(lambda));
  warn_if_atom_at_zero(g, "prelimit");
  return mixture(lambda / static_cast<double>(n), dirac(0.0), g);
}

}  // namespace maxalg::families
