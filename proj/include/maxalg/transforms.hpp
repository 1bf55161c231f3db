#pragma once

// Named distribution-level operators: the time-t composition
// bn(F, t) = bool-power(free-power(F, 1+t), 1/(1+t)) with its semigroup and
// time-one factorization lambda_vee . chi, the Boolean<->classical
// bijections chi / chi_inv, and the free/Boolean power-exchange identity.

#include "maxalg/distfn.hpp"

namespace maxalg::transforms {

// bn(F, t) for t >= 0; requires F in Delta_+. Stored as the composed pair of
// power nodes, not a fused closed form, so the factorization and semigroup
// tests exercise genuine composition.
DistFn bn(const DistFn& f, double t);

// Fused time-one form (2 - 1/F)_+, kept behind an equivalence test against
// the composed route.
DistFn bn1_fused(const DistFn& f);

// chi(G) and chi_inv(F): mutually inverse on Delta_+.
DistFn boolean_to_classical(const DistFn& g);
DistFn classical_to_boolean(const DistFn& f);

// Preimage of G = lambda_vee(H) under bn(.,1): F = chi_inv(H), so that
// bn(F, 1) = G.
DistFn b1_preimage(const DistFn& h);

// sup distance between bool-power(free-power(F,p), q) and
// free-power(bool-power(F,q'), p') with (p', q') = pq_exchange(p, q).
double exchange_check(const DistFn& f, double p, double q, const EvalGrid& grid);

}  // namespace maxalg::transforms
