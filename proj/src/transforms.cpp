#include "maxalg/transforms.hpp"

#include "maxalg/scalar_ops.hpp"

namespace maxalg::transforms {

DistFn bn(const DistFn& f, double t) {
  if (f.support_class() == SupportClass::Whole)
    throw ClassError("bn: operand must be supported on [0,inf)");
  if (!(t >= 0.0)) throw DomainError("bn: time t must be >= 0");
  return power(Conv::Bool, power(Conv::Free, f, 1.0 + t), 1.0 / (1.0 + t));
}

DistFn bn1_fused(const DistFn& f) {
  if (f.support_class() == SupportClass::Whole)
    throw ClassError("bn1_fused: operand must be supported on [0,inf)");
  return b1_fused_map(f);
}

DistFn boolean_to_classical(const DistFn& g) { return map_fn(MapKind::Chi, g); }

DistFn classical_to_boolean(const DistFn& f) {
  return map_fn(MapKind::ChiInv, f);
}

DistFn b1_preimage(const DistFn& h) { return map_fn(MapKind::ChiInv, h); }

double exchange_check(const DistFn& f, double p, double q,
                      const EvalGrid& grid) {
  if (f.support_class() == SupportClass::Whole)
    throw ClassError("exchange_check: operand must be supported on [0,inf)");
  PqPair ex = pq_exchange(p, q);  // validates the (p, q) region
  DistFn lhs = power(Conv::Bool, power(Conv::Free, f, p), q);
  DistFn rhs = power(Conv::Free, power(Conv::Bool, f, ex.q), ex.p);
  return sup_distance(lhs, rhs, grid);
}

}  // namespace maxalg::transforms
