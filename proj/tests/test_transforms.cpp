#include <cmath>

#include "doctest.h"
#include "maxalg/families.hpp"
#include "maxalg/tails.hpp"
#include "maxalg/transforms.hpp"

using namespace maxalg;
namespace fam = maxalg::families;
namespace tr = maxalg::transforms;

TEST_CASE("bn: pinned values, identity at t = 0, alpha relation") {
  DistFn d1 = fam::dagum(1.0, 1.0);
  DistFn b = tr::bn(d1, 1.0);
  CHECK(std::abs(b.eval(2.0) - 0.5) < 1e-12);  // equals pareto(1) at x = 2

  DistFn same = tr::bn(d1, 0.0);
  EvalGrid grid = default_grid(d1);
  CHECK(sup_distance(same, d1, grid) < 1e-12);

  // alpha(bn(F, t)) = alpha of the free factor
  DistFn f = fam::dagum(2.0, 1.5);
  for (double t : {0.5, 1.0, 3.0}) {
    DistFn free_part = power(Conv::Free, f, 1.0 + t);
    CHECK(tr::bn(f, t).alpha() ==
          doctest::Approx(free_part.alpha()).epsilon(1e-9));
  }

  CHECK_THROWS_AS(tr::bn(fam::gumbel(), 1.0), ClassError);
  CHECK_THROWS_AS(tr::bn(d1, -0.25), DomainError);
}

TEST_CASE("bn maps the Dagum family onto the Pareto family") {
  for (double a : {0.5, 1.0, 2.0}) {
    DistFn image = tr::bn(fam::dagum(1.0, a), 1.0);
    EvalGrid grid = default_grid(fam::pareto(a));
    CHECK(sup_distance(image, fam::pareto(a), grid) < 1e-12);
  }
}

TEST_CASE("bn semigroup and the fused time-one path") {
  DistFn fs[] = {fam::dagum(1.0, 1.0),
                 fam::compound_poisson_free(0.5, fam::frechet(1.0)),
                 truncate_below(fam::dagum(0.5, 2.0), 0.5)};
  for (const DistFn& f : fs) {
    EvalGrid grid = default_grid(f);
    for (double t : {0.5, 1.0, 2.0})
      for (double s : {0.5, 1.0, 2.0})
        CHECK(sup_distance(tr::bn(tr::bn(f, t), s), tr::bn(f, t + s), grid) <
              1e-10);
    CHECK(sup_distance(tr::bn(f, 1.0), tr::bn1_fused(f), grid) < 1e-12);
    DistFn factored = map_fn(MapKind::LambdaVee, map_fn(MapKind::Chi, f));
    CHECK(sup_distance(tr::bn(f, 1.0), factored, grid) < 1e-12);
  }
}

TEST_CASE("bn(., 1) is a homomorphism from Boolean to free") {
  DistFn f = fam::dagum(1.0, 1.0);
  DistFn g = fam::dagum(2.0, 1.5);
  EvalGrid grid = default_grid(f);
  DistFn lhs = tr::bn(combine(Conv::Bool, f, g), 1.0);
  DistFn rhs = combine(Conv::Free, tr::bn(f, 1.0), tr::bn(g, 1.0));
  CHECK(sup_distance(lhs, rhs, grid) < 1e-10);
  for (double t : {1.0, 2.5, 7.0}) {
    DistFn l2 = tr::bn(power(Conv::Bool, f, t), 1.0);
    DistFn r2 = power(Conv::Free, tr::bn(f, 1.0), t);
    CHECK(sup_distance(l2, r2, grid) < 1e-10);
  }
}

TEST_CASE("bn preserves the positive class and free regularity") {
  DistFn f = fam::pareto(1.0);  // positive class, alpha = 1
  for (double t : {0.5, 1.0, 2.0}) {
    DistFn b = tr::bn(f, t);
    CHECK(b.support_class() == SupportClass::Positive);
    CHECK(is_free_regular_max_id(b));
  }
}

TEST_CASE("b1 surjectivity construction: preimage maps back") {
  // G = lambda_vee(H) for H in Delta_+; F = chi_inv(H) satisfies bn(F,1) = G.
  DistFn hs[] = {fam::dagum(1.0, 1.0), fam::frechet(2.0),
                 fam::compound_poisson_classical(1.0, fam::frechet(1.0))};
  for (const DistFn& h : hs) {
    DistFn g = map_fn(MapKind::LambdaVee, h);
    DistFn f = tr::b1_preimage(h);
    EvalGrid grid = default_grid(g);
    CHECK(sup_distance(tr::bn(f, 1.0), g, grid) < 1e-12);
  }
}

TEST_CASE("boolean/classical bijections") {
  for (double a : {1.0, 2.0}) {
    EvalGrid grid = default_grid(fam::frechet(a));
    CHECK(sup_distance(tr::boolean_to_classical(fam::dagum(1.0, a)),
                       fam::frechet(a), grid) < 1e-12);
    EvalGrid grid2 = default_grid(fam::dagum(1.0, a));
    CHECK(sup_distance(tr::classical_to_boolean(fam::frechet(a)),
                       fam::dagum(1.0, a), grid2) < 1e-12);
  }
  // round trip on a composite
  DistFn f = power(Conv::Bool, fam::dagum(1.0, 1.0), 3.0);
  EvalGrid grid = default_grid(f);
  CHECK(sup_distance(tr::boolean_to_classical(tr::classical_to_boolean(f)), f,
                     grid) < 1e-12);
  CHECK(sup_distance(tr::classical_to_boolean(tr::boolean_to_classical(f)), f,
                     grid) < 1e-12);
  CHECK_THROWS_AS(tr::boolean_to_classical(fam::gumbel()), ClassError);
}

TEST_CASE("exchange_check on the spec's triples") {
  DistFn pi = fam::compound_poisson_free(0.5, fam::frechet(1.0));
  struct Case {
    DistFn f;
    double p, q;
  } cases[] = {
      {fam::dagum(1.0, 1.0), 2.0, 0.75},
      {fam::dagum(1.0, 2.0), 1.5, 0.9},
      {pi, 3.0, 0.7},
      {fam::pareto(1.0), 1.5, 0.9},
  };
  for (const auto& c : cases) {
    EvalGrid grid = default_grid(c.f);
    CHECK(tr::exchange_check(c.f, c.p, c.q, grid) <= 1e-10);
  }
  // p = q = 1 leaves everything alone
  EvalGrid grid = default_grid(fam::dagum(1.0, 1.0));
  CHECK(tr::exchange_check(fam::dagum(1.0, 1.0), 1.0, 1.0, grid) == 0.0);
  CHECK_THROWS_AS(tr::exchange_check(fam::dagum(1.0, 1.0), 0.5, 2.0, grid),
                  DomainError);
  CHECK_THROWS_AS(tr::exchange_check(fam::gumbel(), 2.0, 0.75, grid), ClassError);
}

TEST_CASE("bn preserves tails") {
  DistFn f = fam::dagum(1.0, 1.0);
  for (double t : {0.5, 1.0, 2.0}) {
    DistFn b = tr::bn(f, t);
    for (double x : {1e4, 1e5, 1e6}) {
      double ratio = b.survival(x) / f.survival(x);
      CHECK(std::abs(ratio - 1.0) < 1e-3);
    }
  }
}
