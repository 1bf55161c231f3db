#include <cmath>

#include "doctest.h"
#include "maxalg/families.hpp"

using namespace maxalg;
namespace fam = maxalg::families;

TEST_CASE("closed forms at pinned points") {
  CHECK(std::abs(fam::frechet(1.0).eval(1.0) - std::exp(-1.0)) < 1e-12);
  CHECK(fam::frechet(1.0).eval(0.0) == 0.0);
  CHECK(std::abs(fam::pareto(1.0).eval(2.0) - 0.5) < 1e-12);
  CHECK(std::abs(fam::dagum(1.0, 1.0).eval(1.0) - 0.5) < 1e-12);
  CHECK(std::abs(fam::gumbel().eval(0.0) - std::exp(-1.0)) < 1e-12);
  CHECK(fam::weibull(2.0).eval(0.5) == 1.0);
  CHECK(std::abs(fam::weibull(2.0).eval(-0.5) - std::exp(-0.25)) < 1e-12);
  CHECK(std::abs(fam::free_exponential().eval(1.0) - (1.0 - std::exp(-1.0))) <
        1e-12);
  CHECK(fam::free_exponential().eval(-0.1) == 0.0);
  CHECK(std::abs(fam::beta_law(2.0).eval(-0.5) - 0.75) < 1e-12);
  CHECK(fam::beta_law(2.0).eval(-1.5) == 0.0);
  CHECK(fam::beta_law(2.0).eval(0.5) == 1.0);
  CHECK(std::abs(fam::dagum(2.0, 1.5).eval(2.0) -
                 1.0 / (1.0 + 2.0 * std::pow(2.0, -1.5))) < 1e-12);
}

TEST_CASE("compound Poisson laws") {
  DistFn phi1 = fam::frechet(1.0);
  DistFn cpc = fam::compound_poisson_classical(1.0, phi1);
  CHECK(cpc.eval(-0.5) == 0.0);
  CHECK(std::abs(cpc.eval(1.0) - std::exp(-(1.0 - std::exp(-1.0)))) < 1e-12);
  CHECK(std::abs(cpc.eval(0.0) - std::exp(-1.0)) < 1e-12);

  DistFn cpf = fam::compound_poisson_free(0.5, phi1);
  CHECK(cpf.eval(-0.5) == 0.0);
  CHECK(std::abs(cpf.eval(1.0) - (1.0 - 0.5 * (1.0 - std::exp(-1.0)))) < 1e-12);

  // lambda = 0 collapses to the unit step at 0
  DistFn z = fam::compound_poisson_free(0.0, phi1);
  CHECK(z.eval(0.0) == 1.0);
  CHECK(z.eval(-0.1) == 0.0);

  CHECK(cpc.support_class() == SupportClass::NonNegative);
  CHECK(cpf.support_class() == SupportClass::NonNegative);
  CHECK(cpc.alpha() == 0.0);

  // with lambda > 1 the free law vanishes where G <= 1 - 1/lambda
  DistFn deep = fam::compound_poisson_free(2.0, phi1);
  CHECK(deep.alpha() == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-8));

  CHECK_THROWS_AS(fam::compound_poisson_classical(-1.0, phi1), ParameterError);
  CHECK_THROWS_AS(fam::frechet(0.0), ParameterError);
  CHECK_THROWS_AS(fam::dagum(-1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(fam::beta_law(-2.0), ParameterError);
}

TEST_CASE("cp_prelimit branch formula") {
  DistFn phi1 = fam::frechet(1.0);

  // N = lambda: the prelimit is G itself
  DistFn f1 = fam::cp_prelimit(1.0, phi1, 1);
  for (double x : {-1.0, 0.5, 2.0}) CHECK(f1.eval(x) == phi1.eval(x));

  DistFn f2 = fam::cp_prelimit(1.0, phi1, 2);
  CHECK(std::abs(f2.eval(1.0) - (0.5 + 0.5 * std::exp(-1.0))) < 1e-12);

  DistFn f0 = fam::cp_prelimit(0.0, phi1, 5);
  CHECK(f0.eval(0.0) == 1.0);
  CHECK(f0.eval(3.0) == 1.0);

  // below zero the unit-step component drops out
  DistFn g = fam::gumbel();
  DistFn fg = fam::cp_prelimit(1.0, g, 4);
  CHECK(std::abs(fg.eval(-1.0) - 0.25 * g.eval(-1.0)) < 1e-12);
  CHECK(fg.support_class() == SupportClass::Whole);

  CHECK_THROWS_AS(fam::cp_prelimit(3.0, phi1, 2), ParameterError);
  CHECK_THROWS_AS(fam::cp_prelimit(1.0, phi1, 0), ParameterError);
}

TEST_CASE("class tags match the published table") {
  CHECK(fam::gumbel().support_class() == SupportClass::Whole);
  CHECK(fam::weibull(1.0).support_class() == SupportClass::Whole);
  CHECK(fam::free_exponential().support_class() == SupportClass::Whole);
  CHECK(fam::beta_law(1.0).support_class() == SupportClass::Whole);
  CHECK(fam::frechet(1.0).support_class() == SupportClass::Positive);
  CHECK(fam::pareto(1.0).support_class() == SupportClass::Positive);
  CHECK(fam::dagum(1.0, 1.0).support_class() == SupportClass::Positive);
}

TEST_CASE("lambda_vee maps the classical trio onto the free trio") {
  struct Pair {
    DistFn classical;
    DistFn free;
  } pairs[] = {
      {fam::gumbel(), fam::free_exponential()},
      {fam::frechet(1.5), fam::pareto(1.5)},
      {fam::weibull(2.5), fam::beta_law(2.5)},
  };
  for (const auto& p : pairs) {
    EvalGrid grid = default_grid(p.free);
    CHECK(sup_distance(map_fn(MapKind::LambdaVee, p.classical), p.free, grid) <
          1e-12);
  }
}

TEST_CASE("chi pairs the Dagum and Frechet families") {
  for (double a : {0.5, 1.0, 2.0}) {
    EvalGrid grid = default_grid(fam::frechet(a));
    CHECK(sup_distance(map_fn(MapKind::Chi, fam::dagum(1.0, a)), fam::frechet(a),
                       grid) < 1e-12);
    EvalGrid grid2 = default_grid(fam::dagum(1.0, a));
    CHECK(sup_distance(map_fn(MapKind::ChiInv, fam::frechet(a)),
                       fam::dagum(1.0, a), grid2) < 1e-12);
  }
}

TEST_CASE("free compound Poisson is the lambda_vee image of the classical one") {
  DistFn g = fam::frechet(1.0);
  for (double lam : {0.25, 1.0, 3.0}) {
    DistFn cpc = fam::compound_poisson_classical(lam, g);
    DistFn cpf = fam::compound_poisson_free(lam, g);
    EvalGrid grid = default_grid(cpf);
    CHECK(sup_distance(map_fn(MapKind::LambdaVee, cpc), cpf, grid) < 1e-12);
  }
}

TEST_CASE("stability rescalings of the three stable families") {
  for (double a : {1.0, 2.0}) {
    for (double n : {2.0, 7.0}) {
      double scale = std::pow(n, -1.0 / a);
      EvalGrid gf = default_grid(fam::frechet(a));
      CHECK(sup_distance(power(Conv::Classical, fam::frechet(a), n),
                         affine_rescale(fam::frechet(a), scale, 0.0), gf) < 1e-12);
      EvalGrid gp = default_grid(fam::pareto(a));
      CHECK(sup_distance(power(Conv::Free, fam::pareto(a), n),
                         affine_rescale(fam::pareto(a), scale, 0.0), gp) < 1e-12);
      EvalGrid gd = default_grid(fam::dagum(1.0, a));
      CHECK(sup_distance(power(Conv::Bool, fam::dagum(1.0, a), n),
                         affine_rescale(fam::dagum(1.0, a), scale, 0.0), gd) <
            1e-12);
    }
  }
}

TEST_CASE("prelimit powers approach the compound Poisson laws") {
  DistFn phi1 = fam::frechet(1.0);
  DistFn cpc = fam::compound_poisson_classical(1.0, phi1);
  DistFn cpf = fam::compound_poisson_free(1.0, phi1);
  EvalGrid grid = default_grid(cpc);
  double prev = 1.0;
  for (long n : {10L, 100L, 1000L}) {
    DistFn fn = fam::cp_prelimit(1.0, phi1, n);
    double d = sup_distance(power(Conv::Classical, fn, static_cast<double>(n)),
                            cpc, grid);
    CHECK(d < prev);
    prev = d;
    // the free prelimit power is exact on x >= 0 once N >= 2
    CHECK(sup_distance(power(Conv::Free, fn, static_cast<double>(n)), cpf, grid) <
          1e-12);
  }
  CHECK(prev < 1e-2);
}
