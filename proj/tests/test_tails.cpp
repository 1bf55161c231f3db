#include <cmath>

#include "doctest.h"
#include "maxalg/families.hpp"
#include "maxalg/tails.hpp"

using namespace maxalg;
namespace fam = maxalg::families;
namespace tl = maxalg::tails;

TEST_CASE("survival pinned values") {
  CHECK(tl::survival(fam::dagum(1.0, 1.0), 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tl::survival(fam::weibull(1.0), 0.5) == 0.0);  // past omega
  // series oracle: 1 - exp(-1e-4) = 1e-4 - 1e-8/2 + 1e-12/6 - ...
  double expect = 9.9995000166662503e-05;
  CHECK(std::abs(tl::survival(fam::frechet(1.0), 1e4) - expect) < 1e-18);
}

TEST_CASE("rv_index on closed-form families") {
  // exact on Pareto: the survival is x^-a on x >= 1
  tl::TailReport p = tl::rv_index(fam::pareto(1.5), 2.0, {1e2, 1e3});
  CHECK(std::abs(p.estimated_index - 1.5) < 1e-12);

  tl::TailReport d = tl::rv_index(fam::dagum(1.0, 2.0), 2.0, {10.0, 100.0, 1000.0});
  CHECK(std::abs(d.estimated_index - 2.0) < 1e-3);

  tl::TailReport f = tl::rv_index(fam::frechet(1.0), 2.0, tl::default_probes());
  CHECK(std::abs(f.estimated_index - 1.0) < 1e-3);

  CHECK_THROWS_AS(tl::rv_index(dirac(1.0), 2.0, {10.0, 100.0}), TailVanished);
  CHECK_THROWS_AS(tl::rv_index(fam::pareto(1.0), 1.0, {10.0}), DomainError);
  CHECK_THROWS_AS(tl::rv_index(fam::pareto(1.0), 2.0, {100.0, 10.0}), DomainError);
}

TEST_CASE("rv_index across the parameter sweep") {
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    auto probes = tl::default_probes();
    CHECK(std::abs(tl::rv_index(fam::dagum(1.0, a), 2.0, probes).estimated_index -
                   a) < 1e-3);
    CHECK(std::abs(tl::rv_index(fam::pareto(a), 2.0, probes).estimated_index - a) <
          1e-3);
    CHECK(std::abs(tl::rv_index(fam::frechet(a), 2.0, probes).estimated_index - a) <
          1e-3);
  }
}

TEST_CASE("tail_equivalence ratios against closed-form oracles") {
  DistFn d1 = fam::dagum(1.0, 1.0);
  DistFn phi1 = fam::frechet(1.0);
  auto probes = tl::default_probes();

  // free: min(t sbar, 1) / (t sbar) = 1 exactly once t sbar < 1
  auto free_ratios = tl::tail_equivalence(d1, Conv::Free, 3.0, probes);
  for (double r : free_ratios) CHECK(r == 1.0);

  // classical on Frechet: ratio = (1 - F^t) / (t (1 - F))
  auto cls_ratios = tl::tail_equivalence(phi1, Conv::Classical, 2.0, probes);
  for (size_t i = 0; i < probes.size(); ++i) {
    double F = phi1.eval(probes[i]);
    double oracle = (1.0 + F) / 2.0;
    CHECK(std::abs(cls_ratios[i] - oracle) < 1e-12);
  }

  // bool on Dagum: ratio = 1 / (1 + (t-1) sbar)
  auto bool_ratios = tl::tail_equivalence(d1, Conv::Bool, 2.0, probes);
  for (size_t i = 0; i < probes.size(); ++i) {
    double oracle = 1.0 / (2.0 - d1.eval(probes[i]));
    CHECK(std::abs(bool_ratios[i] - oracle) < 1e-12);
  }

  // contract: all three approach 1 at the largest probe
  for (double t : {2.0, 3.0, 7.5}) {
    for (const DistFn& f : {d1, phi1}) {
      CHECK(std::abs(tl::tail_equivalence(f, Conv::Classical, t, probes).back() -
                     1.0) < 1e-3);
      CHECK(std::abs(tl::tail_equivalence(f, Conv::Bool, t, probes).back() - 1.0) <
            1e-3);
      if (t >= 1.0)
        CHECK(std::abs(tl::tail_equivalence(f, Conv::Free, t, probes).back() -
                       1.0) < 1e-3);
    }
  }

  CHECK_THROWS_AS(tl::tail_equivalence(d1, Conv::Free, 0.5, probes), DomainError);
  CHECK_THROWS_AS(tl::tail_equivalence(fam::gumbel(), Conv::Bool, 2.0, probes),
                  ClassError);
}

TEST_CASE("classify_domain") {
  tl::TailReport d2 = tl::classify_domain(fam::dagum(1.0, 2.0));
  CHECK(d2.classification == tl::TailClass::FrechetDomain);
  CHECK(std::abs(d2.estimated_index - 2.0) < 1e-3);

  tl::TailReport p = tl::classify_domain(fam::pareto(1.5));
  CHECK(p.classification == tl::TailClass::FrechetDomain);
  CHECK(std::abs(p.estimated_index - 1.5) < 1e-3);

  // exponential tails are not regularly varying; the survival underflows
  // long before the last probe and the report says so
  tl::TailReport g = tl::classify_domain(fam::gumbel());
  CHECK(g.classification == tl::TailClass::NotClassified);
  REQUIRE(!g.notes.empty());

  tl::TailReport steps = tl::classify_domain(dirac(2.0));
  CHECK(steps.classification == tl::TailClass::NotClassified);
}

TEST_CASE("classification is invariant under convolution powers") {
  DistFn d2 = fam::dagum(1.0, 2.0);
  double base = tl::classify_domain(d2).estimated_index;
  for (Conv c : {Conv::Classical, Conv::Free, Conv::Bool}) {
    for (double t : {2.0, 5.0}) {
      tl::TailReport r = tl::classify_domain(power(c, d2, t));
      CHECK(r.classification == tl::TailClass::FrechetDomain);
      CHECK(std::abs(r.estimated_index - base) < 2e-3);
    }
  }
}
