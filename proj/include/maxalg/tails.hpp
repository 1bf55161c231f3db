#pragma once

// Survival-function analysis: regular-variation index estimation, tail
// equivalence of convolution powers, and the Frechet-domain classifier that
// certifies classical, free, and Boolean attraction at once.

#include <vector>

#include "maxalg/distfn.hpp"

namespace maxalg::tails {

enum class TailClass { FrechetDomain, NotClassified };

struct TailReport {
  std::vector<double> probes;      // probe points x
  std::vector<double> ratios;      // survival(F, t x) / survival(F, x)
  std::vector<double> estimates;   // per-probe index estimates
  double estimated_index = 0.0;    // estimate at the largest probe
  double residual = 0.0;           // spread over the last three estimates
  TailClass classification = TailClass::NotClassified;
  std::vector<std::string> notes;
};

inline std::vector<double> default_probes() {
  return {1e2, 1e3, 1e4, 1e5, 1e6};
}

// 1 - F(x) through the complementary evaluation path.
double survival(const DistFn& f, double x);

// Per-probe estimates -log(survival(F, t x) / survival(F, x)) / log(t) for
// t > 1 over increasing probes; throws TailVanished if survival hits 0.
TailReport rv_index(const DistFn& f, double t, const std::vector<double>& probes);

// Ratios survival(power(conv, F, t), x) / (t * survival(F, x)) per probe;
// they approach 1 as the probes grow.
std::vector<double> tail_equivalence(const DistFn& f, Conv conv, double t,
                                     const std::vector<double>& probes);

// FrechetDomain(alpha-hat) when the rv_index estimates stabilize (residual
// below 0.05) at a positive index; NotClassified otherwise, including when
// the tail vanishes numerically (e.g. exponential decay underflowing).
TailReport classify_domain(const DistFn& f, double t = 2.0,
                           const std::vector<double>& probes = default_probes());

}  // namespace maxalg::tails
