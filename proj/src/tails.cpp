#include "maxalg/tails.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace maxalg::tails {

namespace {

void require_probes(const std::vector<double>& probes) {
  if (probes.empty()) throw DomainError("tails: empty probe list");
  for (size_t i = 0; i + 1 < probes.size(); ++i)
    if (!(probes[i] < probes[i + 1]))
      throw DomainError("tails: probes must be strictly increasing");
}

double checked_survival(const DistFn& f, double x) {
  double s = f.survival(x);
  if (s <= 0.0)
    throw TailVanished("survival vanished at probe x = " + std::to_string(x));
  return s;
}

}  // namespace

double survival(const DistFn& f, double x) { return f.survival(x); }

TailReport rv_index(const DistFn& f, double t, const std::vector<double>& probes) {
  if (!(t > 1.0)) throw DomainError("rv_index: ratio scale t must be > 1");
  require_probes(probes);
  TailReport r;
  r.probes = probes;
  double logt = std::log(t);
  for (double x : probes) {
    double s1 = checked_survival(f, x);
    double s2 = checked_survival(f, t * x);
    double ratio = s2 / s1;
    r.ratios.push_back(ratio);
    r.estimates.push_back(-std::log(ratio) / logt);
  }
  r.estimated_index = r.estimates.back();
  size_t k = std::min<size_t>(3, r.estimates.size());
  double mn = r.estimates.back(), mx = r.estimates.back();
  for (size_t i = r.estimates.size() - k; i < r.estimates.size(); ++i) {
    mn = std::min(mn, r.estimates[i]);
    mx = std::max(mx, r.estimates[i]);
  }
  r.residual = mx - mn;
  return r;
}

std::vector<double> tail_equivalence(const DistFn& f, Conv conv, double t,
                                     const std::vector<double>& probes) {
  require_probes(probes);
  DistFn powered = power(conv, f, t);  // validates t per convolution and class
  std::vector<double> ratios;
  ratios.reserve(probes.size());
  for (double x : probes) {
    double s = checked_survival(f, x);
    ratios.push_back(powered.survival(x) / (t * s));
  }
  return ratios;
}

TailReport classify_domain(const DistFn& f, double t,
                           const std::vector<double>& probes) {
  TailReport r;
  try {
    r = rv_index(f, t, probes);
  } catch (const TailVanished& e) {
    r.classification = TailClass::NotClassified;
    r.notes.push_back(std::string("tail vanished: ") + e.what());
    return r;
  }
  if (r.residual < 0.05 && r.estimated_index > 0.0) {
    r.classification = TailClass::FrechetDomain;
  } else {
    r.classification = TailClass::NotClassified;
    r.notes.push_back("index estimates did not stabilize (residual " +
                      std::to_string(r.residual) + ")");
  }
  return r;
}

}  // namespace maxalg::tails
