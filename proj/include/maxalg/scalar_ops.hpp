#pragma once

// Pointwise algebra on [0,1]: the three max-convolutions (classical, free,
// Boolean), their powers, the homomorphisms between them, and the
// Belinschi-Nica style composition. Everything here is a pure function of
// doubles; the distribution layer lifts these maps pointwise.
//
// Conventions baked in (and branch-checked before any transcendental call):
//   lambda_vee(0) = 0, chi(0) = 0, chi_inv(0) = 0,
//   bool_max(u, v) = 0 whenever u = 0 or v = 0.

#include <cmath>
#include <string>

#include "maxalg/errors.hpp"

namespace maxalg {

// Absolute tolerance for accepting slightly-out-of-range inputs at the
// UnitValue boundary, and the default comparison tolerance in tests.
inline constexpr double kUnitBoundaryTol = 1e-12;

namespace detail {

// Clamp to [0,1] normalizing -0.0 to +0.0. All kernels end with this.
inline double clamp01(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x;
}

// Raw kernels on doubles assumed to lie in [0,1]. These are the scalar
// reference implementations mirrored by the SIMD backends.

inline double classical_max(double u, double v) { return clamp01(u * v); }

inline double free_max(double u, double v) { return clamp01((u + v) - 1.0); }

inline double bool_max(double u, double v) {
  if (u == 0.0 || v == 0.0) return 0.0;
  double w = u * v;
  double den = (u + v) - w;
  return clamp01(w / den);
}

inline double mix(double w, double u, double v) {
  return clamp01((1.0 - w) * u + w * v);
}

inline double classical_power(double u, double t) {
  if (u == 0.0) return 0.0;
  return clamp01(std::pow(u, t));
}

// Total formula (t u - (t - 1))_+ . Valid as a scalar map for every real t;
// only t >= 1 yields a distribution function when lifted, so the public
// surface gates on that. Proof constructions use t in (0,1] directly.
inline double free_power_unchecked(double u, double t) {
  return clamp01(t * u - (t - 1.0));
}

inline double bool_power(double u, double t) {
  // t - (t-1)u > 0 for every t > 0 and u in [0,1].
  double den = t - (t - 1.0) * u;
  return clamp01(u / den);
}

inline double lambda_vee(double u) {
  if (u == 0.0) return 0.0;
  return clamp01(1.0 + std::log(u));
}

inline double chi(double u) {
  if (u == 0.0) return 0.0;
  return clamp01(std::exp(1.0 - 1.0 / u));
}

inline double chi_inv(double u) {
  if (u == 0.0) return 0.0;
  return clamp01(1.0 / (1.0 - std::log(u)));
}

// Time-one Belinschi-Nica scalar map (2 - 1/u)_+ and its inverse
// u -> 1/(2 - u); the inverse builds limit candidates of Boolean powers.
inline double b1_fused(double u) {
  if (u == 0.0) return 0.0;
  return clamp01(2.0 - 1.0 / u);
}

inline double b1_inverse(double u) { return clamp01(1.0 / (2.0 - u)); }

inline double bn_scalar(double u, double t) {
  return bool_power(free_power_unchecked(u, 1.0 + t), 1.0 / (1.0 + t));
}

}  // namespace detail

// A real number in [0,1]; the value F(x) every operation acts on.
// Construction clamps values within kUnitBoundaryTol of the boundary and
// rejects anything farther outside.
class UnitValue {
 public:
  UnitValue() = default;
  explicit UnitValue(double v) : v_(validate(v)) {}

  double value() const { return v_; }
  operator double() const { return v_; }

 private:
  static double validate(double v) {
    if (v >= 0.0 && v <= 1.0) return v;
    if (v < 0.0 && v >= -kUnitBoundaryTol) return 0.0;
    if (v > 1.0 && v <= 1.0 + kUnitBoundaryTol) return 1.0;
    throw DomainError("UnitValue: " + std::to_string(v) +
                      " is outside [0,1]");
  }

  double v_ = 0.0;
};

// u (free-max) v = max{u + v - 1, 0}. Commutative, associative, unit 1.
inline UnitValue free_max(UnitValue u, UnitValue v) {
  return UnitValue(detail::free_max(u, v));
}

// u (bool-max) v = uv / (u + v - uv), 0 if either argument is 0.
inline UnitValue bool_max(UnitValue u, UnitValue v) {
  return UnitValue(detail::bool_max(u, v));
}

// u (classical-max) v = uv.
inline UnitValue classical_max(UnitValue u, UnitValue v) {
  return UnitValue(detail::classical_max(u, v));
}

// Free max power (t u - (t-1))_+ for t >= 1; the lifted map is only a
// distribution function in that range.
inline UnitValue free_power(UnitValue u, double t) {
  if (!(t >= 1.0))
    throw DomainError("free_power: exponent t = " + std::to_string(t) +
                      " must be >= 1");
  return UnitValue(detail::free_power_unchecked(u, t));
}

// Boolean max power u / (t - (t-1)u) for t > 0.
inline UnitValue bool_power(UnitValue u, double t) {
  if (!(t > 0.0))
    throw DomainError("bool_power: exponent t = " + std::to_string(t) +
                      " must be > 0");
  return UnitValue(detail::bool_power(u, t));
}

// Classical max power u^t for t > 0, with 0^t = 0.
inline UnitValue classical_power(UnitValue u, double t) {
  if (!(t > 0.0))
    throw DomainError("classical_power: exponent t = " + std::to_string(t) +
                      " must be > 0");
  return UnitValue(detail::classical_power(u, t));
}

// lambda_vee(u) = (1 + log u)_+ with lambda_vee(0) = 0. Turns products into
// free max-convolutions.
inline UnitValue lambda_vee(UnitValue u) {
  return UnitValue(detail::lambda_vee(u));
}

// chi(u) = exp(1 - 1/u), chi(0) = 0. Order-preserving bijection of [0,1]
// turning Boolean max-convolutions into products; chi_inv is its inverse
// u -> 1/(1 - log u).
inline UnitValue chi(UnitValue u) { return UnitValue(detail::chi(u)); }

inline UnitValue chi_inv(UnitValue u) { return UnitValue(detail::chi_inv(u)); }

// Time-t Belinschi-Nica scalar map: bool_power(free_power(u, 1+t), 1/(1+t)).
// Identity at t = 0; semigroup in t; equals (2 - 1/u)_+ at t = 1.
inline UnitValue bn_scalar(UnitValue u, double t) {
  if (!(t >= 0.0))
    throw DomainError("bn_scalar: time t = " + std::to_string(t) +
                      " must be >= 0");
  return UnitValue(detail::bn_scalar(u, t));
}

struct PqPair {
  double p;
  double q;
};

// Exchange of free and Boolean power exponents:
//   p' = pq / (1 - p + pq),  q' = 1 - p + pq,
// defined for p >= 1, q > 1 - 1/p; then p' >= 1 and q' > 0, and
// bool_power(free_power(u, p), q) = free_power(bool_power(u, q'), p').
inline PqPair pq_exchange(double p, double q) {
  if (!(p >= 1.0))
    throw DomainError("pq_exchange: p = " + std::to_string(p) +
                      " must be >= 1");
  if (!(q > 1.0 - 1.0 / p))
    throw DomainError("pq_exchange: q = " + std::to_string(q) +
                      " must exceed 1 - 1/p");
  double qp = 1.0 - p + p * q;
  return PqPair{p * q / qp, qp};
}

}  // namespace maxalg
