#include "maxalg/kernels.hpp"

#include <atomic>

#include "maxalg/errors.hpp"
#include "maxalg/scalar_ops.hpp"

namespace maxalg::kernels {

namespace avx2 {
// Defined in kernels_avx2.cpp; compiled with target("avx2") attributes.
bool available();
void classical_max(const double* u, const double* v, double* out, std::size_t n);
void free_max(const double* u, const double* v, double* out, std::size_t n);
void bool_max(const double* u, const double* v, double* out, std::size_t n);
void mix(double w, const double* u, const double* v, double* out, std::size_t n);
void free_power(double t, const double* u, double* out, std::size_t n);
void bool_power(double t, const double* u, double* out, std::size_t n);
void b1_fused(const double* u, double* out, std::size_t n);
void b1_inverse(const double* u, double* out, std::size_t n);
}  // namespace avx2

namespace scalar {

void classical_max(const double* u, const double* v, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::classical_max(u[i], v[i]);
}

void free_max(const double* u, const double* v, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::free_max(u[i], v[i]);
}

void bool_max(const double* u, const double* v, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::bool_max(u[i], v[i]);
}

void mix(double w, const double* u, const double* v, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::mix(w, u[i], v[i]);
}

void free_power(double t, const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = detail::free_power_unchecked(u[i], t);
}

void bool_power(double t, const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::bool_power(u[i], t);
}

void b1_fused(const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::b1_fused(u[i]);
}

void b1_inverse(const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::b1_inverse(u[i]);
}

}  // namespace scalar

namespace {

Backend detect() { return avx2::available() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend> g_backend{detect()};

}  // namespace

Backend active() { return g_backend.load(std::memory_order_relaxed); }

bool supported(Backend b) {
  return b == Backend::Scalar || (b == Backend::Avx2 && avx2::available());
}

void set_backend(Backend b) {
  if (!supported(b))
    throw DomainError("kernels: backend not supported on this CPU");
  g_backend.store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

void classical_max(const double* u, const double* v, double* out, std::size_t n) {
  if (active() == Backend::Avx2) return avx2::classical_max(u, v, out, n);
  scalar::classical_max(u, v, out, n);
}

void free_max(const double* u, const double* v, double* out, std::size_t n) {
  if (active() == Backend::Avx2) return avx2::free_max(u, v, out, n);
  scalar::free_max(u, v, out, n);
}

void bool_max(const double* u, const double* v, double* out, std::size_t n) {
  if (active() == Backend::Avx2) return avx2::bool_max(u, v, out, n);
  scalar::bool_max(u, v, out, n);
}

void mix(double w, const double* u, const double* v, double* out, std::size_t n) {
  if (active() == Backend::Avx2) return avx2::mix(w, u, v, out, n);
  scalar::mix(w, u, v, out, n);
}

void free_power(double t, const double* u, double* out, std::size_t n) {
  if (active() == Backend::Avx2) return avx2::free_power(t, u, out, n);
  scalar::free_power(t, u, out, n);
}

void bool_power(double t, const double* u, double* out, std::size_t n) {
  if (active() == Backend::Avx2) return avx2::bool_power(t, u, out, n);
  scalar::bool_power(t, u, out, n);
}

void b1_fused(const double* u, double* out, std::size_t n) {
  if (active() == Backend::Avx2) return avx2::b1_fused(u, out, n);
  scalar::b1_fused(u, out, n);
}

void b1_inverse(const double* u, double* out, std::size_t n) {
  if (active() == Backend::Avx2) return avx2::b1_inverse(u, out, n);
  scalar::b1_inverse(u, out, n);
}

// No SIMD for exp/log/pow; these stay scalar on every backend.
void classical_power(double t, const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::classical_power(u[i], t);
}

void lambda_vee(const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::lambda_vee(u[i]);
}

void chi(const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::chi(u[i]);
}

void chi_inv(const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::chi_inv(u[i]);
}

}  // namespace maxalg::kernels
