#pragma once

// Batch kernels applying the scalar algebra over contiguous arrays of
// values in [0,1]. Grid evaluation of distribution-function DAGs runs
// through these, so the rational operations carry AVX2 variants selected at
// runtime; the scalar loops are the reference and the only implementation
// of the transcendental maps. Backends must agree to the last bit: the SIMD
// paths replicate the scalar operation order exactly (no FMA contraction),
// and the equivalence tests assert elementwise equality.

#include <cstddef>

namespace maxalg::kernels {

enum class Backend { Scalar, Avx2 };

// Backend chosen at startup (AVX2 when the CPU supports it).
Backend active();
bool supported(Backend b);
// Test hook; throws DomainError if the backend is unsupported here.
void set_backend(Backend b);
const char* backend_name(Backend b);

// Pointwise binary ops; out may alias either input.
void classical_max(const double* u, const double* v, double* out, std::size_t n);
void free_max(const double* u, const double* v, double* out, std::size_t n);
void bool_max(const double* u, const double* v, double* out, std::size_t n);
void mix(double w, const double* u, const double* v, double* out, std::size_t n);

// Pointwise unary ops; out may alias the input. free_power applies the
// total formula (t u - (t-1))_+; range gating happens at the DistFn layer.
void free_power(double t, const double* u, double* out, std::size_t n);
void bool_power(double t, const double* u, double* out, std::size_t n);
void b1_fused(const double* u, double* out, std::size_t n);
void b1_inverse(const double* u, double* out, std::size_t n);

// Transcendental maps (scalar on every backend).
void classical_power(double t, const double* u, double* out, std::size_t n);
void lambda_vee(const double* u, double* out, std::size_t n);
void chi(const double* u, double* out, std::size_t n);
void chi_inv(const double* u, double* out, std::size_t n);

}  // namespace maxalg::kernels
