#include <random>
#include <vector>

#include "doctest.h"
#include "maxalg/kernels.hpp"
#include "maxalg/scalar_ops.hpp"

using namespace maxalg;
namespace k = maxalg::kernels;

namespace {

std::vector<double> random_unit(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = unif(rng);
  // salt the boundaries in
  if (n > 3) {
    v[0] = 0.0;
    v[1] = 1.0;
    v[2] = 1e-300;
  }
  return v;
}

struct BackendGuard {
  k::Backend saved;
  BackendGuard() : saved(k::active()) {}
  ~BackendGuard() { k::set_backend(saved); }
};

// Odd lengths exercise the vector tail path.
const size_t kSizes[] = {0, 1, 3, 4, 5, 17, 128, 1001};

template <typename Run>
void for_each_backend_equal(const Run& run) {
  BackendGuard guard;
  for (size_t n : kSizes) {
    std::vector<double> a = random_unit(n, 11 + n);
    std::vector<double> b = random_unit(n, 23 + n);
    k::set_backend(k::Backend::Scalar);
    std::vector<double> ref = run(a, b, n);
    if (!k::supported(k::Backend::Avx2)) continue;
    k::set_backend(k::Backend::Avx2);
    std::vector<double> simd = run(a, b, n);
    REQUIRE(ref.size() == simd.size());
    for (size_t i = 0; i < n; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      CHECK(ref[i] == simd[i]);
    }
  }
}

}  // namespace

TEST_CASE("binary kernels: SIMD backends bitwise-match scalar") {
  for_each_backend_equal([](const std::vector<double>& a,
                            const std::vector<double>& b, size_t n) {
    std::vector<double> out(n);
    k::classical_max(a.data(), b.data(), out.data(), n);
    return out;
  });
  for_each_backend_equal([](const std::vector<double>& a,
                            const std::vector<double>& b, size_t n) {
    std::vector<double> out(n);
    k::free_max(a.data(), b.data(), out.data(), n);
    return out;
  });
  for_each_backend_equal([](const std::vector<double>& a,
                            const std::vector<double>& b, size_t n) {
    std::vector<double> out(n);
    k::bool_max(a.data(), b.data(), out.data(), n);
    return out;
  });
  for_each_backend_equal([](const std::vector<double>& a,
                            const std::vector<double>& b, size_t n) {
    std::vector<double> out(n);
    k::mix(0.37, a.data(), b.data(), out.data(), n);
    return out;
  });
}

TEST_CASE("unary kernels: SIMD backends bitwise-match scalar") {
  for (double t : {0.25, 1.0, 2.0, 7.5}) {
    for_each_backend_equal([t](const std::vector<double>& a,
                               const std::vector<double>&, size_t n) {
      std::vector<double> out(n);
      k::free_power(t, a.data(), out.data(), n);
      return out;
    });
    for_each_backend_equal([t](const std::vector<double>& a,
                               const std::vector<double>&, size_t n) {
      std::vector<double> out(n);
      k::bool_power(t, a.data(), out.data(), n);
      return out;
    });
  }
  for_each_backend_equal([](const std::vector<double>& a,
                            const std::vector<double>&, size_t n) {
    std::vector<double> out(n);
    k::b1_fused(a.data(), out.data(), n);
    return out;
  });
  for_each_backend_equal([](const std::vector<double>& a,
                            const std::vector<double>&, size_t n) {
    std::vector<double> out(n);
    k::b1_inverse(a.data(), out.data(), n);
    return out;
  });
}

TEST_CASE("batch kernels agree with the scalar algebra elementwise") {
  BackendGuard guard;
  std::vector<double> a = random_unit(257, 5);
  std::vector<double> b = random_unit(257, 7);
  std::vector<double> out(a.size());
  for (k::Backend backend : {k::Backend::Scalar, k::Backend::Avx2}) {
    if (!k::supported(backend)) continue;
    k::set_backend(backend);

    k::bool_max(a.data(), b.data(), out.data(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
      CHECK(out[i] == detail::bool_max(a[i], b[i]));

    k::free_power(3.5, a.data(), out.data(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
      CHECK(out[i] == detail::free_power_unchecked(a[i], 3.5));

    k::lambda_vee(a.data(), out.data(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
      CHECK(out[i] == detail::lambda_vee(a[i]));

    k::chi(a.data(), out.data(), a.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(out[i] == detail::chi(a[i]));

    k::chi_inv(a.data(), out.data(), a.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(out[i] == detail::chi_inv(a[i]));

    k::classical_power(0.5, a.data(), out.data(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
      CHECK(out[i] == detail::classical_power(a[i], 0.5));
  }
}

TEST_CASE("kernels accept aliased output") {
  BackendGuard guard;
  for (k::Backend backend : {k::Backend::Scalar, k::Backend::Avx2}) {
    if (!k::supported(backend)) continue;
    k::set_backend(backend);
    std::vector<double> a = random_unit(100, 3);
    std::vector<double> b = random_unit(100, 4);
    std::vector<double> expect(100);
    k::free_max(a.data(), b.data(), expect.data(), 100);
    std::vector<double> inplace = a;
    k::free_max(inplace.data(), b.data(), inplace.data(), 100);
    for (size_t i = 0; i < 100; ++i) CHECK(inplace[i] == expect[i]);
  }
}

TEST_CASE("backend control surface") {
  BackendGuard guard;
  k::set_backend(k::Backend::Scalar);
  CHECK(k::active() == k::Backend::Scalar);
  CHECK(std::string(k::backend_name(k::Backend::Scalar)) == "scalar");
  CHECK(std::string(k::backend_name(k::Backend::Avx2)) == "avx2");
  CHECK(k::supported(k::Backend::Scalar));
}
