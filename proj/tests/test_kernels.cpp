#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "polybasis/kernels.hpp"

using namespace polybasis;
using cd = std::complex<double>;

namespace {

struct Data {
  std::vector<double> x, y;
  std::vector<cd> cx, cy;
};

Data sample_data(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.x.push_back(u(rng));
    d.y.push_back(u(rng));
    d.cx.emplace_back(u(rng), u(rng));
    d.cy.emplace_back(u(rng), u(rng));
  }
  return d;
}

// Naive long-double sums as the reference for the reference.
long double exact_dot(const std::vector<double>& x, const std::vector<double>& y) {
  long double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long double>(x[i]) * y[i];
  return s;
}

}  // namespace

TEST_CASE("scalar kernels match naive sums") {
  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u}) {
    const Data d = sample_data(n, 17 + n);
    CHECK(kernels::scalar::dot(d.x.data(), d.y.data(), n) == doctest::Approx(double(exact_dot(d.x, d.y))).epsilon(1e-13));

    cd c = 0;
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      c += std::conj(d.cx[i]) * d.cy[i];
      r += (d.cx[i] * d.cy[i]).real();
    }
    const cd got = kernels::scalar::cdotc(d.cx.data(), d.cy.data(), n);
    CHECK(std::abs(got - c) < 1e-12);
    CHECK(std::abs(kernels::scalar::re_cdotu(d.cx.data(), d.cy.data(), n) - r) < 1e-12);

    std::vector<double> y = d.y;
    kernels::scalar::axpy(0.75, d.x.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == 0.75 * d.x[i] + d.y[i]);
  }
}

#if defined(POLYBASIS_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::isa_supported(kernels::Isa::Avx2)) return;
  // every tail length around the vector width
  for (std::size_t n = 0; n <= 70; ++n) {
    const Data d = sample_data(n, 1000 + n);
    const double ref_dot = kernels::scalar::dot(d.x.data(), d.y.data(), n);
    CHECK(std::abs(kernels::avx2::dot(d.x.data(), d.y.data(), n) - ref_dot) < 1e-13 * (1.0 + n));

    const cd ref_c = kernels::scalar::cdotc(d.cx.data(), d.cy.data(), n);
    CHECK(std::abs(kernels::avx2::cdotc(d.cx.data(), d.cy.data(), n) - ref_c) < 1e-13 * (1.0 + n));

    const double ref_r = kernels::scalar::re_cdotu(d.cx.data(), d.cy.data(), n);
    CHECK(std::abs(kernels::avx2::re_cdotu(d.cx.data(), d.cy.data(), n) - ref_r) < 1e-13 * (1.0 + n));

    std::vector<double> a = d.y, b = d.y;
    kernels::scalar::axpy(-1.25, d.x.data(), a.data(), n);
    kernels::avx2::axpy(-1.25, d.x.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-15);
  }
}
#endif

#if defined(POLYBASIS_HAVE_NEON)
TEST_CASE("neon kernels agree with the scalar reference") {
  for (std::size_t n = 0; n <= 70; ++n) {
    const Data d = sample_data(n, 1000 + n);
    CHECK(std::abs(kernels::neon::dot(d.x.data(), d.y.data(), n) - kernels::scalar::dot(d.x.data(), d.y.data(), n)) <
          1e-13 * (1.0 + n));
    CHECK(std::abs(kernels::neon::cdotc(d.cx.data(), d.cy.data(), n) -
                   kernels::scalar::cdotc(d.cx.data(), d.cy.data(), n)) < 1e-13 * (1.0 + n));
    CHECK(std::abs(kernels::neon::re_cdotu(d.cx.data(), d.cy.data(), n) -
                   kernels::scalar::re_cdotu(d.cx.data(), d.cy.data(), n)) < 1e-13 * (1.0 + n));
  }
}
#endif

TEST_CASE("dispatch honours the environment override") {
  const char* env = std::getenv("POLYBASIS_SIMD");
  if (env != nullptr && std::string(env) == "scalar") {
    CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  } else {
    CHECK(kernels::isa_supported(kernels::active_isa()));
  }
  MESSAGE("active ISA: " << kernels::isa_name(kernels::active_isa()));
}

TEST_CASE("dispatched kernels on spans") {
  const Data d = sample_data(37, 5);
  CHECK(kernels::dot(d.x, d.y) == doctest::Approx(double(exact_dot(d.x, d.y))).epsilon(1e-12));
  // <x, x> is real and positive
  const cd self = kernels::cdotc(d.cx, d.cx);
  CHECK(std::abs(self.imag()) < 1e-14);
  CHECK(self.real() > 0.0);
  std::vector<double> y(d.x.size(), 0.0);
  kernels::axpy(2.0, d.x, y);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] == 2.0 * d.x[i]);
}
