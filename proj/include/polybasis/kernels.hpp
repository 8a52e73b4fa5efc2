#pragma once

// Data-parallel inner loops used by the projection and verification code.
// Every kernel has a scalar reference implementation; ISA variants are
// compiled per architecture and selected once at runtime.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace polybasis::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// ISA chosen for this process. POLYBASIS_SIMD=scalar forces the reference path.
Isa active_isa();

/// True when the running CPU can execute the given variant.
bool isa_supported(Isa isa);

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
// sum x_i * y_i
double dot(std::span<const double> x, std::span<const double> y);
// sum conj(x_i) * y_i
std::complex<double> cdotc(std::span<const std::complex<double>> x,
                           std::span<const std::complex<double>> y);
// Re(sum x_i * y_i): the value of a real combination of complex harmonics
double re_cdotu(std::span<const std::complex<double>> x,
                std::span<const std::complex<double>> y);

namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n);
double re_cdotu(const std::complex<double>* x, const std::complex<double>* y, std::size_t n);
}  // namespace scalar

#if defined(POLYBASIS_HAVE_AVX2)
namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n);
double re_cdotu(const std::complex<double>* x, const std::complex<double>* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(POLYBASIS_HAVE_NEON)
namespace neon {
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n);
double re_cdotu(const std::complex<double>* x, const std::complex<double>* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace polybasis::kernels
