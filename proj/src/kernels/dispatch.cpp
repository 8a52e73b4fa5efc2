#include <algorithm>
#include <cstdlib>
#include <string>

#include "polybasis/kernels.hpp"

namespace polybasis::kernels {
namespace {

struct Table {
  Isa isa;
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  std::complex<double> (*cdotc)(const std::complex<double>*, const std::complex<double>*,
                                std::size_t);
  double (*re_cdotu)(const std::complex<double>*, const std::complex<double>*, std::size_t);
};

Table select() {
  Table scalar_table{Isa::Scalar, &scalar::axpy, &scalar::dot, &scalar::cdotc, &scalar::re_cdotu};
  const char* env = std::getenv("POLYBASIS_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return scalar_table;
#if defined(POLYBASIS_HAVE_AVX2)
  if (isa_supported(Isa::Avx2)) {
    return {Isa::Avx2, &avx2::axpy, &avx2::dot, &avx2::cdotc, &avx2::re_cdotu};
  }
#endif
#if defined(POLYBASIS_HAVE_NEON)
  return {Isa::Neon, &neon::axpy, &neon::dot, &neon::cdotc, &neon::re_cdotu};
#endif
  return scalar_table;
}

const Table& table() {
  static const Table t = select();
  return t;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(POLYBASIS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(POLYBASIS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return table().isa; }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  table().axpy(a, x.data(), y.data(), std::min(x.size(), y.size()));
}

double dot(std::span<const double> x, std::span<const double> y) {
  return table().dot(x.data(), y.data(), std::min(x.size(), y.size()));
}

std::complex<double> cdotc(std::span<const std::complex<double>> x,
                           std::span<const std::complex<double>> y) {
  return table().cdotc(x.data(), y.data(), std::min(x.size(), y.size()));
}

double re_cdotu(std::span<const std::complex<double>> x,
                std::span<const std::complex<double>> y) {
  return table().re_cdotu(x.data(), y.data(), std::min(x.size(), y.size()));
}

}  // namespace polybasis::kernels
