#include <cmath>
#include <numbers>

#include "polybasis/wigner.hpp"

namespace polybasis {

std::pair<double, double> spherical_angles(const Vec3& x) {
  return {std::atan2(std::hypot(x.x(), x.y()), x.z()), std::atan2(x.y(), x.x())};
}

void eval_sh_table(int lmax, double theta, double phi, std::span<cdouble> out) {
  if (lmax < 0) throw Error("degree must be non-negative");
  const std::size_t needed = static_cast<std::size_t>(lmax + 1) * (lmax + 1);
  if (out.size() < needed) throw Error("spherical harmonic table too small");

  const double x = std::cos(theta);
  const double sx = std::sin(theta);
  // Normalized associated Legendre values for fixed m, walking l upward:
  // P(m,m) from the diagonal recurrence, then the standard three-term rule.
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sx;
    const cdouble phase = std::polar(1.0, m * phi);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;

    double p_prev = 0.0;
    double p_cur = pmm;
    for (int l = m; l <= lmax; ++l) {
      if (l == m + 1) {
        p_prev = p_cur;
        p_cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
      } else if (l > m + 1) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
        const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * (l - 1) * (l - 1) - 1.0));
        const double p_next = a * (x * p_cur - b * p_prev);
        p_prev = p_cur;
        p_cur = p_next;
      }
      const cdouble y = p_cur * phase;
      out[l * l + l + m] = y;
      if (m > 0) out[l * l + l - m] = sign * std::conj(y);
    }
  }
}

std::vector<cdouble> eval_sh_table(int lmax, double theta, double phi) {
  std::vector<cdouble> out(static_cast<std::size_t>(lmax + 1) * (lmax + 1));
  eval_sh_table(lmax, theta, phi, out);
  return out;
}

cdouble eval_complex_sh(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw Error("invalid (l, m)");
  const auto table = eval_sh_table(l, theta, phi);
  return table[l * l + l + m];
}

double eval_real_sh(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw Error("invalid (l, m)");
  const auto table = eval_sh_table(l, theta, phi);
  const CMatrix U = real_sh_transform(l);
  cdouble z = 0.0;
  for (int mp = -l; mp <= l; ++mp) z += U(mp + l, m + l) * table[l * l + l + mp];
  return z.real();
}

void eval_sh_degree(int l, const Vec3& x, std::span<cdouble> out) {
  const auto [theta, phi] = spherical_angles(x);
  const auto table = eval_sh_table(l, theta, phi);
  for (int m = -l; m <= l; ++m) out[m + l] = table[l * l + l + m];
}

}  // namespace polybasis
