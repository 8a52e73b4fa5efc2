#include "polybasis/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace polybasis {
namespace {

constexpr int kCachedDegrees = 64;

Mat3 rot_z(double t) {
  Mat3 R;
  R << std::cos(t), -std::sin(t), 0,
       std::sin(t),  std::cos(t), 0,
       0,            0,           1;
  return R;
}

Mat3 rot_y(double t) {
  Mat3 R;
  R << std::cos(t),  0, std::sin(t),
       0,            1, 0,
       -std::sin(t), 0, std::cos(t);
  return R;
}

// Eigenvectors of J_y for degree l, columns ordered by eigenvalue -l..l.
CMatrix jy_eigenvectors(int l) {
  const int n = 2 * l + 1;
  CMatrix Jy = CMatrix::Zero(n, n);
  for (int m = -l; m < l; ++m) {
    const double raise = std::sqrt(double(l - m) * double(l + m + 1));
    Jy(m + 1 + l, m + l) = cdouble(0.0, -0.5 * raise);
    Jy(m + l, m + 1 + l) = cdouble(0.0, 0.5 * raise);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(Jy);
  if (eig.info() != Eigen::Success) throw NumericalFailure("J_y eigendecomposition failed");
  for (int k = 0; k < n; ++k) {
    if (std::abs(eig.eigenvalues()[k] - double(k - l)) > 1e-9) {
      throw NumericalFailure("J_y spectrum is not -l..l at l=" + std::to_string(l));
    }
  }
  return eig.eigenvectors();
}

const CMatrix& cached_jy_eigenvectors(int l) {
  static std::array<std::once_flag, kCachedDegrees> flags;
  static std::array<CMatrix, kCachedDegrees> cache;
  std::call_once(flags[l], [l] { cache[l] = jy_eigenvectors(l); });
  return cache[l];
}

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

}  // namespace

EulerAngles euler_from_rotation(const Mat3& R) {
  const double c = R(2, 2);
  if (c > 1.0 + 1e-12 || c < -1.0 - 1e-12) {
    throw Error("rotation matrix has R(3,3) outside [-1, 1]");
  }
  EulerAngles a;
  const double s = std::hypot(R(0, 2), R(1, 2));
  if (s < kGimbalTolerance) {
    if (c > 0.0) {
      a.beta = 0.0;
      a.alpha = std::atan2(R(1, 0), R(0, 0));
      a.gamma = 0.0;
    } else {
      a.beta = std::numbers::pi;
      a.alpha = 0.0;
      a.gamma = std::atan2(R(1, 0), R(1, 1));
    }
    return a;
  }
  a.beta = std::atan2(s, std::clamp(c, -1.0, 1.0));
  a.alpha = std::atan2(R(1, 2), R(0, 2));
  a.gamma = std::atan2(R(2, 1), -R(2, 0));
  return a;
}

Mat3 rotation_from_euler(const EulerAngles& angles) {
  return rot_z(angles.alpha) * rot_y(angles.beta) * rot_z(angles.gamma);
}

RMatrix wigner_d_small(int l, double beta) {
  if (l < 0) throw Error("degree must be non-negative");
  const int n = 2 * l + 1;
  const CMatrix V = l < kCachedDegrees ? cached_jy_eigenvectors(l) : jy_eigenvectors(l);
  CMatrix phased = V;
  for (int k = 0; k < n; ++k) phased.col(k) *= std::polar(1.0, -beta * double(k - l));
  return (phased * V.adjoint()).real();
}

RMatrix wigner_d_small_sum(int l, double beta) {
  if (l < 0) throw Error("degree must be non-negative");
  const int n = 2 * l + 1;
  const double c = std::cos(beta / 2.0);
  const double s = std::sin(beta / 2.0);
  RMatrix d = RMatrix::Zero(n, n);
  for (int mp = -l; mp <= l; ++mp) {
    for (int m = -l; m <= l; ++m) {
      const double prefactor =
          0.5 * (log_factorial(l + m) + log_factorial(l - m) + log_factorial(l + mp) + log_factorial(l - mp));
      double sum = 0.0;
      const int kmin = std::max(0, m - mp);
      const int kmax = std::min(l + m, l - mp);
      for (int k = kmin; k <= kmax; ++k) {
        const double log_mag = prefactor - log_factorial(l + m - k) - log_factorial(k) -
                               log_factorial(l - k - mp) - log_factorial(k - m + mp);
        const double sign = ((k - m + mp) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(log_mag) * std::pow(c, 2 * l - 2 * k + m - mp) * std::pow(s, 2 * k - m + mp);
      }
      d(mp + l, m + l) = sum;
    }
  }
  return d;
}

CMatrix wigner_D(int l, const EulerAngles& angles) {
  const RMatrix d = wigner_d_small(l, angles.beta);
  const int n = 2 * l + 1;
  CMatrix D(n, n);
  for (int mp = -l; mp <= l; ++mp) {
    for (int m = -l; m <= l; ++m) {
      D(mp + l, m + l) = std::polar(1.0, -mp * angles.alpha - m * angles.gamma) * d(mp + l, m + l);
    }
  }
  return D;
}

CMatrix real_sh_transform(int l) {
  const int n = 2 * l + 1;
  const double r = 1.0 / std::numbers::sqrt2;
  const cdouble i{0.0, 1.0};
  CMatrix U = CMatrix::Zero(n, n);
  for (int m = -l; m <= l; ++m) {
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    if (m < 0) {
      U(m + l, m + l) = i * r;
      U(-m + l, m + l) = -parity * i * r;  // (-1)^{m+1}
    } else if (m == 0) {
      U(l, l) = 1.0;
    } else {
      U(-m + l, m + l) = r;
      U(m + l, m + l) = parity * r;
    }
  }
  return U;
}

CMatrix real_rotation_M(const CMatrix& D) {
  const int n = static_cast<int>(D.rows());
  const int l = (n - 1) / 2;
  const double r = 1.0 / std::numbers::sqrt2;
  const cdouble i{0.0, 1.0};
  CMatrix M(n, n);
  for (int m = -l; m <= l; ++m) {
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    if (m < 0) {
      M.col(m + l) = i * r * (D.col(m + l) - parity * D.col(-m + l));
    } else if (m == 0) {
      M.col(l) = D.col(l);
    } else {
      M.col(m + l) = r * (D.col(-m + l) + parity * D.col(m + l));
    }
  }
  return M;
}

CMatrix real_rotation_M(int l, const EulerAngles& angles) { return real_rotation_M(wigner_D(l, angles)); }

CMatrix real_rotation_W(int l, const EulerAngles& angles) {
  const CMatrix U = real_sh_transform(l);
  return U.adjoint() * wigner_D(l, angles) * U;
}

}  // namespace polybasis
