#pragma once

#include <span>
#include <vector>

#include "polybasis/types.hpp"

namespace polybasis {

/// z-y-z Euler angles of the active rotation R = Rz(alpha) Ry(beta) Rz(gamma).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;  // [0, pi]
  double gamma = 0.0;
};

inline constexpr int kMaxDegree = 45;
inline constexpr double kGimbalTolerance = 1e-9;

/// Throws Error if R(3,3) lies outside [-1 - 1e-12, 1 + 1e-12].
EulerAngles euler_from_rotation(const Mat3& R);
Mat3 rotation_from_euler(const EulerAngles& angles);

/// Small Wigner d^l(beta), rows m' and columns m in -l..l.
///
/// Evaluated as exp(-i beta J_y) through the spectral decomposition of J_y,
/// which stays accurate to ~1e-13 through l = 45. The factorial-sum form
/// below suffers cancellation beyond l ~ 25.
RMatrix wigner_d_small(int l, double beta);

/// Explicit factorial-sum definition of d^l(beta), with log-factorials.
RMatrix wigner_d_small_sum(int l, double beta);

/// D^l_{m',m} = exp(-i m' alpha) d^l_{m',m}(beta) exp(-i m gamma).
/// With P(g) f(x) = f(R_g^{-1} x): P(g) Y_{l,m} = sum_{m'} D_{m',m}(g) Y_{l,m'}.
CMatrix wigner_D(int l, const EulerAngles& angles);

/// U^l with Z^l = (U^l)^T Y^l real. Column m holds the Y-coefficients of Z_{l,m}.
CMatrix real_sh_transform(int l);

/// M^l = D^l U^l from the three-case entry formula applied to D.
CMatrix real_rotation_M(const CMatrix& D);
CMatrix real_rotation_M(int l, const EulerAngles& angles);

/// W^l = (U^l)^{-1} D^l U^l; real for every rotation.
CMatrix real_rotation_W(int l, const EulerAngles& angles);

// Spherical harmonics with the Condon-Shortley phase; theta polar, phi azimuth.

cdouble eval_complex_sh(int l, int m, double theta, double phi);
double eval_real_sh(int l, int m, double theta, double phi);

/// Y_{l,m} for 0 <= l <= lmax at one point, stored at index l*l + l + m.
void eval_sh_table(int lmax, double theta, double phi, std::span<cdouble> out);
std::vector<cdouble> eval_sh_table(int lmax, double theta, double phi);

/// Y^l at a point given as a (not necessarily unit) Cartesian vector.
void eval_sh_degree(int l, const Vec3& x, std::span<cdouble> out);

/// (theta, phi) of a nonzero vector.
std::pair<double, double> spherical_angles(const Vec3& x);

}  // namespace polybasis
