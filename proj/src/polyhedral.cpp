// Generator matrices and irrep generator images for T, O and I.
//
// Every constant is an exact expression in sqrt(2), sqrt(5) and the golden
// ratio. Each generator pair satisfies a von Dyck presentation:
//   T: a^2 = b^3 = (ab)^3 = e      (a = C2 about z, b = C3 about [111])
//   O: a^4 = b^3 = (ab)^2 = e      (a = C4 about z, b = C3 about [111])
//   I: a^5 = b^2 = (ab)^3 = e      (a = C5 about z, b = C2 about (1, 0, phi))
// so any images satisfying the same relations extend to a homomorphism.
// The icosahedron sits with the z axis through two opposite vertices and
// one edge in the xz plane.

#include <cmath>
#include <numbers>

#include "polybasis/group_atlas.hpp"

namespace polybasis {
namespace {

using std::numbers::sqrt2;
constexpr double kPhi = std::numbers::phi;
constexpr cdouble kI{0.0, 1.0};

Mat3 half_turn(const Vec3& axis) {
  const Vec3 n = axis.normalized();
  return 2.0 * n * n.transpose() - Mat3::Identity();
}

Mat3 c3_111() {
  Mat3 R;
  R << 0, 0, 1,
       1, 0, 0,
       0, 1, 0;
  return R;
}

Mat3 c5_z() {
  const double c = 1.0 / (2.0 * kPhi);              // cos(2 pi / 5)
  const double s = std::sqrt((5.0 + std::sqrt(5.0)) / 8.0);  // sin(2 pi / 5)
  Mat3 R;
  R << c, -s, 0,
       s,  c, 0,
       0,  0, 1;
  return R;
}

CMatrix scalar_image(cdouble z) { return CMatrix::Constant(1, 1, z); }

// Unitary change of basis taking a real 3-D rotation to a complex spherical form.
CMatrix spherical_basis(bool conjugate_row) {
  const double r = 1.0 / sqrt2;
  const cdouble s = conjugate_row ? kI : -kI;
  CMatrix V(3, 3);
  V << -r,    0.0, -r,
       s * r, 0.0, -s * r,
       0.0,   1.0, 0.0;
  return V;
}

CMatrix complexify(const Mat3& R, const CMatrix& V) {
  return V.adjoint() * R.cast<cdouble>() * V;
}

// Permutation matrix with P e_i = e_{perm[i]}, written in the Fourier basis
// of the sum-zero subspace. This drops the trivial summand.
CMatrix reduced_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  CMatrix P = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) P(perm[i], i) = 1.0;
  CMatrix F(n, n - 1);
  for (int j = 0; j < n; ++j) {
    for (int k = 1; k < n; ++k) {
      F(j, k - 1) = std::polar(1.0 / std::sqrt(double(n)), 2.0 * std::numbers::pi * j * k / n);
    }
  }
  return F.adjoint() * P * F;
}

}  // namespace

std::vector<Mat3> polyhedral_generators(GroupName name) {
  switch (name) {
    case GroupName::T:
      return {Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal(), c3_111()};
    case GroupName::O: {
      Mat3 c4;
      c4 << 0, -1, 0,
            1,  0, 0,
            0,  0, 1;
      return {c4, c3_111()};
    }
    case GroupName::I:
      return {c5_z(), half_turn(Vec3(1.0, 0.0, kPhi))};
  }
  throw Error("unknown group");
}

std::vector<std::vector<CMatrix>> polyhedral_generator_images(GroupName name) {
  const auto gens = polyhedral_generators(name);
  const CMatrix V = spherical_basis(false);
  const cdouble w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

  switch (name) {
    case GroupName::T:
      return {
          {scalar_image(1.0), scalar_image(1.0)},
          {scalar_image(1.0), scalar_image(w)},
          {scalar_image(1.0), scalar_image(w * w)},
          {complexify(gens[0], V), complexify(gens[1], V)},
      };
    case GroupName::O: {
      CMatrix swap(2, 2);
      swap << 0.0, 1.0,
              1.0, 0.0;
      CMatrix cycle = CMatrix::Zero(2, 2);
      cycle(0, 0) = w;
      cycle(1, 1) = w * w;
      return {
          {scalar_image(1.0), scalar_image(1.0)},
          {scalar_image(-1.0), scalar_image(1.0)},
          {swap, cycle},
          {complexify(gens[0], V), complexify(gens[1], V)},
          {-complexify(gens[0], V), complexify(gens[1], V)},
      };
    }
    case GroupName::I: {
      // Galois conjugate: a -> a^2 (rotation by 4 pi / 5), b -> C2 about (-phi, 0, 1).
      const Mat3 a2 = gens[0] * gens[0];
      const Mat3 b2 = half_turn(Vec3(-kPhi, 0.0, 1.0));
      const CMatrix V3 = spherical_basis(true);
      return {
          {scalar_image(1.0), scalar_image(1.0)},
          {complexify(gens[0], V), complexify(gens[1], V)},
          {complexify(a2, V3), complexify(b2, V3)},
          // A5 acting on five points, minus the trivial summand
          {reduced_permutation({1, 2, 3, 4, 0}), reduced_permutation({0, 2, 1, 4, 3})},
          // PSL(2,5) on the six points of the projective line over F5, minus the trivial summand
          {reduced_permutation({1, 2, 3, 4, 0, 5}), reduced_permutation({5, 4, 2, 3, 1, 0})},
      };
    }
  }
  throw Error("unknown group");
}

}  // namespace polybasis
