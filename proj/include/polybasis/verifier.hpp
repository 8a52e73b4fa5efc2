#pragma once

#include <span>
#include <string>
#include <vector>

#include "polybasis/basis_builder.hpp"

namespace polybasis {

/// Product rule on the sphere: Gauss-Legendre in cos(theta) times a uniform
/// azimuthal grid. Integrates every spherical polynomial of degree <= `degree`.
struct QuadratureGrid {
  int degree = 0;
  std::vector<Vec3> nodes;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

QuadratureGrid quadrature_grid(int degree);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

/// Deterministic pseudo-random unit vectors.
std::vector<Vec3> sphere_sample(std::size_t count, std::uint64_t seed);

/// Values of the real basis components (H Y^l) at x; length = H.rows().
Eigen::VectorXd evaluate_basis(const CMatrix& H, const Vec3& x);

/// max |I(R_g^{-1} x) - Gamma(g)^T I(x)| over all g and points.
double check_transformation(const CoeffMatrix& basis, const RealIrrep& irrep, const Group& group,
                            std::span<const Vec3> points);

struct OrthonormalityResult {
  double identity_residual = 0.0;       // max |G_quadrature - I|
  double coefficient_agreement = 0.0;   // max |G_quadrature - G_coefficients|
};

/// Gram matrix of the rows of H (one degree) under quadrature.
OrthonormalityResult check_orthonormality(const CMatrix& H, const QuadratureGrid& grid);
/// Worst case over every degree of a basis set.
OrthonormalityResult check_orthonormality(const BasisSet& set, const QuadratureGrid& grid);

struct RecoveredIrrep {
  std::vector<RMatrix> matrices;
  double orthogonality_residual = 0.0;  // max |Gamma^T Gamma - I|
  double match_residual = 0.0;          // max |Gamma - Gamma_r|
};

/// Least-squares recovery of Gamma(g) from samples of P(g) I = Gamma(g)^T I.
RecoveredIrrep check_prop1_reverse(const CoeffMatrix& basis, const RealIrrep& irrep, const Group& group,
                                   const QuadratureGrid& grid);

/// max |Im(H Y^l)| over the grid.
double check_realness(const CMatrix& H, const QuadratureGrid& grid);
double check_realness(const BasisSet& set, const QuadratureGrid& grid);

/// Norm of the part of Z_{l,m} outside the row span of H (H with orthonormal rows).
double span_residual(const CMatrix& H, int l, int m);

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  void add(std::string name, double residual, double tolerance, std::string detail = {});
  std::string to_table() const;
};

struct VerifyOptions {
  int transformation_max_degree = 10;
  std::size_t transformation_points = 200;
  double construction_tolerance = 1e-10;
  double end_to_end_tolerance = 1e-8;
};

/// Every check over a basis set; the grid degree is 2 l_max + 2.
VerificationReport verify_basis_set(const BasisSet& set, const VerifyOptions& options = {});

}  // namespace polybasis
