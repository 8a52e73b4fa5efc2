#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polybasis/group_atlas.hpp"
#include "polybasis/real_irrep.hpp"
#include "polybasis/wigner.hpp"

namespace polybasis {

/// One d_p-dimensional real basis function I_{p;l,n} = H Y^l.
/// H is d_p x (2l+1); row j holds the Y-coefficients of component j,
/// columns are m' = -l..l. Rows are orthonormal.
struct CoeffMatrix {
  int p = 0;
  int l = 0;
  int n = 0;  // 1-based within (p, l)
  CMatrix H;
};

/// All basis functions of one group up to l_max.
struct BasisSet {
  GroupAtlas atlas;
  int l_max = 0;
  std::uint64_t seed = 0;
  std::vector<RealIrrepResult> irreps;         // indexed by p - 1
  std::vector<std::vector<CoeffMatrix>> degrees;  // indexed by l; p ascending, n ascending

  GroupName group_name() const { return *atlas.group.name; }
  const RealIrrep* real_irrep(int p) const;
};

inline constexpr double kRankTolerance = 1e-6;
inline constexpr double kConstructionTolerance = 1e-10;

/// Wigner data of every group element for one degree.
class ProjectionContext {
 public:
  ProjectionContext(const Group& group, int l);

  const Group& group() const { return *group_; }
  int degree() const { return l_; }
  const EulerAngles& angles(int g) const { return angles_[g]; }
  const CMatrix& D(int g) const { return D_[g]; }
  /// M^l(g) from the three-case formula.
  const CMatrix& M(int g) const { return M_[g]; }

 private:
  const Group* group_;
  int l_;
  std::vector<EulerAngles> angles_;
  std::vector<CMatrix> D_;
  std::vector<CMatrix> M_;
};

/// Projection coefficients: d_p x (2l+1) matrix with row j = (d_p / N) sum_g Gamma_r(g)_{j,k} M^l_{., m}(g).
/// k is 1-based, -l <= m <= l.
CMatrix projection_coefficients(const ProjectionContext& ctx, const RealIrrep& irrep, int m, int k);

/// Same quantity computed from the product D^l U^l instead of the three-case entries.
CMatrix projection_coefficients_via_product(const ProjectionContext& ctx, const RealIrrep& irrep, int m, int k);

/// Projections of every Z_{l,m} for fixed column k; element [m + l] is the d_p x (2l+1) block.
std::vector<CMatrix> projector_sweep(const ProjectionContext& ctx, const RealIrrep& irrep, int k);

/// Gram-Schmidt over projected real harmonics until `multiplicity` blocks survive.
/// Throws NumericalFailure if the survivor count differs from `multiplicity`.
std::vector<CoeffMatrix> build_basis(const ProjectionContext& ctx, const RealIrrep& irrep, int multiplicity);

/// Blocks for every potentially-real irrep at degree l, p ascending.
std::vector<CoeffMatrix> build_degree(const GroupAtlas& atlas, const std::vector<RealIrrepResult>& irreps,
                                      int l);

BasisSet build_basis_set(GroupName name, int l_max, std::uint64_t seed);

/// Rows of all blocks, ordered p, n, j ascending. Throws NumericalFailure
/// naming the offending (p, n) when the rows are not orthonormal to 1e-10
/// (square groups additionally must give a (2l+1) x (2l+1) matrix).
CMatrix assemble_full_H(const std::vector<CoeffMatrix>& blocks, int l, bool expect_square);
CMatrix assemble_full_H(const BasisSet& set, int l);

/// True when every row c satisfies conj(c_m) = (-1)^m c_{-m}, i.e. H Y^l is real.
bool realize_basis_row_condition(const CMatrix& H, double tol = kConstructionTolerance);

/// Whether a group has real irreps for every p (O and I) so that H^l is square.
bool has_complete_real_basis(const BasisSet& set);

}  // namespace polybasis
