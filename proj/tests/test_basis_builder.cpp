#include <doctest.h>

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "polybasis/basis_builder.hpp"

using namespace polybasis;

namespace {

// Largest sine of the principal angles between the row spaces of two
// matrices with orthonormal rows.
double max_principal_sine(const CMatrix& a, const CMatrix& b) {
  const CMatrix residual = b - (b * a.adjoint()) * a;
  Eigen::JacobiSVD<CMatrix> svd(residual);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

CMatrix rows_of(const std::vector<CoeffMatrix>& blocks, int p, int l) {
  CMatrix out(0, 2 * l + 1);
  for (const CoeffMatrix& cm : blocks) {
    if (cm.p != p) continue;
    CMatrix grown(out.rows() + cm.H.rows(), out.cols());
    grown << out, cm.H;
    out = std::move(grown);
  }
  return out;
}

}  // namespace

TEST_CASE("two projection routes agree") {
  for (GroupName name : {GroupName::T, GroupName::O, GroupName::I}) {
    const GroupAtlas atlas = make_atlas(name);
    const auto irreps = solve_real_irreps(atlas, 5);
    for (int l : {0, 3, 7}) {
      const ProjectionContext ctx(atlas.group, l);
      for (const auto& r : irreps) {
        if (!r.real) continue;
        for (int m = -l; m <= l; m += std::max(1, l)) {
          for (int k = 1; k <= r.real->dim; ++k) {
            const CMatrix a = projection_coefficients(ctx, *r.real, m, k);
            const CMatrix b = projection_coefficients_via_product(ctx, *r.real, m, k);
            CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("projection input validation") {
  const GroupAtlas atlas = make_atlas(GroupName::O);
  const auto irreps = solve_real_irreps(atlas, 5);
  const ProjectionContext ctx(atlas.group, 2);
  CHECK_THROWS_AS(projection_coefficients(ctx, *irreps[0].real, 3, 1), Error);
  CHECK_THROWS_AS(projection_coefficients(ctx, *irreps[0].real, 0, 2), Error);
  CHECK_THROWS_AS(ProjectionContext(atlas.group, 46), Error);
}

TEST_CASE("degree zero gives the constant") {
  for (GroupName name : {GroupName::T, GroupName::O, GroupName::I}) {
    const BasisSet set = build_basis_set(name, 0, 1);
    REQUIRE(set.degrees.size() == 1);
    REQUIRE(set.degrees[0].size() == 1);
    const CoeffMatrix& cm = set.degrees[0][0];
    CHECK(cm.p == 1);
    CHECK(cm.n == 1);
    CHECK(std::abs(cm.H(0, 0) - cdouble(1.0)) < 1e-12);
  }
}

TEST_CASE("block structure at low degree") {
  const BasisSet oct = build_basis_set(GroupName::O, 2, 1);
  REQUIRE(oct.degrees[2].size() == 2);
  CHECK(oct.degrees[2][0].p == 3);
  CHECK(oct.degrees[2][0].H.rows() == 2);
  CHECK(oct.degrees[2][1].p == 5);
  CHECK(oct.degrees[2][1].H.rows() == 3);

  const BasisSet ico = build_basis_set(GroupName::I, 12, 1);
  REQUIRE(ico.degrees[1].size() == 1);
  CHECK(ico.degrees[1][0].p == 2);
  for (int l : {6, 10, 12}) {
    int trivial = 0;
    for (const CoeffMatrix& cm : ico.degrees[l]) trivial += cm.p == 1;
    CHECK(trivial == 1);
  }

  const BasisSet tet = build_basis_set(GroupName::T, 2, 1);
  REQUIRE(tet.degrees[1].size() == 1);
  CHECK(tet.degrees[1][0].p == 4);
  // at l=2 only the 3-dimensional block is real
  REQUIRE(tet.degrees[2].size() == 1);
  CHECK(tet.degrees[2][0].p == 4);
}

TEST_CASE("full coefficient matrices") {
  for (GroupName name : {GroupName::O, GroupName::I}) {
    const BasisSet set = build_basis_set(name, 15, 1);
    CHECK(has_complete_real_basis(set));
    for (int l = 0; l <= 15; ++l) {
      const CMatrix H = assemble_full_H(set, l);
      const int n = 2 * l + 1;
      REQUIRE(H.rows() == n);
      CHECK((H * H.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((H.adjoint() * H - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(realize_basis_row_condition(H));
    }
  }
  const BasisSet tet = build_basis_set(GroupName::T, 15, 1);
  CHECK_FALSE(has_complete_real_basis(tet));
  for (int l = 1; l <= 15; ++l) {
    const CMatrix H = assemble_full_H(tet, l);
    CHECK(H.rows() <= 2 * l + 1);
    CHECK((H * H.adjoint() - CMatrix::Identity(H.rows(), H.rows())).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(assemble_full_H(tet, 1).rows() == 3);
  CHECK(assemble_full_H(tet, 2).rows() == 3);
}

TEST_CASE("block rows follow p, n, j order") {
  const BasisSet set = build_basis_set(GroupName::I, 15, 1);
  for (int l = 0; l <= 15; ++l) {
    for (std::size_t i = 1; i < set.degrees[l].size(); ++i) {
      const CoeffMatrix& a = set.degrees[l][i - 1];
      const CoeffMatrix& b = set.degrees[l][i];
      CHECK((a.p < b.p || (a.p == b.p && b.n == a.n + 1)));
    }
  }
}

TEST_CASE("realness row condition") {
  CMatrix one(1, 1);
  one << 1.0;
  CHECK(realize_basis_row_condition(one));
  CMatrix y11 = CMatrix::Zero(1, 3);
  y11(0, 2) = 1.0;
  CHECK_FALSE(realize_basis_row_condition(y11));
  // Z_{1,1} = (Y_{1,-1} - Y_{1,1}) / sqrt 2 is real
  CMatrix z11 = CMatrix::Zero(1, 3);
  z11(0, 0) = 1.0 / std::sqrt(2.0);
  z11(0, 2) = -1.0 / std::sqrt(2.0);
  CHECK(realize_basis_row_condition(z11));
}

TEST_CASE("non-orthonormal rows are reported with their block") {
  BasisSet set = build_basis_set(GroupName::O, 4, 1);
  set.degrees[4][1].H(0, 0) *= -1.0;
  const int p = set.degrees[4][1].p, n = set.degrees[4][1].n;
  try {
    assemble_full_H(set, 4);
    FAIL("expected NumericalFailure");
  } catch (const NumericalFailure& e) {
    const std::string what = e.what();
    CHECK(what.find("p=" + std::to_string(p)) != std::string::npos);
    CHECK(what.find("n=" + std::to_string(n)) != std::string::npos);
  }
}

TEST_CASE("a wrong multiplicity is a hard failure") {
  const GroupAtlas atlas = make_atlas(GroupName::I);
  const auto irreps = solve_real_irreps(atlas, 1);
  const ProjectionContext ctx(atlas.group, 6);
  CHECK(build_basis(ctx, *irreps[0].real, 1).size() == 1);
  CHECK_THROWS_AS(build_basis(ctx, *irreps[0].real, 2), NumericalFailure);
  CHECK(build_basis(ctx, *irreps[1].real, 0).empty());
}

TEST_CASE("gauge robustness across seeds") {
  for (GroupName name : {GroupName::T, GroupName::O, GroupName::I}) {
    const BasisSet a = build_basis_set(name, 12, 1);
    const BasisSet b = build_basis_set(name, 12, 987654321);
    for (int l = 0; l <= 12; ++l) {
      REQUIRE(a.degrees[l].size() == b.degrees[l].size());
      for (std::size_t p = 1; p <= a.irreps.size(); ++p) {
        const CMatrix ra = rows_of(a.degrees[l], static_cast<int>(p), l);
        const CMatrix rb = rows_of(b.degrees[l], static_cast<int>(p), l);
        REQUIRE(ra.rows() == rb.rows());
        if (ra.rows() == 0) continue;
        CHECK(max_principal_sine(ra, rb) < 1e-8);
        CHECK(max_principal_sine(rb, ra) < 1e-8);
      }
    }
  }
}
