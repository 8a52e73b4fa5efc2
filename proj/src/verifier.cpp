#include "polybasis/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "polybasis/kernels.hpp"

namespace polybasis {
namespace {

// Rows of H stored contiguously (as columns of H^T) for the kernel dot products.
struct RowMajorBasis {
  explicit RowMajorBasis(const CMatrix& H) : Ht(H.transpose()), rows(H.rows()), cols(H.cols()) {}

  // Re(H Y) for Y^l given at y
  void evaluate(const cdouble* y, double* out) const {
    for (Eigen::Index j = 0; j < rows; ++j) {
      out[j] = kernels::re_cdotu({Ht.col(j).data(), static_cast<std::size_t>(cols)},
                                 {y, static_cast<std::size_t>(cols)});
    }
  }

  CMatrix Ht;
  Eigen::Index rows;
  Eigen::Index cols;
};

// Unlike assemble_full_H this never throws; defects show up as failed checks.
CMatrix stack_rows(const std::vector<CoeffMatrix>& blocks, int l) {
  Eigen::Index rows = 0;
  for (const CoeffMatrix& cm : blocks) rows += cm.H.rows();
  CMatrix H(rows, 2 * l + 1);
  Eigen::Index r = 0;
  for (const CoeffMatrix& cm : blocks) {
    H.middleRows(r, cm.H.rows()) = cm.H;
    r += cm.H.rows();
  }
  return H;
}

int degree_of(const CMatrix& H) { return static_cast<int>((H.cols() - 1) / 2); }

}  // namespace

Eigen::VectorXd evaluate_basis(const CMatrix& H, const Vec3& x) {
  const int l = degree_of(H);
  std::vector<cdouble> y(2 * l + 1);
  eval_sh_degree(l, x, y);
  Eigen::VectorXd out(H.rows());
  RowMajorBasis(H).evaluate(y.data(), out.data());
  return out;
}

double check_transformation(const CoeffMatrix& basis, const RealIrrep& irrep, const Group& group,
                            std::span<const Vec3> points) {
  const int l = basis.l;
  const RowMajorBasis rm(basis.H);
  std::vector<cdouble> y(2 * l + 1);
  Eigen::VectorXd here(basis.H.rows()), moved(basis.H.rows());
  double worst = 0.0;
  for (const Vec3& x : points) {
    eval_sh_degree(l, x, y);
    rm.evaluate(y.data(), here.data());
    for (std::size_t g = 0; g < group.order(); ++g) {
      eval_sh_degree(l, group.elements[g].transpose() * x, y);
      rm.evaluate(y.data(), moved.data());
      const Eigen::VectorXd rhs = irrep.matrices[g].transpose() * here;
      worst = std::max(worst, (moved - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

OrthonormalityResult check_orthonormality(const CMatrix& H, const QuadratureGrid& grid) {
  const int l = degree_of(H);
  const RowMajorBasis rm(H);
  const Eigen::Index rows = H.rows();
  RMatrix gram = RMatrix::Zero(rows, rows);
  std::vector<cdouble> y(2 * l + 1);
  Eigen::VectorXd f(rows);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    eval_sh_degree(l, grid.nodes[i], y);
    rm.evaluate(y.data(), f.data());
    for (Eigen::Index c = 0; c < rows; ++c) {
      kernels::axpy(grid.weights[i] * f[c], {f.data(), static_cast<std::size_t>(rows)},
                    {gram.col(c).data(), static_cast<std::size_t>(rows)});
    }
  }
  const RMatrix coefficient_gram = (H * H.adjoint()).real();
  OrthonormalityResult r;
  r.identity_residual = (gram - RMatrix::Identity(rows, rows)).cwiseAbs().maxCoeff();
  r.coefficient_agreement = (gram - coefficient_gram).cwiseAbs().maxCoeff();
  return r;
}

OrthonormalityResult check_orthonormality(const BasisSet& set, const QuadratureGrid& grid) {
  // one harmonic table per node, shared by every degree
  std::vector<RowMajorBasis> bases;
  std::vector<RMatrix> grams;
  std::vector<CMatrix> full;
  for (int l = 0; l <= set.l_max; ++l) {
    full.push_back(stack_rows(set.degrees[l], l));
    bases.emplace_back(full.back());
    grams.push_back(RMatrix::Zero(full.back().rows(), full.back().rows()));
  }
  std::vector<cdouble> table(static_cast<std::size_t>(set.l_max + 1) * (set.l_max + 1));
  Eigen::VectorXd f;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    eval_sh_table(set.l_max, grid.theta[i], grid.phi[i], table);
    for (int l = 0; l <= set.l_max; ++l) {
      const Eigen::Index rows = bases[l].rows;
      if (rows == 0) continue;
      f.resize(rows);
      bases[l].evaluate(table.data() + l * l, f.data());
      for (Eigen::Index c = 0; c < rows; ++c) {
        kernels::axpy(grid.weights[i] * f[c], {f.data(), static_cast<std::size_t>(rows)},
                      {grams[l].col(c).data(), static_cast<std::size_t>(rows)});
      }
    }
  }
  OrthonormalityResult r;
  for (int l = 0; l <= set.l_max; ++l) {
    const Eigen::Index rows = grams[l].rows();
    if (rows == 0) continue;
    const RMatrix coefficient_gram = (full[l] * full[l].adjoint()).real();
    r.identity_residual =
        std::max(r.identity_residual, (grams[l] - RMatrix::Identity(rows, rows)).cwiseAbs().maxCoeff());
    r.coefficient_agreement = std::max(r.coefficient_agreement, (grams[l] - coefficient_gram).cwiseAbs().maxCoeff());
  }
  return r;
}

RecoveredIrrep check_prop1_reverse(const CoeffMatrix& basis, const RealIrrep& irrep, const Group& group,
                                   const QuadratureGrid& grid) {
  const int l = basis.l;
  const Eigen::Index d = basis.H.rows();
  const RowMajorBasis rm(basis.H);
  std::vector<cdouble> y(2 * l + 1);

  std::vector<Eigen::VectorXd> values(grid.size(), Eigen::VectorXd(d));
  RMatrix normal = RMatrix::Zero(d, d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    eval_sh_degree(l, grid.nodes[i], y);
    rm.evaluate(y.data(), values[i].data());
    normal += grid.weights[i] * values[i] * values[i].transpose();
  }
  const Eigen::LDLT<RMatrix> solver(normal);

  RecoveredIrrep out;
  Eigen::VectorXd moved(d);
  for (std::size_t g = 0; g < group.order(); ++g) {
    RMatrix cross = RMatrix::Zero(d, d);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      eval_sh_degree(l, group.elements[g].transpose() * grid.nodes[i], y);
      rm.evaluate(y.data(), moved.data());
      cross += grid.weights[i] * moved * values[i].transpose();
    }
    // P(g) I = G I with G = Gamma^T; G = cross * normal^{-1}, normal symmetric
    const RMatrix G = solver.solve(cross.transpose()).transpose();
    RMatrix gamma = G.transpose();
    out.orthogonality_residual = std::max(
        out.orthogonality_residual, (gamma.transpose() * gamma - RMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
    out.match_residual = std::max(out.match_residual, (gamma - irrep.matrices[g]).cwiseAbs().maxCoeff());
    out.matrices.push_back(std::move(gamma));
  }
  return out;
}

double check_realness(const CMatrix& H, const QuadratureGrid& grid) {
  const int l = degree_of(H);
  std::vector<cdouble> y(2 * l + 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    eval_sh_degree(l, grid.nodes[i], y);
    const CVector values = H * Eigen::Map<const CVector>(y.data(), 2 * l + 1);
    worst = std::max(worst, values.imag().cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_realness(const BasisSet& set, const QuadratureGrid& grid) {
  std::vector<CMatrix> full;
  for (int l = 0; l <= set.l_max; ++l) full.push_back(stack_rows(set.degrees[l], l));
  std::vector<cdouble> table(static_cast<std::size_t>(set.l_max + 1) * (set.l_max + 1));
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    eval_sh_table(set.l_max, grid.theta[i], grid.phi[i], table);
    for (int l = 0; l <= set.l_max; ++l) {
      if (full[l].rows() == 0) continue;
      const CVector values = full[l] * Eigen::Map<const CVector>(table.data() + l * l, 2 * l + 1);
      worst = std::max(worst, values.imag().cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double span_residual(const CMatrix& H, int l, int m) {
  const CVector u = real_sh_transform(l).col(m + l);
  if (H.rows() == 0) return u.norm();
  const CVector projected = H.transpose() * (H.conjugate() * u);
  return (u - projected).norm();
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void VerificationReport::add(std::string name, double residual, double tolerance, std::string detail) {
  checks.push_back({std::move(name), residual, tolerance, residual < tolerance, std::move(detail)});
}

std::string VerificationReport::to_table() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-34s %12s %10s  %s\n", "check", "residual", "tolerance", "status");
  os << line;
  for (const CheckResult& c : checks) {
    std::snprintf(line, sizeof line, "%-34s %12.3e %10.1e  %s", c.name.c_str(), c.max_residual, c.tolerance,
                  c.passed ? "PASS" : "FAIL");
    os << line;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  return os.str();
}

VerificationReport verify_basis_set(const BasisSet& set, const VerifyOptions& options) {
  VerificationReport report;
  const Group& group = set.atlas.group;
  const double ctol = options.construction_tolerance;
  const double etol = options.end_to_end_tolerance;

  // realness verdicts and real irreps
  double indicator_residue = 0.0;
  double imag_residue = 0.0, orth = 0.0, homo = 0.0, character = 0.0;
  for (std::size_t i = 0; i < set.irreps.size(); ++i) {
    const auto& r = set.irreps[i];
    indicator_residue = std::max(indicator_residue, std::abs(r.verdict.indicator - r.verdict.rounded));
    if (!r.real) continue;
    const RealIrrep& real = *r.real;
    imag_residue = std::max(imag_residue, real.max_imag_residue);
    const auto dim = real.dim;
    for (std::size_t g = 0; g < group.order(); ++g) {
      const RMatrix& m = real.matrices[g];
      orth = std::max(orth, (m.transpose() * m - RMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff());
      character = std::max(character, std::abs(cdouble(m.trace()) - set.atlas.irreps[i].characters[g]));
      for (std::size_t h = 0; h < group.order(); ++h) {
        const int gh = group.product(static_cast<int>(g), static_cast<int>(h));
        homo = std::max(homo, (m * real.matrices[h] - real.matrices[gh]).cwiseAbs().maxCoeff());
      }
    }
  }
  report.add("indicator_rounding", indicator_residue, kIndicatorResidue);
  report.add("real_irrep_imaginary_residue", imag_residue, ctol);
  report.add("real_irrep_orthogonality", orth, ctol);
  report.add("real_irrep_homomorphism", homo, ctol);
  report.add("real_irrep_characters", character, ctol);

  // multiplicities, counts, row conditions, unitarity, span
  const bool complete = has_complete_real_basis(set);
  double count_mismatch = 0.0, survivor_mismatch = 0.0, row_condition = 0.0, unitarity = 0.0;
  double spanned = 0.0;        // worst span residual where the real blocks fill degree l
  double deficit_span = 1e300;  // weakest evidence of a gap where they do not
  std::string deficit_degrees;
  for (int l = 0; l <= set.l_max; ++l) {
    int components = 0;
    int dimension_sum = 0;
    for (std::size_t i = 0; i < set.irreps.size(); ++i) {
      const int mult = irrep_multiplicity(group, set.atlas.irreps[i], l);
      dimension_sum += set.atlas.irreps[i].dim * mult;
      if (!set.irreps[i].real) continue;
      components += set.atlas.irreps[i].dim * mult;
      int built = 0;
      for (const CoeffMatrix& cm : set.degrees[l]) built += (cm.p == static_cast<int>(i) + 1);
      survivor_mismatch = std::max(survivor_mismatch, double(std::abs(built - mult)));
    }
    count_mismatch = std::max(count_mismatch, double(std::abs(dimension_sum - (2 * l + 1))));
    if (complete) count_mismatch = std::max(count_mismatch, double(std::abs(components - (2 * l + 1))));

    const CMatrix H = stack_rows(set.degrees[l], l);
    count_mismatch = std::max(count_mismatch, double(std::abs(H.rows() - components)));
    for (const CoeffMatrix& cm : set.degrees[l]) {
      for (Eigen::Index j = 0; j < cm.H.rows(); ++j) {
        for (int m = -l; m <= l; ++m) {
          const double parity = (m % 2 == 0) ? 1.0 : -1.0;
          row_condition = std::max(row_condition, std::abs(std::conj(cm.H(j, m + l)) - parity * cm.H(j, -m + l)));
        }
      }
    }
    const Eigen::Index rows = H.rows();
    if (complete && rows != 2 * l + 1) unitarity = std::max(unitarity, 1.0);
    if (rows > 0) {
      unitarity = std::max(unitarity, (H * H.adjoint() - CMatrix::Identity(rows, rows)).cwiseAbs().maxCoeff());
    }

    double residual = 0.0;
    for (int m = -l; m <= l; ++m) residual = std::max(residual, span_residual(H, l, m));
    if (components == 2 * l + 1) {
      spanned = std::max(spanned, residual);
    } else {
      deficit_span = std::min(deficit_span, residual);
      deficit_degrees += (deficit_degrees.empty() ? "l=" : ",") + std::to_string(l);
    }
  }
  report.add("multiplicity_survivors", survivor_mismatch, 0.5, "build_basis count vs character theory");
  report.add("component_count", count_mismatch, 0.5, complete ? "sum d_p N_pl = 2l+1" : "rows match real multiplicities");
  report.add("row_realness_condition", row_condition, ctol);
  report.add("full_H_orthonormal_rows", unitarity, ctol, complete ? "square and unitary" : "rectangular");
  report.add("span_of_filled_degrees", spanned, ctol);
  if (!deficit_degrees.empty()) {
    // where complex-only irreps occur, some real harmonic must lie outside the span
    report.checks.push_back({"span_gap_of_deficit_degrees", deficit_span, kRankTolerance,
                             deficit_span > kRankTolerance, "residual must exceed tolerance at " + deficit_degrees});
  }

  // quadrature-based checks
  const QuadratureGrid grid = quadrature_grid(2 * set.l_max + 2);
  const OrthonormalityResult ortho = check_orthonormality(set, grid);
  report.add("orthonormality_quadrature", ortho.identity_residual, ctol);
  report.add("gram_quadrature_vs_coefficients", ortho.coefficient_agreement, ctol);
  report.add("pointwise_realness", check_realness(set, grid), ctol);

  // transformation law on a fixed random sample
  const auto points = sphere_sample(options.transformation_points, 0x5eed);
  double transformation = 0.0;
  for (int l = 0; l <= std::min(set.l_max, options.transformation_max_degree); ++l) {
    for (const CoeffMatrix& cm : set.degrees[l]) {
      transformation = std::max(transformation, check_transformation(cm, *set.real_irrep(cm.p), group, points));
    }
  }
  report.add("transformation_law", transformation, etol);

  // recover each real irrep from its lowest-degree basis function
  double recovered_orth = 0.0, recovered_match = 0.0;
  for (std::size_t i = 0; i < set.irreps.size(); ++i) {
    if (!set.irreps[i].real) continue;
    for (int l = 0; l <= std::min(set.l_max, options.transformation_max_degree); ++l) {
      const auto it = std::find_if(set.degrees[l].begin(), set.degrees[l].end(),
                                   [&](const CoeffMatrix& cm) { return cm.p == static_cast<int>(i) + 1; });
      if (it == set.degrees[l].end()) continue;
      const QuadratureGrid g2 = quadrature_grid(2 * l + 2);
      const RecoveredIrrep rec = check_prop1_reverse(*it, *set.irreps[i].real, group, g2);
      recovered_orth = std::max(recovered_orth, rec.orthogonality_residual);
      recovered_match = std::max(recovered_match, rec.match_residual);
      break;
    }
  }
  report.add("recovered_irrep_orthogonality", recovered_orth, etol);
  report.add("recovered_irrep_match", recovered_match, etol);
  return report;
}

}  // namespace polybasis
