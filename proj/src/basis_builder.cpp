#include "polybasis/basis_builder.hpp"

#include <cmath>
#include <span>
#include <string>

#include "polybasis/kernels.hpp"

namespace polybasis {
namespace {

std::span<const double> as_doubles(const CMatrix& m) {
  return {reinterpret_cast<const double*>(m.data()), static_cast<std::size_t>(2 * m.size())};
}

std::span<double> as_doubles(CMatrix& m) {
  return {reinterpret_cast<double*>(m.data()), static_cast<std::size_t>(2 * m.size())};
}

cdouble frobenius_inner(const CMatrix& a, const CMatrix& b) {
  return kernels::cdotc({a.data(), static_cast<std::size_t>(a.size())},
                        {b.data(), static_cast<std::size_t>(b.size())});
}

// Flip the block so its first significant coefficient leans positive.
void fix_sign(CMatrix& H) {
  for (Eigen::Index c = 0; c < H.cols(); ++c) {
    const cdouble z = H(0, c);
    if (std::abs(z) < 1e-8) continue;
    const double lean = std::abs(z.real()) >= std::abs(z.imag()) ? z.real() : z.imag();
    if (lean < 0.0) H = -H;
    return;
  }
}

// Rebuilds a block from its first row with the projectors P_{j,1}. Exact blocks are
// fixed points; leakage into other irreps that Gram-Schmidt amplified is removed.
CMatrix reproject(const ProjectionContext& ctx, const RealIrrep& irrep, const CMatrix& block) {
  const int order = static_cast<int>(ctx.group().order());
  // nearest real function: average with c_m -> (-1)^m conj(c_{-m})
  const int l = ctx.degree();
  CVector first(block.cols());
  for (int m = -l; m <= l; ++m) {
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    first[m + l] = 0.5 * (block(0, m + l) + parity * std::conj(block(0, -m + l)));
  }
  CMatrix out = CMatrix::Zero(block.rows(), block.cols());
  for (int g = 0; g < order; ++g) {
    const CVector moved = ctx.D(g) * first;
    for (Eigen::Index j = 0; j < block.rows(); ++j) {
      const double w = irrep.matrices[g](j, 0);
      if (w != 0.0) out.row(j) += w * moved.transpose();
    }
  }
  return out * (double(irrep.dim) / double(order));
}

void orthonormalize(std::vector<CMatrix>& blocks, int d) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t q = 0; q < i; ++q) blocks[i] -= (frobenius_inner(blocks[q], blocks[i]) / double(d)) * blocks[q];
    }
    blocks[i] /= blocks[i].norm() / std::sqrt(double(d));
  }
}

}  // namespace

const RealIrrep* BasisSet::real_irrep(int p) const {
  if (p < 1 || p > static_cast<int>(irreps.size())) return nullptr;
  const auto& r = irreps[p - 1].real;
  return r ? &*r : nullptr;
}

ProjectionContext::ProjectionContext(const Group& group, int l) : group_(&group), l_(l) {
  if (l < 0 || l > kMaxDegree) throw Error("degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
  const int n = 2 * l + 1;
  std::vector<std::pair<double, RMatrix>> small_d;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const EulerAngles a = euler_from_rotation(group.elements[g]);
    angles_.push_back(a);

    const RMatrix* d = nullptr;
    for (const auto& [beta, mat] : small_d) {
      if (std::abs(beta - a.beta) < 1e-14) d = &mat;
    }
    if (d == nullptr) {
      small_d.emplace_back(a.beta, wigner_d_small(l, a.beta));
      d = &small_d.back().second;
    }
    CMatrix D(n, n);
    for (int mp = -l; mp <= l; ++mp) {
      for (int m = -l; m <= l; ++m) {
        D(mp + l, m + l) = std::polar(1.0, -mp * a.alpha - m * a.gamma) * (*d)(mp + l, m + l);
      }
    }
    M_.push_back(real_rotation_M(D));
    D_.push_back(std::move(D));
  }
}

std::vector<CMatrix> projector_sweep(const ProjectionContext& ctx, const RealIrrep& irrep, int k) {
  const int l = ctx.degree();
  const int n = 2 * l + 1;
  const int d = irrep.dim;
  if (k < 1 || k > d) throw Error("projector column k out of range");
  const int order = static_cast<int>(ctx.group().order());
  const double scale = double(d) / double(order);

  std::vector<CMatrix> blocks(n, CMatrix::Zero(d, n));
  CMatrix acc(n, n);
  for (int j = 0; j < d; ++j) {
    acc.setZero();
    for (int g = 0; g < order; ++g) {
      const double w = irrep.matrices[g](j, k - 1);
      if (w == 0.0) continue;
      kernels::axpy(w, as_doubles(ctx.M(g)), as_doubles(acc));
    }
    // column m of acc is the image of Z_{l,m}
    for (int m = 0; m < n; ++m) blocks[m].row(j) = scale * acc.col(m).transpose();
  }
  return blocks;
}

CMatrix projection_coefficients(const ProjectionContext& ctx, const RealIrrep& irrep, int m, int k) {
  const int l = ctx.degree();
  if (std::abs(m) > l) throw Error("order m out of range");
  return projector_sweep(ctx, irrep, k)[m + l];
}

CMatrix projection_coefficients_via_product(const ProjectionContext& ctx, const RealIrrep& irrep, int m,
                                            int k) {
  const int l = ctx.degree();
  if (std::abs(m) > l) throw Error("order m out of range");
  if (k < 1 || k > irrep.dim) throw Error("projector column k out of range");
  const int n = 2 * l + 1;
  const int order = static_cast<int>(ctx.group().order());
  const CMatrix U = real_sh_transform(l);
  CMatrix out = CMatrix::Zero(irrep.dim, n);
  for (int g = 0; g < order; ++g) {
    const CVector column = ctx.D(g) * U.col(m + l);
    for (int j = 0; j < irrep.dim; ++j) out.row(j) += irrep.matrices[g](j, k - 1) * column.transpose();
  }
  return out * (double(irrep.dim) / double(order));
}

std::vector<CoeffMatrix> build_basis(const ProjectionContext& ctx, const RealIrrep& irrep, int multiplicity) {
  const int l = ctx.degree();
  const int d = irrep.dim;
  std::vector<CMatrix> accepted;
  if (multiplicity == 0) return {};

  for (int k = 1; k <= d && static_cast<int>(accepted.size()) < multiplicity; ++k) {
    for (CMatrix& candidate : projector_sweep(ctx, irrep, k)) {
      const double c = candidate.row(k - 1).norm();
      if (c < kRankTolerance) continue;
      candidate /= c;
      // two passes of modified Gram-Schmidt
      for (int pass = 0; pass < 2; ++pass) {
        for (const CMatrix& q : accepted) candidate -= (frobenius_inner(q, candidate) / double(d)) * q;
      }
      const double residual = candidate.norm() / std::sqrt(double(d));
      if (residual < kRankTolerance) continue;
      candidate /= residual;
      accepted.push_back(std::move(candidate));
    }
  }
  if (static_cast<int>(accepted.size()) != multiplicity) {
    throw NumericalFailure("Gram-Schmidt kept " + std::to_string(accepted.size()) + " functions for p=" +
                           std::to_string(irrep.p) + ", l=" + std::to_string(l) + "; character theory gives " +
                           std::to_string(multiplicity));
  }
  for (CMatrix& block : accepted) block = reproject(ctx, irrep, block);
  orthonormalize(accepted, d);

  std::vector<CoeffMatrix> out;
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    CoeffMatrix cm{irrep.p, l, static_cast<int>(i) + 1, std::move(accepted[i])};
    fix_sign(cm.H);
    out.push_back(std::move(cm));
  }
  return out;
}

std::vector<CoeffMatrix> build_degree(const GroupAtlas& atlas, const std::vector<RealIrrepResult>& irreps,
                                      int l) {
  const ProjectionContext ctx(atlas.group, l);
  std::vector<CoeffMatrix> blocks;
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    if (!irreps[i].real) continue;
    const int mult = irrep_multiplicity(atlas.group, atlas.irreps[i], l);
    for (CoeffMatrix& cm : build_basis(ctx, *irreps[i].real, mult)) blocks.push_back(std::move(cm));
  }
  return blocks;
}

BasisSet build_basis_set(GroupName name, int l_max, std::uint64_t seed) {
  if (l_max < 0 || l_max > kMaxDegree) throw Error("l_max must lie in [0, " + std::to_string(kMaxDegree) + "]");
  BasisSet set;
  set.atlas = make_atlas(name);
  set.l_max = l_max;
  set.seed = seed;
  set.irreps = solve_real_irreps(set.atlas, seed);
  for (int l = 0; l <= l_max; ++l) set.degrees.push_back(build_degree(set.atlas, set.irreps, l));
  return set;
}

bool has_complete_real_basis(const BasisSet& set) {
  for (const auto& r : set.irreps) if (!r.real) return false;
  return true;
}

CMatrix assemble_full_H(const std::vector<CoeffMatrix>& blocks, int l, bool expect_square) {
  const int n = 2 * l + 1;
  int rows = 0;
  for (const CoeffMatrix& cm : blocks) rows += static_cast<int>(cm.H.rows());
  CMatrix H(rows, n);
  std::vector<std::pair<int, int>> owner;
  int r = 0;
  for (const CoeffMatrix& cm : blocks) {
    H.middleRows(r, cm.H.rows()) = cm.H;
    for (Eigen::Index j = 0; j < cm.H.rows(); ++j) owner.emplace_back(cm.p, cm.n);
    r += static_cast<int>(cm.H.rows());
  }
  if (expect_square && rows != n) {
    throw NumericalFailure("H^" + std::to_string(l) + " has " + std::to_string(rows) + " rows, expected " +
                           std::to_string(n));
  }
  const CMatrix gram = H * H.adjoint() - CMatrix::Identity(rows, rows);
  for (int i = 0; i < rows; ++i) {
    Eigen::Index j = 0;
    if (gram.row(i).cwiseAbs().maxCoeff(&j) > kConstructionTolerance) {
      const auto name = [&](Eigen::Index k) {
        return "(p=" + std::to_string(owner[k].first) + ", n=" + std::to_string(owner[k].second) + ")";
      };
      throw NumericalFailure("H^" + std::to_string(l) + " rows of blocks " + name(i) + " and " + name(j) +
                             " are not orthonormal");
    }
  }
  return H;
}

CMatrix assemble_full_H(const BasisSet& set, int l) {
  return assemble_full_H(set.degrees.at(l), l, has_complete_real_basis(set));
}

bool realize_basis_row_condition(const CMatrix& H, double tol) {
  const int n = static_cast<int>(H.cols());
  const int l = (n - 1) / 2;
  for (Eigen::Index j = 0; j < H.rows(); ++j) {
    for (int m = -l; m <= l; ++m) {
      const double parity = (m % 2 == 0) ? 1.0 : -1.0;
      if (std::abs(std::conj(H(j, m + l)) - parity * H(j, -m + l)) > tol) return false;
    }
  }
  return true;
}

}  // namespace polybasis
