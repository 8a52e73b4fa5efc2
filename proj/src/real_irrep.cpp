#include "polybasis/real_irrep.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace polybasis {
namespace {

constexpr int kMaxDraws = 16;

bool is_real(const Irrep& irrep) {
  for (const CMatrix& m : irrep.matrices) {
    if (m.imag().cwiseAbs().maxCoeff() > kRealnessTruncation) return false;
  }
  return true;
}

std::mt19937_64 make_engine(std::uint64_t seed, int p) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(p)};
  return std::mt19937_64(seq);
}

}  // namespace

RealnessVerdict frobenius_schur(const Group& group, const Irrep& irrep) {
  const int n = static_cast<int>(group.order());
  cdouble via_square = 0.0;
  cdouble via_power = 0.0;
  for (int g = 0; g < n; ++g) {
    via_square += irrep.characters[group.product(g, g)];
    via_power += irrep.characters[g] * irrep.characters[g];
  }
  via_square /= static_cast<double>(n);
  via_power /= static_cast<double>(n);

  RealnessVerdict v;
  v.p = irrep.p;
  v.indicator = via_square.real();
  v.rounded = static_cast<int>(std::lround(v.indicator));
  if (std::abs(via_square - cdouble(v.rounded, 0.0)) > kIndicatorResidue) {
    throw CorruptedIrrep("Frobenius-Schur indicator is not an integer for p=" + std::to_string(irrep.p));
  }
  // sum chi(g)^2 / N is 1 iff chi is real-valued, so it matches the
  // indicator except in the quaternionic case where it must be 1.
  const cdouble expected = v.rounded == -1 ? cdouble(1.0) : via_square;
  if (std::abs(via_power - expected) > kHomomorphismTolerance) {
    throw CorruptedIrrep("indicator forms disagree for p=" + std::to_string(irrep.p));
  }
  v.potentially_real = (v.rounded == 1);
  return v;
}

ConeigenProblem build_coneigen_problem(const Irrep& irrep, std::uint64_t seed) {
  const int d = irrep.dim;
  auto engine = make_engine(seed, irrep.p);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int attempt = 1; attempt <= kMaxDraws; ++attempt) {
    CMatrix A(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        const double re = unit(engine);
        const double im = unit(engine);
        A(i, j) = A(j, i) = cdouble(re, im);
      }
    }
    CMatrix Z = CMatrix::Zero(d, d);
    for (const CMatrix& G : irrep.matrices) Z += G * A * G.transpose();
    Z /= static_cast<double>(irrep.matrices.size());
    if (Z.norm() < 1e-6) continue;

    const CMatrix ZZ = Z.conjugate() * Z;
    const double cz = ZZ.trace().real() / d;
    if (cz <= 0.0 || (ZZ - cz * CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8 * cz) {
      throw CorruptedIrrep("conj(Z) Z is not a positive multiple of the identity for p=" +
                           std::to_string(irrep.p));
    }

    ConeigenProblem problem;
    problem.C = Z / std::sqrt(cz);
    problem.C = 0.5 * (problem.C + problem.C.transpose()).eval();
    problem.seed = seed;
    problem.attempts = attempt;
    problem.scale = cz;
    const RMatrix CR = problem.C.real();
    const RMatrix CI = problem.C.imag();
    problem.B.resize(2 * d, 2 * d);
    problem.B << CR, CI,
                 CI, -CR;
    return problem;
  }
  throw NumericalFailure("could not draw a non-degenerate A for p=" + std::to_string(irrep.p));
}

CMatrix takagi_via_real_eig(const ConeigenProblem& problem) {
  const Eigen::Index d = problem.C.rows();
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(problem.B);
  if (eig.info() != Eigen::Success) throw NumericalFailure("eigendecomposition of B failed");

  const auto& values = eig.eigenvalues();
  std::vector<Eigen::Index> plus;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - 1.0) < kPlusOneTolerance) plus.push_back(i);
  }
  if (static_cast<Eigen::Index>(plus.size()) != d) {
    throw NumericalFailure("B has " + std::to_string(plus.size()) + " eigenvalues at +1, expected " +
                           std::to_string(d) + "; C is not a valid symmetric unitary intertwiner");
  }

  CMatrix S(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const auto v = eig.eigenvectors().col(plus[k]);
    for (Eigen::Index i = 0; i < d; ++i) S(i, k) = cdouble(v[i], v[d + i]);  // x - i y, stacked [x; -y]
  }

  const double unitarity = (S.adjoint() * S - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  const double factor = (S * S.transpose() - problem.C).cwiseAbs().maxCoeff();
  if (unitarity > kTakagiTolerance || factor > kTakagiTolerance) {
    throw NumericalFailure("Takagi factor misses tolerance (unitarity " + std::to_string(unitarity) +
                           ", S S^T - C " + std::to_string(factor) + ")");
  }
  return S;
}

RealIrrep realify_irrep(const Irrep& irrep, const CMatrix& S, std::uint64_t seed) {
  RealIrrep out;
  out.p = irrep.p;
  out.dim = irrep.dim;
  out.S = S;
  out.seed = seed;
  for (const CMatrix& G : irrep.matrices) {
    const CMatrix R = S.adjoint() * G * S;
    const double residue = R.imag().cwiseAbs().maxCoeff();
    out.max_imag_residue = std::max(out.max_imag_residue, residue);
    if (residue > kRealnessFailure) {
      throw NumericalFailure("S^H Gamma S has imaginary residue " + std::to_string(residue) +
                             " for p=" + std::to_string(irrep.p));
    }
    out.matrices.push_back(R.real());
  }
  return out;
}

RealIrrepResult solve_real_irrep(const Group& group, const Irrep& irrep, std::uint64_t seed) {
  RealIrrepResult result;
  result.verdict = frobenius_schur(group, irrep);
  if (!result.verdict.potentially_real) return result;

  if (irrep.dim == 1 && is_real(irrep)) {
    result.real = realify_irrep(irrep, CMatrix::Identity(1, 1), seed);
    return result;
  }

  std::string last_error;
  for (int retry = 0; retry < kMaxDraws; ++retry) {
    try {
      const ConeigenProblem problem = build_coneigen_problem(irrep, seed + static_cast<std::uint64_t>(retry) * 0x9e3779b97f4a7c15ull);
      const CMatrix S = takagi_via_real_eig(problem);
      result.real = realify_irrep(irrep, S, seed);
      return result;
    } catch (const NumericalFailure& e) {
      last_error = e.what();
    }
  }
  throw NumericalFailure("real irrep construction failed for p=" + std::to_string(irrep.p) + ": " + last_error);
}

std::vector<RealIrrepResult> solve_real_irreps(const GroupAtlas& atlas, std::uint64_t seed) {
  std::vector<RealIrrepResult> out;
  for (const Irrep& irrep : atlas.irreps) out.push_back(solve_real_irrep(atlas.group, irrep, seed));
  return out;
}

}  // namespace polybasis
