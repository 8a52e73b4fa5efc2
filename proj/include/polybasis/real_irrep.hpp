#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polybasis/group_atlas.hpp"

namespace polybasis {

struct RealnessVerdict {
  int p = 0;
  double indicator = 0.0;  // (1/N) sum chi(g^2), unrounded
  int rounded = 0;         // 1 real, 0 complex, -1 quaternionic
  bool potentially_real = false;
};

/// Complex symmetric unitary C and its real structure B = [[Re C, Im C], [Im C, -Re C]].
struct ConeigenProblem {
  CMatrix C;
  RMatrix B;
  std::uint64_t seed = 0;
  int attempts = 0;    // random draws of A consumed
  double scale = 0.0;  // c_z with conj(Z) Z = c_z I
};

struct RealIrrep {
  int p = 0;
  int dim = 0;
  CMatrix S;  // unitary, Gamma_r = S^H Gamma_c S
  std::vector<RMatrix> matrices;
  std::uint64_t seed = 0;
  double max_imag_residue = 0.0;  // before truncation
};

/// Solver output for one irrep. `real` is empty when the irrep is not potentially real.
struct RealIrrepResult {
  RealnessVerdict verdict;
  std::optional<RealIrrep> real;
};

inline constexpr double kIndicatorResidue = 1e-8;
inline constexpr double kPlusOneTolerance = 1e-8;
inline constexpr double kTakagiTolerance = 1e-9;
inline constexpr double kRealnessTruncation = 1e-10;
inline constexpr double kRealnessFailure = 1e-8;

/// Frobenius-Schur indicator (1/N) sum chi(g^2), cross-checked against (1/N) sum chi(g)^2.
/// Throws CorruptedIrrep if the two forms disagree or the value is not near an integer.
RealnessVerdict frobenius_schur(const Group& group, const Irrep& irrep);

/// Symmetric intertwiner C = Z / sqrt(c_z) with Z = (1/N) sum Gamma A Gamma^T,
/// A a seeded random complex symmetric matrix.
ConeigenProblem build_coneigen_problem(const Irrep& irrep, std::uint64_t seed);

/// Takagi factor C = S S^T from the +1 eigenvectors [X; -Y] of B, S = X - iY.
CMatrix takagi_via_real_eig(const ConeigenProblem& problem);

/// Gamma_r(g) = S^H Gamma_c(g) S with imaginary parts truncated.
/// Throws NumericalFailure if any imaginary part exceeds 1e-8.
RealIrrep realify_irrep(const Irrep& irrep, const CMatrix& S, std::uint64_t seed = 0);

/// Full pipeline for one irrep; retries with fresh draws if the factorization misses tolerance.
RealIrrepResult solve_real_irrep(const Group& group, const Irrep& irrep, std::uint64_t seed);

/// Pipeline over every irrep of an atlas.
std::vector<RealIrrepResult> solve_real_irreps(const GroupAtlas& atlas, std::uint64_t seed);

}  // namespace polybasis
