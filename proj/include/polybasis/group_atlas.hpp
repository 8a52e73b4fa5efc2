#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polybasis/types.hpp"

namespace polybasis {

enum class GroupName { T, O, I };

std::string_view to_string(GroupName name);
/// Accepts "T", "O", "I" (case-insensitive); throws Error otherwise.
GroupName parse_group_name(std::string_view text);

/// A finite rotation group closed under multiplication.
///
/// Element 0 is the identity; the remaining elements are sorted
/// lexicographically on their rounded entries, so the layout is
/// reproducible across runs. `words[g]` is a shortest factorization of
/// element g over the generators (left to right: R_g = G[w0] G[w1] ...).
struct Group {
  std::optional<GroupName> name;
  std::vector<Mat3> generators;
  std::vector<Mat3> elements;
  std::vector<int> mult_table;  // row-major order x order, (a, b) -> index of a*b
  std::vector<std::vector<int>> words;

  std::size_t order() const { return elements.size(); }
  int product(int a, int b) const { return mult_table[a * static_cast<int>(order()) + b]; }
  int inverse(int g) const;
  /// Index of the element equal to R within 1e-8, or -1.
  int find(const Mat3& R) const;
  /// Rotation angle in [0, pi] from the trace.
  double rotation_angle(int g) const;
};

/// Complex unitary irreducible representation. `p` is 1-based.
struct Irrep {
  int p = 0;
  int dim = 0;
  std::vector<CMatrix> matrices;
  std::vector<cdouble> characters;
};

/// A polyhedral rotation group with all of its complex irreps, ordered by p.
struct GroupAtlas {
  Group group;
  std::vector<Irrep> irreps;
};

inline constexpr double kDedupTolerance = 1e-8;
inline constexpr double kHomomorphismTolerance = 1e-10;
inline constexpr std::size_t kMaxPolyhedralOrder = 120;

/// Closure of the generators under multiplication.
/// Throws InvalidGenerators for non-rotations or closures larger than 120.
Group generate_group(std::span<const Mat3> generators,
                     std::optional<GroupName> name = std::nullopt);

/// Extends generator images along each element's word.
/// Throws CorruptedIrrep if the result is not a homomorphism.
Irrep extend_irrep(const Group& group, std::span<const CMatrix> generator_images, int p);

/// Multiplicity of irrep in the degree-l rotation representation, from
/// the character sum against sin((2l+1)w/2)/sin(w/2).
int irrep_multiplicity(const Group& group, const Irrep& irrep, int l);

/// Unrounded character sum behind irrep_multiplicity.
cdouble irrep_multiplicity_raw(const Group& group, const Irrep& irrep, int l);

/// Character of the degree-l rotation representation at rotation angle omega.
double so3_character(int l, double omega);

/// Generators of the requested group in its standard orientation.
std::vector<Mat3> polyhedral_generators(GroupName name);
/// Complex generator images for every irrep of the group, ordered by p.
std::vector<std::vector<CMatrix>> polyhedral_generator_images(GroupName name);

/// Group plus all complex irreps.
GroupAtlas make_atlas(GroupName name);

}  // namespace polybasis
