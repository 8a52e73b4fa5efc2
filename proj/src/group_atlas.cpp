#include "polybasis/group_atlas.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace polybasis {
namespace {

constexpr double kRotationTolerance = 1e-12;

bool is_rotation(const Mat3& R) {
  return (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() < kRotationTolerance &&
         std::abs(R.determinant() - 1.0) < kRotationTolerance;
}

using SortKey = std::array<long long, 9>;

SortKey sort_key(const Mat3& R) {
  SortKey key{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) key[3 * i + j] = std::llround(R(i, j) * 1e6);
  return key;
}

int find_in(const std::vector<Mat3>& elements, const Mat3& R) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if ((elements[i] - R).cwiseAbs().maxCoeff() < kDedupTolerance) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

std::string_view to_string(GroupName name) {
  switch (name) {
    case GroupName::T: return "T";
    case GroupName::O: return "O";
    case GroupName::I: return "I";
  }
  return "?";
}

GroupName parse_group_name(std::string_view text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
      case 'T': return GroupName::T;
      case 'O': return GroupName::O;
      case 'I': return GroupName::I;
      default: break;
    }
  }
  throw Error("unknown group '" + std::string(text) + "' (expected T, O or I)");
}

int Group::inverse(int g) const {
  for (int h = 0; h < static_cast<int>(order()); ++h) {
    if (product(g, h) == 0) return h;
  }
  throw CorruptedIrrep("group element has no inverse in the multiplication table");
}

int Group::find(const Mat3& R) const { return find_in(elements, R); }

double Group::rotation_angle(int g) const {
  const double c = std::clamp((elements[g].trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

Group generate_group(std::span<const Mat3> generators, std::optional<GroupName> name) {
  if (generators.empty()) throw InvalidGenerators("no generators given");
  for (const Mat3& G : generators) {
    if (!is_rotation(G)) throw InvalidGenerators("generator is not a proper rotation");
  }

  // Breadth-first closure; the BFS parent chain gives shortest words.
  std::vector<Mat3> found{Mat3::Identity()};
  std::vector<std::vector<int>> found_words{{}};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (std::size_t k = 0; k < generators.size(); ++k) {
      const Mat3 candidate = found[head] * generators[k];
      if (find_in(found, candidate) >= 0) continue;
      if (found.size() == kMaxPolyhedralOrder) {
        throw InvalidGenerators("generator closure exceeds 120 elements; not a polyhedral group");
      }
      found.push_back(candidate);
      auto word = found_words[head];
      word.push_back(static_cast<int>(k));
      found_words.push_back(std::move(word));
    }
  }

  std::vector<std::size_t> perm(found.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin() + 1, perm.end(), [&](std::size_t a, std::size_t b) {
    return sort_key(found[a]) < sort_key(found[b]);
  });

  Group group;
  group.name = name;
  group.generators.assign(generators.begin(), generators.end());
  for (std::size_t idx : perm) {
    group.elements.push_back(found[idx]);
    group.words.push_back(found_words[idx]);
  }

  const int n = static_cast<int>(group.order());
  group.mult_table.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int c = find_in(group.elements, group.elements[a] * group.elements[b]);
      if (c < 0) throw InvalidGenerators("closure is not closed under multiplication");
      group.mult_table[a * n + b] = c;
    }
  }
  return group;
}

Irrep extend_irrep(const Group& group, std::span<const CMatrix> generator_images, int p) {
  if (generator_images.size() != group.generators.size()) {
    throw CorruptedIrrep("generator image count does not match generator count");
  }
  const Eigen::Index dim = generator_images.front().rows();
  for (const CMatrix& img : generator_images) {
    if (img.rows() != dim || img.cols() != dim) throw CorruptedIrrep("generator images must be square of equal size");
    if ((img.adjoint() * img - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kDedupTolerance) {
      throw CorruptedIrrep("generator image is not unitary");
    }
  }

  Irrep irrep;
  irrep.p = p;
  irrep.dim = static_cast<int>(dim);
  for (const auto& word : group.words) {
    CMatrix m = CMatrix::Identity(dim, dim);
    for (int k : word) m = m * generator_images[k];
    irrep.matrices.push_back(std::move(m));
  }

  const int n = static_cast<int>(group.order());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double err =
          (irrep.matrices[a] * irrep.matrices[b] - irrep.matrices[group.product(a, b)]).cwiseAbs().maxCoeff();
      if (err > kDedupTolerance) {
        throw CorruptedIrrep("generator images of irrep p=" + std::to_string(p) +
                             " are inconsistent with the group relations");
      }
    }
  }
  for (const CMatrix& m : irrep.matrices) irrep.characters.push_back(m.trace());
  return irrep;
}

double so3_character(int l, double omega) {
  const double s = std::sin(omega / 2.0);
  if (std::abs(s) < 1e-12) return 2.0 * l + 1.0;
  return std::sin((2.0 * l + 1.0) * omega / 2.0) / s;
}

cdouble irrep_multiplicity_raw(const Group& group, const Irrep& irrep, int l) {
  if (l < 0) throw Error("degree l must be non-negative");
  cdouble sum = 0.0;
  for (int g = 0; g < static_cast<int>(group.order()); ++g) {
    sum += std::conj(irrep.characters[g]) * so3_character(l, group.rotation_angle(g));
  }
  return sum / static_cast<double>(group.order());
}

int irrep_multiplicity(const Group& group, const Irrep& irrep, int l) {
  const cdouble raw = irrep_multiplicity_raw(group, irrep, l);
  const double rounded = std::round(raw.real());
  if (std::abs(raw - cdouble(rounded, 0.0)) >= 1e-6) {
    throw CorruptedIrrep("multiplicity character sum is not an integer for p=" +
                         std::to_string(irrep.p));
  }
  return static_cast<int>(rounded);
}

GroupAtlas make_atlas(GroupName name) {
  GroupAtlas atlas;
  const auto gens = polyhedral_generators(name);
  atlas.group = generate_group(gens, name);
  const auto images = polyhedral_generator_images(name);
  for (std::size_t p = 0; p < images.size(); ++p) {
    atlas.irreps.push_back(extend_irrep(atlas.group, images[p], static_cast<int>(p) + 1));
  }
  return atlas;
}

}  // namespace polybasis
