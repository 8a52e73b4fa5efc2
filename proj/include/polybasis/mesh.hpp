#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polybasis/types.hpp"

namespace polybasis {

/// Triangulated radial surface. `radii[i]` is the distance of vertex i from the origin.
struct MeshObject {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based, counter-clockwise seen from outside
  std::vector<double> radii;
};

inline constexpr int kDefaultSubdivision = 5;

/// Unit icosphere: icosahedron refined `subdivisions` times (10 * 4^s + 2 vertices).
MeshObject icosphere(int subdivisions);

struct MeshScaling {
  double k1 = 1.0;
  double k2 = 0.0;
};

/// Scaling that maps the sampled range of f onto [0.5, 1] exactly.
/// A constant f gives k1 = 1, k2 = 0.
MeshScaling default_scaling(std::span<const double> values);

/// Moves each unit-sphere vertex to radius k1 + k2 * values[i].
MeshObject displace(const MeshObject& sphere, std::span<const double> values, MeshScaling scaling);

/// Every edge shared by exactly two faces and Euler characteristic 2.
bool is_closed_genus0(const MeshObject& mesh);

/// Wavefront OBJ text; header lines are written as comments, radii as a trailing comment block.
std::string to_obj(const MeshObject& mesh, std::span<const std::string> header = {});

}  // namespace polybasis
