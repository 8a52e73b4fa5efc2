#include "polybasis/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <utility>

namespace polybasis {
namespace {

int midpoint(MeshObject& mesh, std::map<std::pair<int, int>, int>& cache, int a, int b) {
  const std::pair<int, int> key = std::minmax(a, b);
  const auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
  const int index = static_cast<int>(mesh.vertices.size()) - 1;
  cache.emplace(key, index);
  return index;
}

}  // namespace

MeshObject icosphere(int subdivisions) {
  if (subdivisions < 0 || subdivisions > 8) throw Error("subdivision level must lie in [0, 8]");
  const double t = std::numbers::phi;
  MeshObject mesh;
  const double raw[12][3] = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                             {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& v : raw) mesh.vertices.push_back(Vec3(v[0], v[1], v[2]).normalized());
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<std::array<int, 3>> refined;
    refined.reserve(mesh.faces.size() * 4);
    for (const auto& f : mesh.faces) {
      const int a = midpoint(mesh, cache, f[0], f[1]);
      const int b = midpoint(mesh, cache, f[1], f[2]);
      const int c = midpoint(mesh, cache, f[2], f[0]);
      refined.push_back({f[0], a, c});
      refined.push_back({f[1], b, a});
      refined.push_back({f[2], c, b});
      refined.push_back({a, b, c});
    }
    mesh.faces = std::move(refined);
  }
  mesh.radii.assign(mesh.vertices.size(), 1.0);
  return mesh;
}

MeshScaling default_scaling(std::span<const double> values) {
  if (values.empty()) return {};
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double spread = *hi - *lo;
  // relative test: a constant function still shows rounding noise
  if (spread <= 1e-12 * std::max(1.0, std::abs(*hi))) return {};
  MeshScaling s;
  s.k2 = 0.5 / spread;
  s.k1 = 1.0 - s.k2 * *hi;
  return s;
}

MeshObject displace(const MeshObject& sphere, std::span<const double> values, MeshScaling scaling) {
  if (values.size() != sphere.vertices.size()) throw Error("one value per vertex is required");
  MeshObject out = sphere;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = scaling.k1 + scaling.k2 * values[i];
    out.radii[i] = r;
    out.vertices[i] = sphere.vertices[i].normalized() * r;
  }
  return out;
}

bool is_closed_genus0(const MeshObject& mesh) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      if (a == b || a < 0 || b < 0 || a >= static_cast<int>(mesh.vertices.size())) return false;
      if (++directed[{a, b}] > 1) return false;
    }
  }
  // each directed edge must be matched by its reverse exactly once
  for (const auto& [edge, count] : directed) {
    if (!directed.contains({edge.second, edge.first})) return false;
  }
  std::set<int> used;
  for (const auto& f : mesh.faces) used.insert(f.begin(), f.end());
  const long v = static_cast<long>(used.size());
  const long e = static_cast<long>(directed.size()) / 2;
  const long f = static_cast<long>(mesh.faces.size());
  return v - e + f == 2;
}

std::string to_obj(const MeshObject& mesh, std::span<const std::string> header) {
  std::string out;
  out.reserve(mesh.vertices.size() * 96 + mesh.faces.size() * 32);
  char line[160];
  for (const std::string& h : header) out += "# " + h + "\n";
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out += line;
  }
  for (const auto& f : mesh.faces) {
    std::snprintf(line, sizeof line, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += line;
  }
  out += "# radius per vertex, in vertex order\n";
  for (double r : mesh.radii) {
    std::snprintf(line, sizeof line, "#r %.17g\n", r);
    out += line;
  }
  return out;
}

}  // namespace polybasis
