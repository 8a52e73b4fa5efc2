#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "polybasis/group_atlas.hpp"
#include "polybasis/mesh.hpp"
#include "polybasis/verifier.hpp"

namespace polybasis {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failure or unreadable input
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Requested (p, l, n, j) does not exist; the message lists what does.
class SelectionError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  GroupName group = GroupName::I;
  int l_max = 15;
  std::uint64_t seed = kDefaultSeed;
  VerifyOptions tolerances;
  std::filesystem::path out = ".";
  bool verify = true;

  // mesh selection, all 1-based except l
  int p = 1;
  int l = 0;
  int n = 1;
  int j = 1;
  std::optional<double> k1;
  std::optional<double> k2;
  int subdivisions = kDefaultSubdivision;
};

/// Explicit seed, else POLYBASIS_SEED, else kDefaultSeed.
/// Throws Error if the environment value is not an unsigned integer.
std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed);

/// Builds, saves and (unless disabled) verifies a basis set. Returns an exit code.
int cmd_basis(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes an OBJ of the selected basis component. Returns an exit code.
int cmd_mesh(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Reloads a saved basis set and re-runs the verifier. Returns an exit code.
int cmd_verify(const std::filesystem::path& path, const VerifyOptions& options, std::ostream& out,
               std::ostream& err);

/// Mesh for component j of block (p, l, n); used by cmd_mesh.
/// Throws SelectionError listing the available indices if the selection does not exist.
MeshObject basis_mesh(const RunConfig& config, MeshScaling* used_scaling = nullptr);

}  // namespace polybasis
