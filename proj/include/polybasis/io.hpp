#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "polybasis/basis_builder.hpp"
#include "polybasis/verifier.hpp"

namespace polybasis {

/// Identifies the harmonic and rotation conventions the coefficients assume.
inline constexpr std::string_view kConventionId = "zyz-active;condon-shortley;H-over-complex-Y";

/// Contents of one per-degree coefficient file.
struct CoefficientFile {
  GroupName group = GroupName::T;
  int l = 0;
  std::uint64_t seed = 0;
  std::vector<CoeffMatrix> blocks;
};

std::string dump_coefficients(const BasisSet& set, int l);
/// Throws FormatError on malformed or inconsistent input.
CoefficientFile parse_coefficients(std::string_view text);

std::string dump_group_atlas(const GroupAtlas& atlas);
GroupAtlas parse_group_atlas(std::string_view text);

std::string dump_real_irreps(const std::vector<RealIrrepResult>& irreps);
std::vector<RealIrrepResult> parse_real_irreps(std::string_view text);

std::string dump_report(const VerificationReport& report);

/// Status recorded in the manifest.
enum class RunStatus { Verified, Unverified, Failed };

/// Writes manifest.json, group.json, real_irreps.json and coeffs_lNN.json.
/// Output is byte-identical for identical inputs.
void save_basis_set(const BasisSet& set, const std::filesystem::path& dir, RunStatus status);

/// Reads a directory written by save_basis_set (a path to its manifest also works).
/// Irreps are rebuilt from the group name; real irreps come from real_irreps.json.
BasisSet load_basis_set(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace polybasis
