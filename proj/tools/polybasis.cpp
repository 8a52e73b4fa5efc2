#include <iostream>
#include <vector>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polybasis/commands.hpp"

namespace {

const std::vector<std::string> kGroups = {"T", "O", "I"};

}  // namespace

int main(int argc, char** argv) {
  using namespace polybasis;

  CLI::App app{"Real symmetry-adapted spherical harmonic bases for the polyhedral rotation groups"};
  app.require_subcommand(1);

  RunConfig config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string group;

  auto* basis = app.add_subcommand("basis", "compute, save and verify basis coefficients");
  basis->add_option("--group", group, "T, O or I")->required()->check(CLI::IsMember(kGroups, CLI::ignore_case));
  basis->add_option("--lmax", config.l_max, "highest degree")->required()->check(CLI::Range(0, kMaxDegree));
  basis->add_option("--seed", seed, "RNG seed (default: $POLYBASIS_SEED, else 1)");
  basis->add_option("--out", out_dir, "output directory")->capture_default_str();
  bool no_verify = false;
  basis->add_flag("--no-verify", no_verify, "skip the verification suite");

  auto* mesh = app.add_subcommand("mesh", "export one basis component as a displaced icosphere (OBJ)");
  mesh->add_option("--group", group, "T, O or I")->required()->check(CLI::IsMember(kGroups, CLI::ignore_case));
  mesh->add_option("--p", config.p, "irrep index (1-based)")->required();
  mesh->add_option("--l", config.l, "degree")->required()->check(CLI::Range(0, kMaxDegree));
  mesh->add_option("--n", config.n, "multiplicity index (1-based)")->required();
  mesh->add_option("--j", config.j, "component (1-based)")->required();
  auto* k1 = mesh->add_option("--k1", config.k1, "radius offset; needs --k2")->check(CLI::PositiveNumber);
  auto* k2 = mesh->add_option("--k2", config.k2, "radius scale; needs --k1");
  k1->needs(k2);
  k2->needs(k1);
  mesh->add_option("--subdiv", config.subdivisions, "icosphere subdivision level")
      ->capture_default_str()
      ->check(CLI::Range(0, 8));
  mesh->add_option("--seed", seed, "RNG seed (default: $POLYBASIS_SEED, else 1)");
  mesh->add_option("--out", out_dir, "output directory or .obj path")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "reload saved coefficients and re-run the verifier");
  std::string verify_path;
  verify->add_option("PATH", verify_path, "output directory of 'basis' or its manifest.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.seed = resolve_seed(seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!group.empty()) config.group = parse_group_name(group);
  config.out = out_dir;
  config.verify = !no_verify;

  if (basis->parsed()) return cmd_basis(config, std::cout, std::cerr);
  if (mesh->parsed()) return cmd_mesh(config, std::cout, std::cerr);
  return cmd_verify(verify_path, config.tolerances, std::cout, std::cerr);
}
