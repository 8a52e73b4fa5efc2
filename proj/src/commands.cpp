#include "polybasis/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "polybasis/basis_builder.hpp"
#include "polybasis/io.hpp"

namespace polybasis {
namespace {

namespace fs = std::filesystem;

std::string available_indices(const std::vector<CoeffMatrix>& blocks, int l) {
  std::ostringstream os;
  os << "available at l=" << l << ":";
  if (blocks.empty()) os << " none";
  for (const CoeffMatrix& cm : blocks) {
    os << " (p=" << cm.p << ", n=" << cm.n << ", j=1.." << cm.H.rows() << ")";
  }
  return os.str();
}

fs::path mesh_path(const RunConfig& c) {
  if (c.out.extension() == ".obj") return c.out;
  return c.out / ("mesh_" + std::string(to_string(c.group)) + "_p" + std::to_string(c.p) + "_l" +
                  std::to_string(c.l) + "_n" + std::to_string(c.n) + "_j" + std::to_string(c.j) + ".obj");
}

}  // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed) {
  if (explicit_seed) return *explicit_seed;
  const char* env = std::getenv("POLYBASIS_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  const std::string_view text(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("POLYBASIS_SEED must be an unsigned integer, got '" + std::string(text) + "'");
  }
  return value;
}

int cmd_basis(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.l_max < 0 || config.l_max > kMaxDegree) {
    err << "error: --lmax must lie in [0, " << kMaxDegree << "]\n";
    return kExitUsage;
  }
  BasisSet set;
  try {
    set = build_basis_set(config.group, config.l_max, config.seed);
  } catch (const Error& e) {
    err << "error: construction failed: " << e.what() << "\n";
    return kExitFailure;
  }
  try {
    save_basis_set(set, config.out, config.verify ? RunStatus::Failed : RunStatus::Unverified);
    out << "wrote " << config.l_max + 1 << " coefficient files to " << config.out.string() << "\n";
    if (!config.verify) return kExitOk;

    const VerificationReport report = verify_basis_set(set, config.tolerances);
    write_text_file(config.out / "report.json", dump_report(report));
    write_text_file(config.out / "report.txt", report.to_table());
    out << report.to_table();
    if (!report.passed()) {
      err << "error: verification failed; outputs in " << config.out.string() << " are flagged\n";
      return kExitFailure;
    }
    // written last so an interrupted run stays flagged
    save_basis_set(set, config.out, RunStatus::Verified);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

MeshObject basis_mesh(const RunConfig& c, MeshScaling* used_scaling) {
  if (c.l < 0 || c.l > kMaxDegree) throw SelectionError("l must lie in [0, " + std::to_string(kMaxDegree) + "]");
  if (c.k1 && *c.k1 <= 0.0) throw SelectionError("k1 must be positive");
  const GroupAtlas atlas = make_atlas(c.group);
  const auto irreps = solve_real_irreps(atlas, c.seed);
  const auto blocks = build_degree(atlas, irreps, c.l);

  const CoeffMatrix* chosen = nullptr;
  for (const CoeffMatrix& cm : blocks) {
    if (cm.p == c.p && cm.n == c.n) chosen = &cm;
  }
  if (chosen == nullptr || c.j < 1 || c.j > chosen->H.rows()) {
    throw SelectionError("no basis component (p=" + std::to_string(c.p) + ", l=" + std::to_string(c.l) +
                         ", n=" + std::to_string(c.n) + ", j=" + std::to_string(c.j) + "); " +
                         available_indices(blocks, c.l));
  }

  const MeshObject sphere = icosphere(c.subdivisions);
  std::vector<double> values(sphere.vertices.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = evaluate_basis(chosen->H, sphere.vertices[i])[c.j - 1];

  MeshScaling scaling = default_scaling(values);
  if (c.k1) scaling.k1 = *c.k1;
  if (c.k2) scaling.k2 = *c.k2;
  if (used_scaling != nullptr) *used_scaling = scaling;
  return displace(sphere, values, scaling);
}

int cmd_mesh(const RunConfig& config, std::ostream& out, std::ostream& err) {
  MeshScaling scaling;
  MeshObject mesh;
  try {
    mesh = basis_mesh(config, &scaling);
  } catch (const SelectionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  const fs::path path = mesh_path(config);
  try {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ostringstream k;
    k.precision(17);
    k << "k1=" << scaling.k1 << " k2=" << scaling.k2;
    const std::vector<std::string> header = {
        "polybasis mesh group=" + std::string(to_string(config.group)) + " p=" + std::to_string(config.p) +
            " l=" + std::to_string(config.l) + " n=" + std::to_string(config.n) + " j=" + std::to_string(config.j),
        k.str() + " seed=" + std::to_string(config.seed) + " subdivisions=" + std::to_string(config.subdivisions)};
    write_text_file(path, to_obj(mesh, header));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  out << "wrote " << path.string() << " (" << mesh.vertices.size() << " vertices, " << mesh.faces.size()
      << " faces)\n";
  return kExitOk;
}

int cmd_verify(const fs::path& path, const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  BasisSet set;
  try {
    set = load_basis_set(path);
  } catch (const Error& e) {
    err << "error: cannot load " << path.string() << ": " << e.what() << "\n";
    return kExitFailure;
  }
  VerificationReport report;
  try {
    report = verify_basis_set(set, options);
  } catch (const Error& e) {
    err << "error: verification aborted: " << e.what() << "\n";
    return kExitFailure;
  }
  out << report.to_table();
  if (!report.passed()) {
    err << "error: verification failed\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace polybasis
