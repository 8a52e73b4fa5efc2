#include "polybasis/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polybasis {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::string_view kManifestFormat = "polybasis-basis";
constexpr int kFormatVersion = 1;

json complex_pair(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble parse_pair(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("expected [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

// Complex matrix as rows of [re, im] pairs.
json complex_rows(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix parse_complex_rows(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) throw FormatError("wrong number of matrix rows");
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw FormatError("wrong number of matrix columns");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = parse_pair(row[c]);
  }
  return m;
}

json real_rows(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix parse_real_rows(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) throw FormatError("wrong number of matrix rows");
  RMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw FormatError("wrong number of matrix columns");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw FormatError("expected a number");
      m(i, c) = row[c].get<double>();
    }
  }
  return m;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string coefficient_file_name(int l) {
  char name[32];
  std::snprintf(name, sizeof name, "coeffs_l%02d.json", l);
  return name;
}

std::string_view status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Verified: return "verified";
    case RunStatus::Unverified: return "unverified";
    case RunStatus::Failed: return "verification_failed";
  }
  return "unknown";
}

std::string finish(const json& j) { return j.dump(1) + "\n"; }

}  // namespace

std::string dump_coefficients(const BasisSet& set, int l) {
  json blocks = json::array();
  for (const CoeffMatrix& cm : set.degrees.at(l)) {
    blocks.push_back({{"p", cm.p}, {"n", cm.n}, {"rows", complex_rows(cm.H)}});
  }
  json j;
  j["group"] = std::string(to_string(set.group_name()));
  j["l"] = l;
  j["blocks"] = std::move(blocks);
  j["meta"] = {{"seed", set.seed},
               {"tolerances", {{"construction", kConstructionTolerance}, {"rank", kRankTolerance}}},
               {"convention_id", std::string(kConventionId)}};
  return finish(j);
}

CoefficientFile parse_coefficients(std::string_view text) {
  const json j = parse_json(text);
  CoefficientFile out;
  try {
    out.group = parse_group_name(field<std::string>(j, "group"));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  out.l = field<int>(j, "l");
  if (out.l < 0 || out.l > kMaxDegree) throw FormatError("degree out of range");
  const json& meta = member(j, "meta");
  out.seed = field<std::uint64_t>(meta, "seed");
  if (field<std::string>(meta, "convention_id") != kConventionId) throw FormatError("unknown convention_id");

  const json& blocks = member(j, "blocks");
  if (!blocks.is_array()) throw FormatError("'blocks' must be an array");
  for (const json& b : blocks) {
    CoeffMatrix cm;
    cm.p = field<int>(b, "p");
    cm.n = field<int>(b, "n");
    cm.l = out.l;
    const json& rows = member(b, "rows");
    if (!rows.is_array() || rows.empty()) throw FormatError("block has no rows");
    cm.H = parse_complex_rows(rows, static_cast<Eigen::Index>(rows.size()), 2 * out.l + 1);
    out.blocks.push_back(std::move(cm));
  }
  return out;
}

std::string dump_group_atlas(const GroupAtlas& atlas) {
  const Group& g = atlas.group;
  json elements = json::array();
  for (const Mat3& R : g.elements) {
    json flat = json::array();
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 3; ++c) flat.push_back(R(i, c));
    elements.push_back(std::move(flat));
  }
  json irreps = json::array();
  for (const Irrep& ir : atlas.irreps) {
    json mats = json::array();
    for (const CMatrix& m : ir.matrices) mats.push_back(complex_rows(m));
    irreps.push_back({{"p", ir.p}, {"dim", ir.dim}, {"matrices", std::move(mats)}});
  }
  json j;
  j["name"] = g.name ? std::string(to_string(*g.name)) : std::string();
  j["order"] = g.order();
  j["elements"] = std::move(elements);
  j["mult_table"] = g.mult_table;
  j["irreps"] = std::move(irreps);
  return finish(j);
}

GroupAtlas parse_group_atlas(std::string_view text) {
  const json j = parse_json(text);
  GroupAtlas atlas;
  Group& g = atlas.group;
  const std::string name = field<std::string>(j, "name");
  if (!name.empty()) {
    try {
      g.name = parse_group_name(name);
    } catch (const Error& e) {
      throw FormatError(e.what());
    }
  }
  const auto order = field<std::size_t>(j, "order");
  if (order == 0 || order > kMaxPolyhedralOrder) throw FormatError("group order out of range");
  const json& elements = member(j, "elements");
  if (!elements.is_array() || elements.size() != order) throw FormatError("element count differs from order");
  for (const json& e : elements) {
    if (!e.is_array() || e.size() != 9) throw FormatError("element must have 9 entries");
    Mat3 R;
    for (int i = 0; i < 9; ++i) {
      if (!e[i].is_number()) throw FormatError("expected a number");
      R(i / 3, i % 3) = e[i].get<double>();
    }
    g.elements.push_back(R);
  }
  g.mult_table = field<std::vector<int>>(j, "mult_table");
  if (g.mult_table.size() != order * order) throw FormatError("mult_table has the wrong size");
  for (int v : g.mult_table) {
    if (v < 0 || v >= static_cast<int>(order)) throw FormatError("mult_table entry out of range");
  }
  const json& irreps = member(j, "irreps");
  if (!irreps.is_array()) throw FormatError("'irreps' must be an array");
  for (const json& ij : irreps) {
    Irrep ir;
    ir.p = field<int>(ij, "p");
    ir.dim = field<int>(ij, "dim");
    if (ir.dim < 1 || ir.dim > 6) throw FormatError("irrep dimension out of range");
    const json& mats = member(ij, "matrices");
    if (!mats.is_array() || mats.size() != order) throw FormatError("irrep matrix count differs from order");
    for (const json& m : mats) {
      ir.matrices.push_back(parse_complex_rows(m, ir.dim, ir.dim));
      ir.characters.push_back(ir.matrices.back().trace());
    }
    atlas.irreps.push_back(std::move(ir));
  }
  return atlas;
}

std::string dump_real_irreps(const std::vector<RealIrrepResult>& irreps) {
  json out = json::array();
  for (const RealIrrepResult& r : irreps) {
    json entry;
    entry["p"] = r.verdict.p;
    entry["indicator"] = r.verdict.indicator;
    entry["rounded"] = r.verdict.rounded;
    entry["potentially_real"] = r.verdict.potentially_real;
    if (r.real) {
      json mats = json::array();
      for (const RMatrix& m : r.real->matrices) mats.push_back(real_rows(m));
      entry["real"] = {{"p", r.real->p},
                       {"dim", r.real->dim},
                       {"S", complex_rows(r.real->S)},
                       {"matrices", std::move(mats)},
                       {"seed", r.real->seed},
                       {"max_imag_residue", r.real->max_imag_residue}};
    } else {
      entry["real"] = nullptr;
    }
    out.push_back(std::move(entry));
  }
  return finish(out);
}

std::vector<RealIrrepResult> parse_real_irreps(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw FormatError("real irrep dump must be an array");
  std::vector<RealIrrepResult> out;
  for (const json& e : j) {
    RealIrrepResult r;
    r.verdict.p = field<int>(e, "p");
    r.verdict.indicator = field<double>(e, "indicator");
    r.verdict.rounded = field<int>(e, "rounded");
    r.verdict.potentially_real = field<bool>(e, "potentially_real");
    const json& real = member(e, "real");
    if (!real.is_null()) {
      RealIrrep ri;
      ri.p = field<int>(real, "p");
      ri.dim = field<int>(real, "dim");
      if (ri.dim < 1 || ri.dim > 6) throw FormatError("irrep dimension out of range");
      ri.S = parse_complex_rows(member(real, "S"), ri.dim, ri.dim);
      const json& mats = member(real, "matrices");
      if (!mats.is_array()) throw FormatError("'matrices' must be an array");
      for (const json& m : mats) ri.matrices.push_back(parse_real_rows(m, ri.dim, ri.dim));
      ri.seed = field<std::uint64_t>(real, "seed");
      ri.max_imag_residue = field<double>(real, "max_imag_residue");
      r.real = std::move(ri);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string dump_report(const VerificationReport& report) {
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_residual", c.max_residual},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  }
  json j;
  j["passed"] = report.passed();
  j["checks"] = std::move(checks);
  return finish(j);
}

void save_basis_set(const BasisSet& set, const fs::path& dir, RunStatus status) {
  fs::create_directories(dir);
  json files = json::array();
  for (int l = 0; l <= set.l_max; ++l) {
    const std::string name = coefficient_file_name(l);
    write_text_file(dir / name, dump_coefficients(set, l));
    files.push_back(name);
  }
  write_text_file(dir / "group.json", dump_group_atlas(set.atlas));
  write_text_file(dir / "real_irreps.json", dump_real_irreps(set.irreps));

  json manifest;
  manifest["format"] = std::string(kManifestFormat);
  manifest["version"] = kFormatVersion;
  manifest["group"] = std::string(to_string(set.group_name()));
  manifest["l_max"] = set.l_max;
  manifest["seed"] = set.seed;
  manifest["status"] = std::string(status_name(status));
  manifest["convention_id"] = std::string(kConventionId);
  manifest["group_file"] = "group.json";
  manifest["real_irreps_file"] = "real_irreps.json";
  manifest["coefficient_files"] = std::move(files);
  write_text_file(dir / "manifest.json", finish(manifest));
}

BasisSet load_basis_set(const fs::path& path) {
  const fs::path manifest_path = fs::is_directory(path) ? path / "manifest.json" : path;
  const fs::path dir = manifest_path.parent_path();
  const json manifest = parse_json(read_text_file(manifest_path));
  if (field<std::string>(manifest, "format") != kManifestFormat) throw FormatError("not a basis manifest");
  if (field<int>(manifest, "version") != kFormatVersion) throw FormatError("unsupported manifest version");
  if (field<std::string>(manifest, "convention_id") != kConventionId) throw FormatError("unknown convention_id");

  BasisSet set;
  try {
    set.atlas = make_atlas(parse_group_name(field<std::string>(manifest, "group")));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  set.l_max = field<int>(manifest, "l_max");
  if (set.l_max < 0 || set.l_max > kMaxDegree) throw FormatError("l_max out of range");
  set.seed = field<std::uint64_t>(manifest, "seed");

  set.irreps = parse_real_irreps(read_text_file(dir / field<std::string>(manifest, "real_irreps_file")));
  if (set.irreps.size() != set.atlas.irreps.size()) throw FormatError("real irrep count differs from the group");
  for (std::size_t i = 0; i < set.irreps.size(); ++i) {
    const auto& r = set.irreps[i];
    if (r.verdict.p != static_cast<int>(i) + 1) throw FormatError("real irreps out of order");
    if (r.real && (r.real->dim != set.atlas.irreps[i].dim || r.real->matrices.size() != set.atlas.group.order())) {
      throw FormatError("real irrep p=" + std::to_string(i + 1) + " does not fit the group");
    }
  }

  const auto files = field<std::vector<std::string>>(manifest, "coefficient_files");
  if (static_cast<int>(files.size()) != set.l_max + 1) throw FormatError("coefficient file count differs from l_max");
  for (int l = 0; l <= set.l_max; ++l) {
    CoefficientFile cf = parse_coefficients(read_text_file(dir / files[l]));
    if (cf.l != l) throw FormatError(files[l] + ": degree " + std::to_string(cf.l) + " where " + std::to_string(l) +
                                     " was expected");
    if (cf.group != set.group_name()) throw FormatError(files[l] + ": group differs from the manifest");
    if (cf.seed != set.seed) throw FormatError(files[l] + ": seed differs from the manifest");
    for (const CoeffMatrix& cm : cf.blocks) {
      const RealIrrep* ri = set.real_irrep(cm.p);
      if (ri == nullptr) throw FormatError(files[l] + ": block for p=" + std::to_string(cm.p) + " has no real irrep");
      if (cm.H.rows() != ri->dim) throw FormatError(files[l] + ": block row count differs from the irrep dimension");
    }
    set.degrees.push_back(std::move(cf.blocks));
  }
  return set;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace polybasis
