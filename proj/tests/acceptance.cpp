// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
//
//   acceptance                 exit 0 iff every criterion passes
//   acceptance --expect-red 4  exit 0 iff exactly the listed criteria fail
//
// The second form lets ctest track a criterion that is known to be
// unattainable (it is still printed as FAIL) while catching any regression.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "polybasis/basis_builder.hpp"
#include "polybasis/commands.hpp"
#include "polybasis/mesh.hpp"
#include "polybasis/verifier.hpp"

using namespace polybasis;

namespace {

// pinned tolerances and budgets
constexpr double kIndicatorTol = 1e-8;
constexpr double kRealIrrepTol = 1e-10;
constexpr double kBEigenTol = 1e-8;
constexpr double kUnitaryTol = 1e-10;
constexpr double kUnitaryTolExtended = 1e-8;
constexpr double kTransformTol = 1e-8;
constexpr double kGramTol = 1e-10;
constexpr double kRecoverTol = 1e-8;
constexpr double kPrincipalAngleTol = 1e-8;
constexpr double kMeshRadiusTol = 1e-6;
constexpr double kSphereVarianceTol = 1e-12;
constexpr double kFastBudget = 1.0;        // seconds, criteria 1 and 2
constexpr double kExtendedBudget = 120.0;  // seconds, criterion 3 at l_max = 45
constexpr int kDeskDegree = 15;
constexpr int kExtendedDegree = 45;
constexpr int kTransformDegree = 10;
constexpr std::size_t kTransformPoints = 200;
constexpr int kRecoverDegree = 6;

const GroupName kGroups[] = {GroupName::T, GroupName::O, GroupName::I};

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

std::string fixed(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2f", v);
  return b;
}

const BasisSet& desk_set(GroupName name) {
  static std::map<GroupName, BasisSet> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_basis_set(name, kDeskDegree, 1)).first;
  return it->second;
}

CMatrix rows_of(const std::vector<CoeffMatrix>& blocks, int p, int l) {
  std::vector<const CMatrix*> parts;
  Eigen::Index rows = 0;
  for (const CoeffMatrix& cm : blocks) {
    if (cm.p == p) {
      parts.push_back(&cm.H);
      rows += cm.H.rows();
    }
  }
  CMatrix out(rows, 2 * l + 1);
  Eigen::Index r = 0;
  for (const CMatrix* m : parts) {
    out.middleRows(r, m->rows()) = *m;
    r += m->rows();
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::vector<int>> expected = {{1, 0, 0, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}};
  bool ok = true;
  double residue = 0.0;
  for (int gi = 0; gi < 3; ++gi) {
    const GroupAtlas atlas = make_atlas(kGroups[gi]);
    for (std::size_t p = 0; p < atlas.irreps.size(); ++p) {
      const RealnessVerdict v = frobenius_schur(atlas.group, atlas.irreps[p]);
      residue = std::max(residue, std::abs(v.indicator - v.rounded));
      ok &= v.rounded == expected[gi][p];
    }
  }
  const double t = seconds_since(t0);
  ok &= residue < kIndicatorTol && t < kFastBudget;
  return {ok, "indicators T{1,0,0,1} O{1^5} I{1^5}; residue " + sci(residue) + "; " + fixed(t) + " s"};
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  double imag = 0.0, orth = 0.0, homo = 0.0, eig = 0.0;
  for (GroupName name : kGroups) {
    const GroupAtlas atlas = make_atlas(name);
    const int n = static_cast<int>(atlas.group.order());
    for (const Irrep& ir : atlas.irreps) {
      const RealIrrepResult r = solve_real_irrep(atlas.group, ir, 1);
      if (!r.real) continue;
      const RealIrrep& ri = *r.real;
      const int d = ri.dim;
      // B spectrum from the same seed the solver used
      const ConeigenProblem prob = build_coneigen_problem(ir, ri.seed);
      Eigen::SelfAdjointEigenSolver<RMatrix> es(prob.B);
      std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 2 * d);
      std::sort(ev.begin(), ev.end());
      for (int i = 0; i < d; ++i) eig = std::max({eig, std::abs(ev[i] + 1.0), std::abs(ev[d + i] - 1.0)});
      for (int a = 0; a < n; ++a) {
        const CMatrix direct = ri.S.adjoint() * ir.matrices[a] * ri.S;
        imag = std::max(imag, direct.imag().cwiseAbs().maxCoeff());
        const RMatrix& A = ri.matrices[a];
        orth = std::max(orth, (A.transpose() * A - RMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
        for (int b = 0; b < n; ++b) {
          homo = std::max(homo, (A * ri.matrices[b] - ri.matrices[atlas.group.product(a, b)]).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  const double t = seconds_since(t0);
  const bool ok = imag < kRealIrrepTol && orth < kRealIrrepTol && homo < kRealIrrepTol && eig < kBEigenTol &&
                  t < kFastBudget;
  return {ok, "imag " + sci(imag) + ", orth " + sci(orth) + ", hom " + sci(homo) + ", B eig " + sci(eig) + "; " +
                  fixed(t) + " s"};
}

Outcome criterion3() {
  bool ok = true;
  double desk = 0.0, extended = 0.0, slowest = 0.0;
  for (GroupName name : {GroupName::O, GroupName::I}) {
    const BasisSet& set = desk_set(name);
    for (int l = 0; l <= kDeskDegree; ++l) {
      int components = 0;
      for (const CoeffMatrix& cm : set.degrees[l]) components += static_cast<int>(cm.H.rows());
      ok &= components == 2 * l + 1;
      const CMatrix H = assemble_full_H(set, l);
      const int n = 2 * l + 1;
      ok &= H.rows() == n;
      desk = std::max(desk, (H * H.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
    }
    const auto t0 = std::chrono::steady_clock::now();
    const BasisSet big = build_basis_set(name, kExtendedDegree, 1);
    for (int l = 0; l <= kExtendedDegree; ++l) {
      const CMatrix H = assemble_full_H(big, l);
      const int n = 2 * l + 1;
      ok &= H.rows() == n;
      extended = std::max(extended, (H * H.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
    }
    slowest = std::max(slowest, seconds_since(t0));
  }
  ok &= desk < kUnitaryTol && extended < kUnitaryTolExtended && slowest < kExtendedBudget;
  return {ok, "O,I square unitary: l<=15 " + sci(desk) + ", l<=45 " + sci(extended) + "; l_max=45 build " +
                  fixed(slowest) + " s"};
}

Outcome criterion4() {
  const BasisSet& set = desk_set(GroupName::T);
  std::string equal_at, below_at;
  bool ok = true;
  for (int l = 1; l <= kDeskDegree; ++l) {
    const int n1 = irrep_multiplicity(set.atlas.group, set.atlas.irreps[0], l);
    const int n4 = irrep_multiplicity(set.atlas.group, set.atlas.irreps[3], l);
    const bool below = n1 + 3 * n4 < 2 * l + 1;
    ok &= below;
    std::string& list = below ? below_at : equal_at;
    list += (list.empty() ? "" : ",") + std::to_string(l);
  }
  std::string detail = "N1+3N4 < 2l+1 at l=" + below_at;
  if (!equal_at.empty()) {
    detail += "; N1+3N4 = 2l+1 at l=" + equal_at +
              " (no complex irrep occurs there, so the real basis is complete at those degrees)";
  }
  return {ok, detail};
}

Outcome criterion5() {
  const auto points = sphere_sample(kTransformPoints, 20240);
  double worst = 0.0;
  int blocks = 0;
  for (GroupName name : kGroups) {
    const BasisSet& set = desk_set(name);
    for (int l = 0; l <= kTransformDegree; ++l) {
      for (const CoeffMatrix& cm : set.degrees[l]) {
        worst = std::max(worst, check_transformation(cm, *set.real_irrep(cm.p), set.atlas.group, points));
        ++blocks;
      }
    }
  }
  return {worst < kTransformTol, std::to_string(blocks) + " blocks, all elements, " +
                                     std::to_string(kTransformPoints) + " points: max residual " + sci(worst)};
}

Outcome criterion6() {
  double identity = 0.0, agreement = 0.0;
  for (GroupName name : kGroups) {
    const BasisSet& set = desk_set(name);
    const OrthonormalityResult r = check_orthonormality(set, quadrature_grid(2 * kDeskDegree + 2));
    identity = std::max(identity, r.identity_residual);
    agreement = std::max(agreement, r.coefficient_agreement);
  }
  return {identity < kGramTol && agreement < kGramTol,
          "l<=15, all groups: |G-I| " + sci(identity) + ", |G-G_coeff| " + sci(agreement)};
}

// Brute-force multiplicity: (1/N) sum_g conj(chi_p(g)) tr D^l(g).
int trace_oracle(const GroupAtlas& atlas, int p, const std::vector<CMatrix>& D) {
  cdouble s = 0.0;
  for (std::size_t g = 0; g < atlas.group.order(); ++g) s += std::conj(atlas.irreps[p - 1].characters[g]) * D[g].trace();
  return static_cast<int>(std::lround(s.real() / double(atlas.group.order())));
}

Outcome criterion7() {
  bool ok = true;
  int pairs = 0;
  std::string ico;
  for (GroupName name : kGroups) {
    const BasisSet& set = desk_set(name);
    for (int l = 0; l <= kDeskDegree; ++l) {
      std::vector<CMatrix> D;
      for (const Mat3& R : set.atlas.group.elements) D.push_back(wigner_D(l, euler_from_rotation(R)));
      for (std::size_t p = 1; p <= set.atlas.irreps.size(); ++p) {
        const int oracle = trace_oracle(set.atlas, static_cast<int>(p), D);
        ok &= oracle == irrep_multiplicity(set.atlas.group, set.atlas.irreps[p - 1], l);
        if (!set.irreps[p - 1].real) continue;
        int survivors = 0;
        for (const CoeffMatrix& cm : set.degrees[l]) survivors += cm.p == static_cast<int>(p);
        ok &= survivors == oracle;
        ++pairs;
        if (name == GroupName::I && p == 1) ico += std::to_string(survivors);
      }
    }
  }
  ok &= ico == "1000001000101001";
  return {ok, std::to_string(pairs) + " (p,l) pairs match; I identity counts l=0..15: " + ico};
}

Outcome criterion8() {
  const std::pair<GroupName, int> cases[] = {{GroupName::T, 4}, {GroupName::O, 5}, {GroupName::I, 2}};
  double orth = 0.0, match = 0.0;
  int checked = 0;
  for (const auto& [name, p] : cases) {
    const BasisSet& set = desk_set(name);
    for (int l = 0; l <= kRecoverDegree; ++l) {
      for (const CoeffMatrix& cm : set.degrees[l]) {
        if (cm.p != p) continue;
        const RecoveredIrrep r = check_prop1_reverse(cm, *set.real_irrep(p), set.atlas.group, quadrature_grid(2 * l + 2));
        orth = std::max(orth, r.orthogonality_residual);
        match = std::max(match, r.match_residual);
        ++checked;
      }
    }
  }
  return {checked > 0 && orth < kRecoverTol && match < kRecoverTol,
          std::to_string(checked) + " blocks: orth " + sci(orth) + ", match " + sci(match)};
}

Outcome criterion9() {
  bool ok = true;
  double worst = 0.0;
  for (GroupName name : kGroups) {
    const BasisSet& a = desk_set(name);
    const BasisSet b = build_basis_set(name, kDeskDegree, 0xC0FFEE);
    for (int l = 0; l <= kDeskDegree; ++l) {
      for (std::size_t p = 1; p <= a.irreps.size(); ++p) {
        const CMatrix ra = rows_of(a.degrees[l], static_cast<int>(p), l);
        const CMatrix rb = rows_of(b.degrees[l], static_cast<int>(p), l);
        if (ra.rows() != rb.rows()) {
          ok = false;
          continue;
        }
        if (ra.rows() == 0) continue;
        // sines of the principal angles
        Eigen::JacobiSVD<CMatrix> svd(rb - (rb * ra.adjoint()) * ra);
        worst = std::max(worst, std::asin(std::min(1.0, svd.singularValues()(0))));
      }
    }
  }
  return {ok && worst < kPrincipalAngleTol, "seeds 1 vs 0xC0FFEE: equal N_{p;l}, max principal angle " + sci(worst)};
}

// independent OBJ reading: counts and the geometric radius of every vertex
struct ObjStats {
  bool ok = true;
  std::vector<Vec3> v;
  std::vector<std::array<int, 3>> f;
};

ObjStats read_obj(const std::string& text) {
  ObjStats s;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      double x, y, z;
      s.ok &= static_cast<bool>(ls >> x >> y >> z);
      s.v.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      s.ok &= static_cast<bool>(ls >> f[0] >> f[1] >> f[2]);
      for (int& i : f) {
        s.ok &= i >= 1 && i <= static_cast<int>(s.v.size());
        --i;
      }
      s.f.push_back(f);
    } else if (!tag.empty() && tag[0] != '#') {
      s.ok = false;
    }
  }
  return s;
}

Outcome criterion10() {
  struct Pick {
    GroupName g;
    int p, l, n, j;
  };
  const Pick picks[] = {{GroupName::I, 1, 6, 1, 1}, {GroupName::O, 3, 4, 1, 2}, {GroupName::T, 4, 3, 1, 1},
                        {GroupName::I, 5, 8, 1, 3}};
  double span_err = 0.0;
  bool ok = true;
  for (const Pick& pk : picks) {
    RunConfig c;
    c.group = pk.g;
    c.p = pk.p;
    c.l = pk.l;
    c.n = pk.n;
    c.j = pk.j;
    const MeshObject mesh = basis_mesh(c);
    const ObjStats obj = read_obj(to_obj(mesh));
    ok &= obj.ok && obj.v.size() == mesh.vertices.size() && obj.f.size() == mesh.faces.size();
    MeshObject parsed;
    parsed.vertices = obj.v;
    parsed.faces = obj.f;
    ok &= is_closed_genus0(parsed);
    double lo = 1e9, hi = -1e9;
    for (const Vec3& v : obj.v) {
      lo = std::min(lo, v.norm());
      hi = std::max(hi, v.norm());
    }
    span_err = std::max({span_err, std::abs(lo - 0.5), std::abs(hi - 1.0)});
  }
  RunConfig zero;
  zero.group = GroupName::I;
  zero.l = 0;
  zero.k1 = 1.0;
  zero.k2 = 0.7;
  const ObjStats z = read_obj(to_obj(basis_mesh(zero)));
  double mean = 0.0, var = 0.0;
  for (const Vec3& v : z.v) mean += v.norm();
  mean /= double(z.v.size());
  for (const Vec3& v : z.v) var += (v.norm() - mean) * (v.norm() - mean);
  var /= double(z.v.size());
  ok &= z.ok && span_err < kMeshRadiusTol && var < kSphereVarianceTol;
  return {ok, "default radii span [0.5,1] within " + sci(span_err) + "; OBJ re-read closed genus-0; l=0 variance " +
                  sci(var)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_red;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-red" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string item;
      while (std::getline(ss, item, ',')) expect_red.insert(std::stoi(item));
    } else {
      std::fprintf(stderr, "usage: acceptance [--expect-red N[,N...]]\n");
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"realness verdicts", criterion1},
      {"real irrep construction", criterion2},
      {"completeness O, I", criterion3},
      {"tetrahedral incompleteness per degree", criterion4},
      {"transformation law", criterion5},
      {"orthonormality", criterion6},
      {"multiplicity oracle", criterion7},
      {"irreps recovered from basis", criterion8},
      {"gauge robustness", criterion9},
      {"mesh export", criterion10},
  };

  std::set<int> red;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) red.insert(static_cast<int>(i) + 1);
    std::printf("[%s] %2zu %-40s %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - red.size(), criteria.size());
  if (expect_red.empty()) return red.empty() ? 0 : 1;
  if (red == expect_red) {
    std::printf("failing set matches the expected red set\n");
    return 0;
  }
  std::printf("failing set differs from the expected red set\n");
  return 1;
}
