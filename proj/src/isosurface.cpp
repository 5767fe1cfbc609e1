#include "belldiag/isosurface.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "belldiag/measures.hpp"
#include "belldiag/sampling.hpp"

namespace belldiag {
namespace {

double extended_mutual_info(const CorrelationVector& c) {
  // I = 2 + sum lambda log2 lambda, dropping nonpositive eigenvalues; the
  // sum of the affine map is 1 everywhere, so this extends I continuously
  // across the boundary of T.
  double acc = 2.0;
  for (double l : spectrum(c).lambda) {
    if (l > 0.0) acc += l * std::log2(l);
  }
  return acc;
}

double extended_classical(const CorrelationVector& c) {
  return 1.0 - binary_entropy((1.0 + std::min(1.0, c.max_abs())) / 2.0);
}

double extended_concurrence(const CorrelationVector& c) {
  return std::max(0.0, 2.0 * spectrum(c).max() - 1.0);
}

// Tolerance for the "inside T" half-space tests during clipping, in units
// of 4*lambda.
constexpr double kInsideTol = 5e-13;

// 4*lambda_ab as an affine function of c; >= 0 defines the tetrahedron.
double face_value(int face, const Vec3& p) {
  const int a = face >> 1;
  const int b = face & 1;
  const double sa = a == 0 ? 1.0 : -1.0;
  const double sb = b == 0 ? 1.0 : -1.0;
  return 1.0 + sa * p.x() - sa * sb * p.y() + sb * p.z();
}

}  // namespace

const char* to_string(ScalarFieldId field) {
  switch (field) {
    case ScalarFieldId::discord: return "discord";
    case ScalarFieldId::classical: return "classical";
    case ScalarFieldId::mutual_info: return "mutual_info";
    case ScalarFieldId::concurrence: return "concurrence";
    case ScalarFieldId::eof: return "eof";
  }
  return "discord";
}

std::optional<ScalarFieldId> field_from_string(std::string_view name) {
  if (name == "discord") return ScalarFieldId::discord;
  if (name == "classical") return ScalarFieldId::classical;
  if (name == "mutual_info") return ScalarFieldId::mutual_info;
  if (name == "concurrence") return ScalarFieldId::concurrence;
  if (name == "eof") return ScalarFieldId::eof;
  return std::nullopt;
}

double field_value(ScalarFieldId field, const CorrelationVector& c) {
  switch (field) {
    case ScalarFieldId::mutual_info:
      return extended_mutual_info(c);
    case ScalarFieldId::classical:
      return extended_classical(c);
    case ScalarFieldId::discord:
      return extended_mutual_info(c) - extended_classical(c);
    case ScalarFieldId::concurrence:
      return extended_concurrence(c);
    case ScalarFieldId::eof: {
      const double q = extended_concurrence(c);
      return binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - q * q))) / 2.0);
    }
  }
  return 0.0;
}

double field_max(ScalarFieldId field) {
  return field == ScalarFieldId::mutual_info ? 2.0 : 1.0;
}

double FieldGrid::coord(int i) const {
  // (2i - (res-1)) is exact, so coord(res-1-i) == -coord(i) bitwise and the
  // center lands exactly on 0.
  return (2 * i - (resolution - 1)) * (1.0 / (resolution - 1));
}

bool FieldGrid::cell_valid(int i, int j, int k) const {
  // Each lambda_ab is affine, so its maximum over the cell sits at a
  // corner; the cell misses T iff some lambda is negative on all of it.
  double best[4] = {-1.0, -1.0, -1.0, -1.0};
  for (int dx = 0; dx < 2; ++dx) {
    for (int dy = 0; dy < 2; ++dy) {
      for (int dz = 0; dz < 2; ++dz) {
        const Vec3 p = point(i + dx, j + dy, k + dz);
        for (int face = 0; face < 4; ++face) {
          best[face] = std::max(best[face], face_value(face, p));
        }
      }
    }
  }
  for (int face = 0; face < 4; ++face) {
    if (best[face] < -1e-12) return false;
  }
  return true;
}

FieldGrid sample_field(ScalarFieldId field, int resolution) {
  if (resolution < 9 || resolution % 2 == 0) {
    throw std::invalid_argument("grid resolution must be odd and at least 9");
  }
  FieldGrid grid;
  grid.field = field;
  grid.resolution = resolution;
  grid.values.resize(static_cast<std::size_t>(resolution) * resolution * resolution);
  std::size_t id = 0;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      for (int k = 0; k < resolution; ++k) {
        grid.values[id++] = field_value(field, CorrelationVector(grid.point(i, j, k)));
      }
    }
  }
  return grid;
}

double TriangleMesh::max_residual_nonclip() const {
  double worst = 0.0;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!from_clip[v]) worst = std::max(worst, residual[v]);
  }
  return worst;
}

std::size_t TriangleMesh::clip_vertex_count() const {
  std::size_t count = 0;
  for (std::uint8_t f : from_clip) count += f;
  return count;
}

int TriangleMesh::component_count() const {
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& tri : triangles) {
    const int r0 = find(tri[0]);
    const int r1 = find(tri[1]);
    const int r2 = find(tri[2]);
    parent[r1] = r0;
    parent[r2] = find(r1);
  }
  int count = 0;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (find(static_cast<int>(v)) == static_cast<int>(v)) ++count;
  }
  return count;
}

namespace {

// Local tetrahedra of the Kuhn subdivision around the cell diagonal: walks
// from the anchor corner to the opposite corner, one axis at a time.
constexpr int kAxisOrders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

struct MeshBuilder {
  const FieldGrid& grid;
  double level;
  double refine_tol;

  std::vector<Vec3> vertices;
  std::vector<double> residual;
  std::vector<std::uint8_t> from_clip;
  std::vector<std::array<int, 3>> triangles;
  std::unordered_map<std::uint64_t, int> edge_vertices;
  std::map<std::array<std::int64_t, 3>, int> clip_vertices;

  MeshBuilder(const FieldGrid& g, double lvl, double tol)
      : grid(g), level(lvl), refine_tol(tol) {}

  Vec3 grid_point(int gid) const {
    const int res = grid.resolution;
    return grid.point(gid / (res * res), (gid / res) % res, gid % res);
  }

  int crossing_vertex(int ga, int gb) {
    if (ga > gb) std::swap(ga, gb);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(ga) << 32) | static_cast<std::uint32_t>(gb);
    if (auto it = edge_vertices.find(key); it != edge_vertices.end()) return it->second;

    Vec3 pa = grid_point(ga);
    Vec3 pb = grid_point(gb);
    double fa = grid.values[ga];
    double fb = grid.values[gb];
    if (fa < level) {
      std::swap(pa, pb);
      std::swap(fa, fb);
    }
    // Invariant: f(pa side) >= level > f(pb side). Bisection instead of
    // linear interpolation: the discord field has creases on |c_i| = |c_j|.
    double ta = 0.0;
    double tb = 1.0;
    Vec3 pm = pa;
    double fm = fa;
    for (int iter = 0; iter < 80; ++iter) {
      const double tm = 0.5 * (ta + tb);
      pm = pa + tm * (pb - pa);
      fm = field_value(grid.field, CorrelationVector(pm));
      if (fm >= level) {
        ta = tm;
      } else {
        tb = tm;
      }
      if (std::abs(fm - level) <= refine_tol && tb - ta <= 1e-12) break;
    }
    const int index = static_cast<int>(vertices.size());
    vertices.push_back(pm);
    residual.push_back(std::abs(fm - level));
    from_clip.push_back(0);
    edge_vertices.emplace(key, index);
    return index;
  }

  int clip_vertex(const Vec3& p) {
    const std::array<std::int64_t, 3> key = {std::llround(p.x() * 1e12),
                                             std::llround(p.y() * 1e12),
                                             std::llround(p.z() * 1e12)};
    if (auto it = clip_vertices.find(key); it != clip_vertices.end()) return it->second;
    const int index = static_cast<int>(vertices.size());
    vertices.push_back(p);
    residual.push_back(std::abs(field_value(grid.field, CorrelationVector(p)) - level));
    from_clip.push_back(1);
    clip_vertices.emplace(key, index);
    return index;
  }

  void emit_triangle(int v0, int v1, int v2) {
    struct PolyVert {
      Vec3 p;
      int index;  // -1 for clip points not yet registered
    };
    std::vector<PolyVert> poly = {{vertices[v0], v0}, {vertices[v1], v1}, {vertices[v2], v2}};
    for (int face = 0; face < 4 && poly.size() >= 3; ++face) {
      std::vector<PolyVert> kept;
      kept.reserve(poly.size() + 2);
      const std::size_t n = poly.size();
      for (std::size_t e = 0; e < n; ++e) {
        const PolyVert& cur = poly[e];
        const PolyVert& nxt = poly[(e + 1) % n];
        const double gc = face_value(face, cur.p);
        const double gn = face_value(face, nxt.p);
        const bool in_cur = gc >= -kInsideTol;
        const bool in_nxt = gn >= -kInsideTol;
        if (in_cur) kept.push_back(cur);
        if (in_cur != in_nxt) {
          const double t = std::clamp(gc / (gc - gn), 0.0, 1.0);
          kept.push_back({cur.p + t * (nxt.p - cur.p), -1});
        }
      }
      poly = std::move(kept);
    }
    if (poly.size() < 3) return;

    for (PolyVert& v : poly) {
      if (v.index < 0) v.index = clip_vertex(v.p);
    }
    for (std::size_t e = 1; e + 1 < poly.size(); ++e) {
      const Vec3& a = vertices[poly[0].index];
      const Vec3& b = vertices[poly[e].index];
      const Vec3& c = vertices[poly[e + 1].index];
      if (0.5 * (b - a).cross(c - a).norm() <= 1e-14) continue;  // degenerate
      triangles.push_back({poly[0].index, poly[e].index, poly[e + 1].index});
    }
  }

  void march_tet(const std::array<int, 4>& ids) {
    std::array<double, 4> f;
    bool any_above = false;
    bool any_below = false;
    for (int v = 0; v < 4; ++v) {
      f[v] = grid.values[ids[v]];
      (f[v] >= level ? any_above : any_below) = true;
    }
    if (!any_above || !any_below) return;

    int above[4];
    int below[4];
    int na = 0;
    int nb = 0;
    for (int v = 0; v < 4; ++v) {
      (f[v] >= level ? above[na++] : below[nb++]) = ids[v];
    }
    if (na == 1) {
      emit_triangle(crossing_vertex(above[0], below[0]), crossing_vertex(above[0], below[1]),
                    crossing_vertex(above[0], below[2]));
    } else if (na == 3) {
      emit_triangle(crossing_vertex(below[0], above[0]), crossing_vertex(below[0], above[1]),
                    crossing_vertex(below[0], above[2]));
    } else {
      const int q0 = crossing_vertex(above[0], below[0]);
      const int q1 = crossing_vertex(above[0], below[1]);
      const int q2 = crossing_vertex(above[1], below[1]);
      const int q3 = crossing_vertex(above[1], below[0]);
      emit_triangle(q0, q1, q2);
      emit_triangle(q0, q2, q3);
    }
  }
};

}  // namespace

TriangleMesh extract_level_surface(ScalarFieldId field, double level, int resolution,
                                   double refine_tol) {
  if (refine_tol < 1e-10) {
    throw std::invalid_argument("refine_tol must be at least 1e-10");
  }
  if (!(level > 0.0 && level < field_max(field))) {
    throw std::domain_error("level " + std::to_string(level) + " outside (0, " +
                            std::to_string(field_max(field)) + ") for field " +
                            to_string(field));
  }
  const FieldGrid grid = sample_field(field, resolution);
  MeshBuilder builder(grid, level, refine_tol);
  const int res = resolution;

  auto point_id = [res](int i, int j, int k) { return (i * res + j) * res + k; };

  for (int i = 0; i + 1 < res; ++i) {
    for (int j = 0; j + 1 < res; ++j) {
      for (int k = 0; k + 1 < res; ++k) {
        if (!grid.cell_valid(i, j, k)) continue;
        // Anchor the cell diagonal at the corner nearest the origin; the
        // resolution is odd, so cells never straddle a coordinate plane and
        // the choice is unambiguous and symmetry-equivariant.
        const int anchor[3] = {
            std::abs(grid.coord(i)) <= std::abs(grid.coord(i + 1)) ? 0 : 1,
            std::abs(grid.coord(j)) <= std::abs(grid.coord(j + 1)) ? 0 : 1,
            std::abs(grid.coord(k)) <= std::abs(grid.coord(k + 1)) ? 0 : 1};
        auto corner = [&](int ux, int uy, int uz) {
          return point_id(i + (anchor[0] ^ ux), j + (anchor[1] ^ uy), k + (anchor[2] ^ uz));
        };
        for (const auto& order : kAxisOrders) {
          int u[3] = {0, 0, 0};
          std::array<int, 4> tet;
          tet[0] = corner(0, 0, 0);
          u[order[0]] = 1;
          tet[1] = corner(u[0], u[1], u[2]);
          u[order[1]] = 1;
          tet[2] = corner(u[0], u[1], u[2]);
          tet[3] = corner(1, 1, 1);
          builder.march_tet(tet);
        }
      }
    }
  }

  if (builder.triangles.empty()) {
    throw std::domain_error("no level-surface crossings found for " +
                            std::string(to_string(field)) + " at level " +
                            std::to_string(level));
  }

  // Drop vertices orphaned by clipping and renumber in stable order.
  std::vector<int> remap(builder.vertices.size(), -1);
  for (const auto& tri : builder.triangles) {
    for (int v : tri) remap[v] = 0;
  }
  TriangleMesh mesh;
  for (std::size_t v = 0; v < builder.vertices.size(); ++v) {
    if (remap[v] == 0) {
      remap[v] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(builder.vertices[v]);
      mesh.residual.push_back(builder.residual[v]);
      mesh.from_clip.push_back(builder.from_clip[v]);
    }
  }
  mesh.triangles.reserve(builder.triangles.size());
  for (const auto& tri : builder.triangles) {
    mesh.triangles.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
  }
  return mesh;
}

void export_obj(const TriangleMesh& mesh, const std::string& path) {
  if (mesh.vertices.empty() || mesh.triangles.empty()) {
    throw std::invalid_argument("export_obj: refusing to write empty mesh to " + path);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("export_obj: cannot open " + path);
  char line[192];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(line, sizeof(line), "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out << line;
  }
  for (const auto& tri : mesh.triangles) {
    std::snprintf(line, sizeof(line), "f %d %d %d\n", tri[0] + 1, tri[1] + 1, tri[2] + 1);
    out << line;
  }
  out.flush();
  if (!out) throw std::runtime_error("export_obj: write failed for " + path);
}

void export_csv(const TriangleMesh& mesh, const std::string& path) {
  if (mesh.vertices.empty()) {
    throw std::invalid_argument("export_csv: refusing to write empty mesh to " + path);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("export_csv: cannot open " + path);
  out << "x,y,z,residual\n";
  char line[256];
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", mesh.vertices[v].x(),
                  mesh.vertices[v].y(), mesh.vertices[v].z(), mesh.residual[v]);
    out << line;
  }
  out.flush();
  if (!out) throw std::runtime_error("export_csv: write failed for " + path);
}

ConvexityReport::Verdict ConvexityReport::verdict() const {
  const bool no_convex = violations_convex.empty();
  const bool no_concave = violations_concave.empty();
  if (no_convex && no_concave) return Verdict::affine_consistent;
  if (no_convex) return Verdict::convex_consistent;
  if (no_concave) return Verdict::concave_consistent;
  return Verdict::neither;
}

ConvexityReport convexity_witness(ScalarFieldId field, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("convexity_witness: trials must be >= 1");
  ConvexityReport report;
  report.field = field;
  report.trials = trials;
  report.seed = seed;

  constexpr double kGapTol = 1e-9;
  auto midpoint_gap = [&](const CorrelationVector& x, const CorrelationVector& y) {
    const CorrelationVector mid(0.5 * (x.c1 + y.c1), 0.5 * (x.c2 + y.c2),
                                0.5 * (x.c3 + y.c3));
    return MidpointViolation{
        x, y, field_value(field, mid) - 0.5 * (field_value(field, x) + field_value(field, y))};
  };
  auto record = [&](const MidpointViolation& v) {
    if (v.gap > kGapTol) report.violations_convex.push_back(v);
    if (v.gap < -kGapTol) report.violations_concave.push_back(v);
  };

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const CorrelationVector x = sample_uniform_physical(rng);
    const CorrelationVector y = sample_uniform_physical(rng);
    record(midpoint_gap(x, y));
  }

  // Two classical states on different axes mix to positive discord, and a
  // positive-discord state mixed with its c2-mirror lands on an axis.
  report.witness_axis_mix = midpoint_gap({0.5, 0.0, 0.0}, {0.0, 0.5, 0.0});
  record(report.witness_axis_mix);
  report.witness_sign_mix = midpoint_gap({0.6, 0.3, 0.0}, {0.6, -0.3, 0.0});
  record(report.witness_sign_mix);
  return report;
}

}  // namespace belldiag
