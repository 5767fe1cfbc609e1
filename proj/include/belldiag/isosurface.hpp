// Scalar fields of the correlation measures over the state tetrahedron,
// level-surface extraction by marching tetrahedra with bisection-refined
// crossings, mesh export, and midpoint convexity probing.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "belldiag/state.hpp"

namespace belldiag {

enum class ScalarFieldId { discord, classical, mutual_info, concurrence, eof };

const char* to_string(ScalarFieldId field);
std::optional<ScalarFieldId> field_from_string(std::string_view name);

/// Continuous extension of the measure over the whole cube [-1,1]^3:
/// entropy terms keep lambda log2 lambda only for lambda > 0, so the value
/// agrees with the measure on the tetrahedron and extends continuously
/// across its boundary.
double field_value(ScalarFieldId field, const CorrelationVector& c);

/// Maximum of the field over the tetrahedron (2 for mutual information,
/// 1 otherwise); the minimum is 0 for every field.
double field_max(ScalarFieldId field);

/// Field values on a uniform grid over [-1,1]^3. Odd resolutions keep the
/// origin and the axes on grid points.
struct FieldGrid {
  ScalarFieldId field = ScalarFieldId::discord;
  int resolution = 0;
  std::vector<double> values;  // index (i*res + j)*res + k

  double coord(int i) const;  // exactly antisymmetric: coord(res-1-i) = -coord(i)
  Vec3 point(int i, int j, int k) const { return {coord(i), coord(j), coord(k)}; }
  double value(int i, int j, int k) const {
    return values[(static_cast<std::size_t>(i) * resolution + j) * resolution + k];
  }
  /// False iff the cell with lowest corner (i,j,k) provably cannot meet the
  /// tetrahedron (some lambda_ab is negative on the whole cell).
  bool cell_valid(int i, int j, int k) const;
};

FieldGrid sample_field(ScalarFieldId field, int resolution);

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> residual;        // |field(v) - level| per vertex
  std::vector<std::uint8_t> from_clip; // 1 for vertices created by clipping against T

  double max_residual_nonclip() const;
  std::size_t clip_vertex_count() const;
  int component_count() const;  // connected components via shared vertices
};

/// Marching tetrahedra on the 6-tetrahedra-per-cube decomposition of valid
/// cells. Crossing points are located by bisection along each crossing edge
/// until |field - level| <= refine_tol (the discord field has creases where
/// linear interpolation misplaces vertices). Triangles are clipped against
/// the four half-spaces lambda_ab >= 0; clip-generated vertices are
/// flagged. Throws if no crossings are found.
TriangleMesh extract_level_surface(ScalarFieldId field, double level, int resolution,
                                   double refine_tol = 1e-8);

/// OBJ: `v x y z` lines then 1-based `f i j k` lines. CSV: header
/// x,y,z,residual, one vertex per row. 17 significant digits; identical
/// meshes export byte-identically. Empty meshes are an error and no file
/// is written.
void export_obj(const TriangleMesh& mesh, const std::string& path);
void export_csv(const TriangleMesh& mesh, const std::string& path);

struct MidpointViolation {
  CorrelationVector x;
  CorrelationVector y;
  double gap = 0.0;  // field((x+y)/2) - (field(x)+field(y))/2
};

struct ConvexityReport {
  enum class Verdict { convex_consistent, concave_consistent, neither, affine_consistent };

  ScalarFieldId field = ScalarFieldId::discord;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<MidpointViolation> violations_convex;   // gap > 1e-9
  std::vector<MidpointViolation> violations_concave;  // gap < -1e-9
  // Deterministic witness pairs, always evaluated: mixing classical states
  // on two axes, and mixing a state with its c2-mirror.
  MidpointViolation witness_axis_mix;  // ((0.5,0,0),(0,0.5,0))
  MidpointViolation witness_sign_mix;  // ((0.6,0.3,0),(0.6,-0.3,0))

  Verdict verdict() const;
};

/// Random midpoint tests over physical pairs plus the two deterministic
/// discord witnesses. Gaps are recorded only beyond 1e-9.
ConvexityReport convexity_witness(ScalarFieldId field, int trials, std::uint64_t seed);

}  // namespace belldiag
