#ifndef FRIS_GEOMETRY_HPP
#define FRIS_GEOMETRY_HPP

#include <optional>
#include <utility>
#include <vector>

namespace fris {

struct Point {
  double x = 0.0;
  double z = 0.0;
};

// Rectangular aperture [0, width_x] x [0, width_z], in meters.
struct Aperture {
  double width_x = 0.0;
  double width_z = 0.0;

  bool contains(const Point& p) const {
    return p.x >= 0.0 && p.x <= width_x && p.z >= 0.0 && p.z <= width_z;
  }
};

// Ordered element coordinates. grid_dims is present when the positions
// form a regular (m_x, m_z) grid, row-major with x fastest.
struct Layout {
  std::vector<Point> positions;
  std::optional<std::pair<int, int>> grid_dims;

  int size() const { return static_cast<int>(positions.size()); }
};

// ON subset in index-set form; indices sorted ascending, distinct.
struct SelectionMask {
  std::vector<int> on_indices;

  int cardinality() const { return static_cast<int>(on_indices.size()); }
};

struct SpacingConstraint {
  double d_min = 0.0;
};

struct ProjectionResult {
  std::vector<Point> positions;
  bool feasible = true;  // false when spacing repair hit the pass cap
};

// Cell-centered m_x x m_z candidate grid over the aperture, row-major
// with x fastest. Pitch is width/count per axis.
Layout grid_layout(const Aperture& aperture, int m_x, int m_z);

// All pairwise distances among ON elements >= d_min (vacuously true for
// fewer than two ON elements).
bool min_spacing_ok(const Layout& layout, const SelectionMask& mask,
                    const SpacingConstraint& c);

// Indices of the m_o largest scores; ties broken toward the lowest index.
SelectionMask selection_from_scores(const std::vector<double>& scores, int m_o);

// Rectangular ON block [i0, i0+m_x) x [j0, j0+m_z) under the row-major
// index map of an (grid_mx, grid_mz) grid.
SelectionMask selection_from_anchor(int i0, int j0, int mask_mx, int mask_mz,
                                    int grid_mx, int grid_mz);

// Clamp into the aperture, then restore pairwise spacing by symmetric
// push-apart passes (cap 50). Idempotent on feasible input.
ProjectionResult project_positions(const std::vector<Point>& positions,
                                   const Aperture& aperture,
                                   const SpacingConstraint& c);

// Fixed m x m lattice at exact lambda/2 pitch, all elements ON.
std::pair<Layout, SelectionMask> ris_baseline_layout(int m_side,
                                                     double wavelength);

}  // namespace fris

#endif  // FRIS_GEOMETRY_HPP
