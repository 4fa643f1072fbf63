#include "fris/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fris {

namespace {

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.z - b.z);
}

}  // namespace

Layout grid_layout(const Aperture& aperture, int m_x, int m_z) {
  if (m_x < 1 || m_z < 1)
    throw std::invalid_argument("grid_layout: counts must be >= 1");
  const double dx = aperture.width_x / m_x;
  const double dz = aperture.width_z / m_z;
  Layout layout;
  layout.positions.reserve(static_cast<std::size_t>(m_x) * m_z);
  for (int jz = 0; jz < m_z; ++jz)
    for (int ix = 0; ix < m_x; ++ix)
      layout.positions.push_back({(ix + 0.5) * dx, (jz + 0.5) * dz});
  layout.grid_dims = {m_x, m_z};
  return layout;
}

bool min_spacing_ok(const Layout& layout, const SelectionMask& mask,
                    const SpacingConstraint& c) {
  const auto& on = mask.on_indices;
  for (std::size_t a = 0; a < on.size(); ++a)
    for (std::size_t b = a + 1; b < on.size(); ++b)
      if (dist(layout.positions[on[a]], layout.positions[on[b]]) < c.d_min)
        return false;
  return true;
}

SelectionMask selection_from_scores(const std::vector<double>& scores,
                                    int m_o) {
  const int m = static_cast<int>(scores.size());
  if (m_o > m)
    throw std::invalid_argument("selection_from_scores: m_o exceeds M");
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  // Higher score wins; equal scores fall back to lower index.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores[a] > scores[b];
  });
  SelectionMask mask;
  mask.on_indices.assign(order.begin(), order.begin() + m_o);
  std::sort(mask.on_indices.begin(), mask.on_indices.end());
  return mask;
}

SelectionMask selection_from_anchor(int i0, int j0, int mask_mx, int mask_mz,
                                    int grid_mx, int grid_mz) {
  if (i0 < 0 || j0 < 0 || i0 + mask_mx > grid_mx || j0 + mask_mz > grid_mz)
    throw std::invalid_argument("selection_from_anchor: mask out of bounds");
  SelectionMask mask;
  mask.on_indices.reserve(static_cast<std::size_t>(mask_mx) * mask_mz);
  for (int jz = j0; jz < j0 + mask_mz; ++jz)
    for (int ix = i0; ix < i0 + mask_mx; ++ix)
      mask.on_indices.push_back(jz * grid_mx + ix);
  return mask;
}

ProjectionResult project_positions(const std::vector<Point>& positions,
                                   const Aperture& aperture,
                                   const SpacingConstraint& c) {
  constexpr int kMaxPasses = 50;
  ProjectionResult res;
  res.positions = positions;
  auto clamp_all = [&] {
    for (auto& p : res.positions) {
      p.x = std::clamp(p.x, 0.0, aperture.width_x);
      p.z = std::clamp(p.z, 0.0, aperture.width_z);
    }
  };
  clamp_all();
  if (c.d_min <= 0.0) return res;

  const std::size_t n = res.positions.size();
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool violated = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        Point& pa = res.positions[a];
        Point& pb = res.positions[b];
        double d = dist(pa, pb);
        if (d >= c.d_min) continue;
        violated = true;
        double ux, uz;
        if (d > 1e-15) {
          ux = (pb.x - pa.x) / d;
          uz = (pb.z - pa.z) / d;
        } else {
          // Coincident points: separate along x deterministically.
          ux = 1.0;
          uz = 0.0;
          d = 0.0;
        }
        const double push = 0.5 * (c.d_min - d) * (1.0 + 1e-9);
        pa.x -= push * ux;
        pa.z -= push * uz;
        pb.x += push * ux;
        pb.z += push * uz;
      }
    }
    clamp_all();
    if (!violated) return res;
  }
  // Final check after the last pass's clamping.
  Layout tmp{res.positions, std::nullopt};
  SelectionMask all;
  all.on_indices.resize(n);
  std::iota(all.on_indices.begin(), all.on_indices.end(), 0);
  res.feasible = min_spacing_ok(tmp, all, c);
  return res;
}

std::pair<Layout, SelectionMask> ris_baseline_layout(int m_side,
                                                     double wavelength) {
  if (m_side < 1)
    throw std::invalid_argument("ris_baseline_layout: m_side must be >= 1");
  Aperture ap{m_side * wavelength / 2.0, m_side * wavelength / 2.0};
  Layout layout = grid_layout(ap, m_side, m_side);
  SelectionMask mask;
  mask.on_indices.resize(static_cast<std::size_t>(m_side) * m_side);
  std::iota(mask.on_indices.begin(), mask.on_indices.end(), 0);
  return {std::move(layout), std::move(mask)};
}

}  // namespace fris
