#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "helmdpg/errors.hpp"
#include "helmdpg/refelem/bases.hpp"

namespace helmdpg {

/// Uniform n x n mesh of the unit square with global trace numbering:
/// vertices first, then horizontal edges, then vertical edges.
///   vertex (i, j)          at (i h, j h),            0 <= i, j <= n
///   horizontal edge (i, j) from (i h, j h) to ((i+1) h, j h), 0 <= i < n, 0 <= j <= n
///   vertical edge (i, j)   from (i h, j h) to (i h, (j+1) h), 0 <= i <= n, 0 <= j < n
struct MeshSpec {
  int n = 0;
  double h = 0.0;

  std::size_t vertex_count() const { return static_cast<std::size_t>(n + 1) * (n + 1); }
  std::size_t hedge_count() const { return static_cast<std::size_t>(n) * (n + 1); }
  std::size_t vedge_count() const { return static_cast<std::size_t>(n) * (n + 1); }
  std::size_t dof_count() const { return vertex_count() + hedge_count() + vedge_count(); }
  std::size_t element_count() const { return static_cast<std::size_t>(n) * n; }

  std::size_t vertex(int i, int j) const { return static_cast<std::size_t>(i + j * (n + 1)); }
  std::size_t hedge(int i, int j) const { return vertex_count() + static_cast<std::size_t>(i + j * n); }
  std::size_t vedge(int i, int j) const {
    return vertex_count() + hedge_count() + static_cast<std::size_t>(i + j * (n + 1));
  }

  bool is_vertex_dof(std::size_t dof) const { return dof < vertex_count(); }
  bool is_boundary_vertex(int i, int j) const { return i == 0 || j == 0 || i == n || j == n; }
  std::array<double, 2> vertex_position(int i, int j) const { return {i * h, j * h}; }

  /// Global trace DOFs of element (ei, ej) in local trace order.
  std::array<std::size_t, 8> element_dofs(int ei, int ej) const {
    return {vertex(ei, ej),     vertex(ei + 1, ej), vertex(ei + 1, ej + 1), vertex(ei, ej + 1),
            hedge(ei, ej),      hedge(ei, ej + 1),  vedge(ei, ej),          vedge(ei + 1, ej)};
  }

  /// Orientation sign (outward . global normal) of the element's local edges.
  static constexpr std::array<int, 4> edge_signs() {
    return {EdgeOrientation::sign(LocalEdge::Bottom), EdgeOrientation::sign(LocalEdge::Top),
            EdgeOrientation::sign(LocalEdge::Left), EdgeOrientation::sign(LocalEdge::Right)};
  }

  std::array<double, 2> element_origin(int ei, int ej) const { return {ei * h, ej * h}; }
};

inline MeshSpec build_mesh(int n) {
  if (n < 2) throw Error(ErrorKind::MeshTooSmall, "mesh needs n >= 2 elements per side, got " + std::to_string(n));
  return {n, 1.0 / n};
}

}  // namespace helmdpg
