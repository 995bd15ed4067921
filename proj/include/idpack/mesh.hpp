#ifndef IDPACK_MESH_HPP
#define IDPACK_MESH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "idpack/errors.hpp"

namespace idpack {

using Index = std::int32_t;

// An edge e together with its two incident faces. Roles follow the
// quadrilateral picture: the diagonal runs vi -> vj, vk is the apex of the
// left face (vi,vj,vk), vl the apex of the right face (vj,vi,vl). Vertices
// may coincide on self-glued complexes. The left face is the one containing
// the lower half-edge id, which makes the decomposition deterministic.
struct Hinge {
  Index edge = -1;
  Index left_face = -1, right_face = -1;
  Index vk = -1, vi = -1, vl = -1, vj = -1;
  Index edge_ki = -1, edge_il = -1, edge_lj = -1, edge_jk = -1;
  // half-edge of the diagonal inside the left face
  Index diagonal_he = -1;
};

// Triangulation of a closed oriented marked surface as a labelled
// Delta-complex: faces are ordered vertex triples, half-edge h = 3*face +
// corner runs from corner to the next corner, and `twin` is a fixed-point
// free involution gluing half-edges in opposite directions. Self-glued
// faces, multi-edges and loop edges are all representable. Values are
// immutable after build; flip() returns a new value.
class Triangulation {
public:
  Triangulation() = default;

  // Validates and indexes the complex. Throws BadMatchingError,
  // EulerMismatchError or DanglingVertexError.
  static Triangulation build(Index num_vertices,
                             std::vector<std::array<Index, 3>> faces,
                             std::vector<Index> twins);

  Index num_vertices() const { return num_vertices_; }
  Index num_faces() const { return static_cast<Index>(faces_.size()); }
  Index num_edges() const { return num_edges_; }
  Index num_half_edges() const { return 3 * num_faces(); }
  int euler_characteristic() const {
    return static_cast<int>(num_vertices_) - num_edges_ + num_faces();
  }

  static Index next(Index h) { return 3 * (h / 3) + (h + 1) % 3; }
  static Index prev(Index h) { return 3 * (h / 3) + (h + 2) % 3; }
  static Index face_of(Index h) { return h / 3; }

  Index origin(Index h) const { return faces_[h / 3][h % 3]; }
  Index head(Index h) const { return origin(next(h)); }
  Index twin(Index h) const { return twins_[h]; }
  Index edge_of(Index h) const { return edge_of_he_[h]; }

  // A representative half-edge of the edge; min(rep, twin(rep)) is the
  // deterministic "lower" half-edge used for hinge orientation.
  Index half_edge_of(Index e) const { return he_of_edge_[e]; }
  std::pair<Index, Index> edge_endpoints(Index e) const;

  Hinge hinge_at(Index e) const;

  // An edge is flippable unless its two half-edges lie in one face (the
  // inner edge of a self-folded triangle has no diagonal switch).
  bool flippable(Index e) const;

  // Diagonal switch of the hinge at e. The edge id of the diagonal is
  // preserved; all other edge ids are untouched. Throws
  // UnflippableEdgeError when flippable(e) is false.
  Triangulation flip(Index e) const;

  const std::vector<std::array<Index, 3>>& faces() const { return faces_; }
  const std::vector<Index>& twins() const { return twins_; }
  const std::vector<Index>& edge_ids() const { return edge_of_he_; }

  bool operator==(const Triangulation& other) const {
    return num_vertices_ == other.num_vertices_ && faces_ == other.faces_ &&
           twins_ == other.twins_ && edge_of_he_ == other.edge_of_he_;
  }

private:
  Index num_vertices_ = 0;
  Index num_edges_ = 0;
  std::vector<std::array<Index, 3>> faces_;
  std::vector<Index> twins_;
  std::vector<Index> edge_of_he_;   // half-edge -> edge id
  std::vector<Index> he_of_edge_;   // edge id -> representative half-edge
};

// Breadth-first search in the flip graph for a sequence of edge flips
// turning `from` into `to` (exact labelled equality). Throws SearchCapError
// once `cap` distinct triangulations have been expanded.
std::vector<Index> flip_distance_path(const Triangulation& from,
                                      const Triangulation& to,
                                      int cap = 20000);

}  // namespace idpack

#endif
