#include "idpack/mesh.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

namespace idpack {

Triangulation Triangulation::build(Index num_vertices,
                                   std::vector<std::array<Index, 3>> faces,
                                   std::vector<Index> twins) {
  if (faces.empty()) throw BadMatchingError("triangulation has no faces");
  if (num_vertices <= 0) throw DanglingVertexError("num_vertices must be positive");
  const Index nh = static_cast<Index>(3 * faces.size());
  if (static_cast<Index>(twins.size()) != nh)
    throw BadMatchingError("twins size " + std::to_string(twins.size()) +
                           " does not match " + std::to_string(nh) +
                           " half-edges");

  Triangulation tri;
  tri.num_vertices_ = num_vertices;
  tri.faces_ = std::move(faces);
  tri.twins_ = std::move(twins);

  for (const auto& f : tri.faces_)
    for (Index v : f)
      if (v < 0 || v >= num_vertices)
        throw DanglingVertexError("face vertex index out of range");

  // twin must be a fixed-point free involution, and each pair must traverse
  // the glued edge in opposite directions (consistent orientation).
  for (Index h = 0; h < nh; ++h) {
    const Index t = tri.twins_[h];
    if (t < 0 || t >= nh)
      throw BadMatchingError("twin index out of range at half-edge " +
                             std::to_string(h));
    if (t == h)
      throw BadMatchingError("twin has a fixed point at half-edge " +
                             std::to_string(h));
    if (tri.twins_[t] != h)
      throw BadMatchingError("twin is not an involution at half-edge " +
                             std::to_string(h));
    if (tri.origin(h) != tri.head(t) || tri.head(h) != tri.origin(t))
      throw BadMatchingError(
          "twin pair (" + std::to_string(h) + "," + std::to_string(t) +
          ") does not traverse its edge in opposite directions");
  }

  // edge ids in ascending order of the lower half-edge
  tri.edge_of_he_.assign(nh, -1);
  for (Index h = 0; h < nh; ++h) {
    if (tri.edge_of_he_[h] >= 0) continue;
    const Index e = tri.num_edges_++;
    tri.edge_of_he_[h] = e;
    tri.edge_of_he_[tri.twins_[h]] = e;
    tri.he_of_edge_.push_back(h);
  }

  std::vector<bool> seen(num_vertices, false);
  for (const auto& f : tri.faces_)
    for (Index v : f) seen[v] = true;
  for (Index v = 0; v < num_vertices; ++v)
    if (!seen[v])
      throw DanglingVertexError("vertex " + std::to_string(v) +
                                " is not the origin of any half-edge");

  // vertex labels must be in bijection with the orbits of rotating around
  // an origin (twin of prev), otherwise n and the Euler characteristic lie
  {
    Index orbits = 0;
    std::vector<bool> visited(nh, false);
    for (Index h = 0; h < nh; ++h) {
      if (visited[h]) continue;
      ++orbits;
      Index cur = h;
      do {
        visited[cur] = true;
        cur = tri.twins_[prev(cur)];
      } while (cur != h);
    }
    if (orbits != num_vertices)
      throw EulerMismatchError(
          "declared " + std::to_string(num_vertices) + " vertices but the " +
          "gluing has " + std::to_string(orbits) + " vertex orbits");
  }

  const int chi = tri.euler_characteristic();
  if (chi % 2 != 0)
    throw EulerMismatchError("Euler characteristic " + std::to_string(chi) +
                             " is odd");
  if (chi - num_vertices >= 0)
    throw EulerMismatchError("punctured Euler characteristic " +
                             std::to_string(chi - num_vertices) +
                             " is not negative");

  return tri;
}

std::pair<Index, Index> Triangulation::edge_endpoints(Index e) const {
  const Index h = he_of_edge_[e];
  return {origin(h), head(h)};
}

Hinge Triangulation::hinge_at(Index e) const {
  const Index rep = he_of_edge_[e];
  const Index h = std::min(rep, twins_[rep]);
  const Index t = twins_[h];

  Hinge hg;
  hg.edge = e;
  hg.diagonal_he = h;
  hg.left_face = face_of(h);
  hg.right_face = face_of(t);
  hg.vi = origin(h);
  hg.vj = head(h);
  hg.vk = origin(prev(h));
  hg.vl = origin(prev(t));
  hg.edge_ki = edge_of_he_[prev(h)];
  hg.edge_jk = edge_of_he_[next(h)];
  hg.edge_il = edge_of_he_[next(t)];
  hg.edge_lj = edge_of_he_[prev(t)];
  return hg;
}

bool Triangulation::flippable(Index e) const {
  const Index h = he_of_edge_[e];
  return face_of(h) != face_of(twins_[h]);
}

Triangulation Triangulation::flip(Index e) const {
  if (!flippable(e))
    throw UnflippableEdgeError(
        "edge " + std::to_string(e) +
        " bounds a self-folded triangle and has no diagonal switch");

  const Hinge hg = hinge_at(e);
  const Index h = hg.diagonal_he;
  const Index t = twins_[h];
  const Index fL = face_of(h), fR = face_of(t);

  // old side half-edges and their outer twins
  const Index s_ki = prev(h), s_jk = next(h);
  const Index s_il = next(t), s_lj = prev(t);
  const Index o_ki = twins_[s_ki], o_jk = twins_[s_jk];
  const Index o_il = twins_[s_il], o_lj = twins_[s_lj];

  // slot map: where each old hinge side lands in the rebuilt faces
  // fL <- (vk, vi, vl): 3fL+0 runs k->i, 3fL+1 runs i->l, 3fL+2 runs l->k
  // fR <- (vl, vj, vk): 3fR+0 runs l->j, 3fR+1 runs j->k, 3fR+2 runs k->l
  auto relocate = [&](Index old_he) {
    if (old_he == s_ki) return 3 * fL + 0;
    if (old_he == s_il) return 3 * fL + 1;
    if (old_he == s_lj) return 3 * fR + 0;
    if (old_he == s_jk) return 3 * fR + 1;
    return old_he;  // outside the hinge
  };

  Triangulation out = *this;
  out.faces_[fL] = {hg.vk, hg.vi, hg.vl};
  out.faces_[fR] = {hg.vl, hg.vj, hg.vk};

  auto glue = [&](Index a, Index b) {
    out.twins_[a] = b;
    out.twins_[b] = a;
  };
  glue(3 * fL + 0, relocate(o_ki));
  glue(3 * fL + 1, relocate(o_il));
  glue(3 * fR + 0, relocate(o_lj));
  glue(3 * fR + 1, relocate(o_jk));
  glue(3 * fL + 2, 3 * fR + 2);

  out.edge_of_he_[3 * fL + 0] = hg.edge_ki;
  out.edge_of_he_[3 * fL + 1] = hg.edge_il;
  out.edge_of_he_[3 * fR + 0] = hg.edge_lj;
  out.edge_of_he_[3 * fR + 1] = hg.edge_jk;
  out.edge_of_he_[3 * fL + 2] = e;
  out.edge_of_he_[3 * fR + 2] = e;

  // refresh the edge -> half-edge table for everything that moved
  for (Index he : {3 * fL + 0, 3 * fL + 1, 3 * fL + 2, 3 * fR + 0,
                   3 * fR + 1, 3 * fR + 2})
    out.he_of_edge_[out.edge_of_he_[he]] = he;

  return out;
}

std::vector<Index> flip_distance_path(const Triangulation& from,
                                      const Triangulation& to, int cap) {
  if (from.num_vertices() != to.num_vertices() ||
      from.num_half_edges() != to.num_half_edges())
    throw SearchCapError("triangulations are not comparable");
  if (from == to) return {};

  using Key = std::pair<std::vector<std::array<Index, 3>>, std::vector<Index>>;
  auto key_of = [](const Triangulation& t) {
    return Key{t.faces(), t.twins()};
  };

  std::map<Key, std::pair<Key, Index>> parent;  // state -> (previous, edge)
  std::map<Key, Triangulation> store;
  std::deque<Key> queue;

  const Key root = key_of(from);
  store.emplace(root, from);
  parent.emplace(root, std::make_pair(root, Index{-1}));
  queue.push_back(root);
  const Key goal = key_of(to);

  int expanded = 0;
  while (!queue.empty()) {
    const Key cur = queue.front();
    queue.pop_front();
    if (++expanded > cap)
      throw SearchCapError("flip search cap of " + std::to_string(cap) +
                           " states exceeded");
    const Triangulation& tri = store.at(cur);
    for (Index e = 0; e < tri.num_edges(); ++e) {
      if (!tri.flippable(e)) continue;
      Triangulation nxt = tri.flip(e);
      Key k = key_of(nxt);
      if (parent.count(k)) continue;
      parent.emplace(k, std::make_pair(cur, e));
      if (k == goal) {
        std::vector<Index> path;
        Key at = k;
        while (true) {
          auto [prev, edge] = parent.at(at);
          if (edge < 0) break;
          path.push_back(edge);
          at = prev;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      store.emplace(k, std::move(nxt));
      queue.push_back(std::move(k));
    }
  }
  throw SearchCapError("flip search exhausted without reaching the target");
}

}  // namespace idpack
