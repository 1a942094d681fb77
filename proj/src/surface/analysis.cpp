#include <algorithm>
#include <map>
#include <queue>

#include "tsurf/surface.hpp"

namespace tsurf {

namespace {

bool in_closed_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  return side(b - a, a, p) >= 0 && side(c - b, b, p) >= 0 && side(a - c, c, p) >= 0;
}

// Ear clipping; returns vertex index triples, counterclockwise.
std::vector<std::array<int, 3>> ear_clip(const Polygon& poly) {
  std::vector<int> idx(poly.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> out;
  while (idx.size() > 3) {
    const std::size_t m = idx.size();
    bool clipped = false;
    for (std::size_t k = 0; k < m && !clipped; ++k) {
      const int a = idx[(k + m - 1) % m], b = idx[k], c = idx[(k + 1) % m];
      const Vec2 &pa = poly.vertices[a], &pb = poly.vertices[b], &pc = poly.vertices[c];
      if (cross((pb - pa).eval(), (pc - pb).eval()).sign() <= 0) continue;
      bool blocked = false;
      for (int o : idx) {
        if (o == a || o == b || o == c) continue;
        if (in_closed_triangle(poly.vertices[o], pa, pb, pc)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      out.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
    }
    if (!clipped) throw Error(ErrorCode::malformed_polygon, "polygon admits no ear");
  }
  out.push_back({idx[0], idx[1], idx[2]});
  return out;
}

}  // namespace

std::vector<Triangle> triangulate(const PolygonComplex& c) {
  std::vector<Triangle> tris;
  // Triangle edge carrying each polygon edge.
  std::map<EdgeRef, std::pair<int, int>> on_edge;
  for (std::size_t p = 0; p < c.polygons().size(); ++p) {
    const Polygon& poly = c.polygons()[p];
    const int n = static_cast<int>(poly.size());
    std::map<std::pair<int, int>, std::pair<int, int>> diagonals;
    for (const auto& tri : ear_clip(poly)) {
      Triangle t;
      const int ti = static_cast<int>(tris.size());
      for (int k = 0; k < 3; ++k) {
        t.v[k] = poly.vertices[tri[k]];
        t.vertex_class[k] = c.vertex_class({static_cast<int>(p), tri[k]});
        t.neighbour[k] = {-1, -1};
      }
      tris.push_back(std::move(t));
      for (int k = 0; k < 3; ++k) {
        const int a = tri[k], b = tri[(k + 1) % 3];
        if (b == (a + 1) % n) {
          on_edge[{static_cast<int>(p), a}] = {ti, k};
        } else {
          const auto key = std::minmax(a, b);
          auto it = diagonals.find(key);
          if (it == diagonals.end()) {
            diagonals[key] = {ti, k};
          } else {
            tris[ti].neighbour[k] = it->second;
            tris[it->second.first].neighbour[it->second.second] = {ti, k};
          }
        }
      }
    }
  }
  for (const auto& [e, te] : on_edge) tris[te.first].neighbour[te.second] = on_edge.at(c.partner(e));
  return tris;
}

HolonomyModules holonomy_modules(const PolygonComplex& c) {
  const int nv = static_cast<int>(c.vertex_classes().size());
  struct Edge {
    int from, to;
    Vec2 vec;
  };
  std::vector<Edge> edges;
  for (const auto& g : c.gluings()) {
    const Polygon& poly = c.polygons()[g.a.polygon];
    const int n = static_cast<int>(poly.size());
    edges.push_back({c.vertex_class({g.a.polygon, g.a.edge}), c.vertex_class({g.a.polygon, (g.a.edge + 1) % n}),
                     poly.edge(g.a.edge)});
  }
  std::vector<Vec2> rel;
  for (const auto& e : edges) rel.push_back(e.vec);
  for (const auto& t : triangulate(c))
    for (int k = 0; k < 3; ++k) rel.push_back(t.v[(k + 1) % 3] - t.v[k]);

  // Spanning tree with developed positions; each non-tree edge closes a cycle.
  std::vector<std::vector<int>> incident(nv);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    incident[edges[i].from].push_back(static_cast<int>(i));
    incident[edges[i].to].push_back(static_cast<int>(i));
  }
  std::vector<std::optional<Vec2>> pos(nv);
  std::vector<bool> tree(edges.size(), false);
  pos[0] = Vec2(FieldElem(0), FieldElem(0));
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int ei : incident[u]) {
      const Edge& e = edges[ei];
      const int w = e.from == u ? e.to : e.from;
      if (pos[w]) continue;
      pos[w] = e.from == u ? (*pos[u] + e.vec).eval() : (*pos[u] - e.vec).eval();
      tree[ei] = true;
      q.push(w);
    }
  }
  std::vector<Vec2> abs;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!tree[i]) abs.push_back(*pos[edges[i].from] + edges[i].vec - *pos[edges[i].to]);
  return {make_module(std::move(abs)), make_module(std::move(rel))};
}

std::vector<Vec2> SaddleConnectionSet::vectors() const {
  std::vector<Vec2> out;
  for (const auto& s : connections)
    if (out.empty() || !equal(out.back(), s.holonomy)) out.push_back(s.holonomy);
  return out;
}

namespace {

struct Wedge {
  Vec2 lo, hi;  // counterclockwise from lo to hi, open at both ends
};

struct Key {
  Vec2 v;
  int start, end;
};

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const {
    if (int c = compare_lex(a.v, b.v)) return c < 0;
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  }
};

}  // namespace

SaddleConnectionSet saddle_connections(const PolygonComplex& c, const FieldElem& bound) {
  if (bound.sign() <= 0) throw Error(ErrorCode::constraint_violation, "length bound must be positive");
  const auto tris = triangulate(c);
  const FieldElem b2 = bound * bound;
  std::map<Key, int, KeyLess> found;
  auto emit = [&](const Vec2& v, int start, int end) {
    if (compare(squared_norm(v), b2) <= 0) ++found[Key{v, start, end}];
  };
  auto near = [&](const Vec2& a, const Vec2& b) {
    return compare(squared_distance_to_segment(Vec2(FieldElem(0), FieldElem(0)), a, b), b2) <= 0;
  };

  struct Task {
    int tri, edge;  // leaving `tri` across `edge`
    Vec2 offset;    // chart of `tri` to the developed plane
    Wedge w;
  };
  for (std::size_t ti = 0; ti < tris.size(); ++ti) {
    for (int k = 0; k < 3; ++k) {
      const Triangle& t = tris[ti];
      const int start = t.vertex_class[k];
      const Vec2 off = -t.v[k];
      const Vec2 lo = t.v[(k + 1) % 3] + off, hi = t.v[(k + 2) % 3] + off;
      emit(lo, start, t.vertex_class[(k + 1) % 3]);
      std::vector<Task> stack;
      if (near(lo, hi)) stack.push_back({static_cast<int>(ti), (k + 1) % 3, off, {lo, hi}});
      while (!stack.empty()) {
        Task task = std::move(stack.back());
        stack.pop_back();
        const Triangle& from = tris[task.tri];
        const auto [ni, j] = from.neighbour[task.edge];
        const Triangle& to = tris[ni];
        // Vertex j of `to` is glued to vertex edge+1 of `from`.
        const Vec2 noff = from.v[(task.edge + 1) % 3] + task.offset - to.v[j];
        const Vec2 C = to.v[(j + 2) % 3] + noff;
        const int s1 = cross(task.w.lo, C).sign(), s2 = cross(C, task.w.hi).sign();
        const Vec2 L = to.v[(j + 1) % 3] + noff, H = to.v[j] + noff;
        if (s1 > 0 && s2 > 0) {
          emit(C, start, to.vertex_class[(j + 2) % 3]);
          if (near(L, C)) stack.push_back({ni, (j + 1) % 3, noff, {task.w.lo, C}});
          if (near(C, H)) stack.push_back({ni, (j + 2) % 3, noff, {C, task.w.hi}});
        } else if (s1 <= 0) {
          if (near(C, H)) stack.push_back({ni, (j + 2) % 3, noff, task.w});
        } else {
          if (near(L, C)) stack.push_back({ni, (j + 1) % 3, noff, task.w});
        }
      }
    }
  }
  SaddleConnectionSet out;
  out.bound = bound;
  for (const auto& [key, mult] : found) out.connections.push_back({key.v, key.start, key.end, mult});
  return out;
}

OrigamiVerdict detect_origami(const PolygonComplex& c) {
  bool any = false;
  for (const auto& cls : c.vertex_classes()) any = any || !cls.regular() || cls.marked;
  if (!any) throw Error(ErrorCode::no_cone_points, "surface has no cone point and no marked point");
  OrigamiVerdict out;
  out.lambda0 = holonomy_modules(c).lambda0;
  if (out.lambda0.is_lattice() && out.lambda0.span_dim == 2) {
    const auto& b = *out.lambda0.lattice_basis;
    out.is_origami = true;
    out.lattice_basis = std::array<Vec2, 2>{b[0], b[1]};
    const FieldElem det = cross(b[0], b[1]);
    Mat2 inv;
    inv << b[1](1) / det, -b[1](0) / det, -b[0](1) / det, b[0](0) / det;
    out.affine_map = inv;
  }
  return out;
}

}  // namespace tsurf
