#include <algorithm>
#include <numeric>
#include <string>

#include "tsurf/surface.hpp"

namespace tsurf {

namespace {

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  if (cross((b - a).eval(), (p - a).eval()).sign() != 0) return false;
  return dot((p - a).eval(), (p - b).eval()).sign() <= 0;
}

// Closed segments [a,b] and [c,d] share a point.
bool segments_meet(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = side(b - a, a, c), o2 = side(b - a, a, d);
  const int o3 = side(d - c, c, a), o4 = side(d - c, c, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
         (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d));
}

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

void check_polygon(const Polygon& poly, int index) {
  const std::size_t n = poly.size();
  const std::string where = "polygon " + std::to_string(index);
  if (n < 3) fail(ErrorCode::malformed_polygon, where + " has fewer than 3 vertices");
  FieldElem area(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(poly.edge(i))) fail(ErrorCode::malformed_polygon, where + " has a zero-length edge");
    area += cross(poly.vertices[i], poly.vertices[(i + 1) % n]);
  }
  if (area.sign() <= 0) fail(ErrorCode::malformed_polygon, where + " is not positively oriented");
  for (std::size_t i = 0; i < n; ++i) {
    // Adjacent edges may only share their common vertex.
    const Vec2 e = poly.edge(i), f = poly.edge((i + 1) % n);
    if (parallel(e, f) && dot(e, f).sign() < 0) fail(ErrorCode::malformed_polygon, where + " folds back on itself");
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_meet(poly.vertices[i], poly.vertices[(i + 1) % n], poly.vertices[j], poly.vertices[(j + 1) % n]))
        fail(ErrorCode::malformed_polygon, where + " is not simple");
    }
  }
}

// Does the sweep from direction a counterclockwise to b (exclusive) pass
// the positive x-axis?
bool sweep_passes_axis(const Vec2& a, const Vec2& b) {
  const Vec2 r(FieldElem(1), FieldElem(0));
  const Vec2 rr(dot(a, r), cross(a, r));
  const Vec2 bb(dot(a, b), cross(a, b));
  return compare_direction(rr, bb) < 0;
}

}  // namespace

PolygonComplex::PolygonComplex(std::vector<Polygon> polygons, std::vector<Gluing> gluings,
                               std::vector<VertexRef> marked)
    : polygons_(std::move(polygons)), gluings_(std::move(gluings)), marked_(std::move(marked)) {
  if (polygons_.empty()) fail(ErrorCode::malformed_polygon, "complex has no polygons");
  for (std::size_t p = 0; p < polygons_.size(); ++p) {
    for (const auto& v : polygons_[p].vertices) tower_ = common_tower(tower_, tower_of(v));
    check_polygon(polygons_[p], static_cast<int>(p));
  }

  const EdgeRef none{-1, -1};
  partner_.resize(polygons_.size());
  for (std::size_t p = 0; p < polygons_.size(); ++p) partner_[p].assign(polygons_[p].size(), none);
  auto valid = [&](EdgeRef e) {
    return e.polygon >= 0 && e.polygon < static_cast<int>(polygons_.size()) && e.edge >= 0 &&
           e.edge < static_cast<int>(polygons_[e.polygon].size());
  };
  for (const auto& g : gluings_) {
    if (!valid(g.a) || !valid(g.b)) fail(ErrorCode::unmatched_edge, "gluing refers to a missing edge");
    if (g.a == g.b) fail(ErrorCode::unmatched_edge, "edge glued to itself");
    for (EdgeRef e : {g.a, g.b})
      if (partner_[e.polygon][e.edge] != none)
        fail(ErrorCode::unmatched_edge,
             "edge " + std::to_string(e.edge) + " of polygon " + std::to_string(e.polygon) + " glued twice");
    const Vec2 va = polygons_[g.a.polygon].edge(g.a.edge), vb = polygons_[g.b.polygon].edge(g.b.edge);
    if (!is_zero((va + vb).eval()))
      fail(ErrorCode::non_parallel_gluing, "glued edges " + to_string(va) + " and " + to_string(vb) +
                                               " are not opposite translates");
    partner_[g.a.polygon][g.a.edge] = g.b;
    partner_[g.b.polygon][g.b.edge] = g.a;
  }
  for (std::size_t p = 0; p < polygons_.size(); ++p)
    for (std::size_t e = 0; e < polygons_[p].size(); ++e)
      if (partner_[p][e] == none)
        fail(ErrorCode::unmatched_edge,
             "edge " + std::to_string(e) + " of polygon " + std::to_string(p) + " is not glued");

  std::vector<int> parent(polygons_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : gluings_) parent[root(g.a.polygon)] = root(g.b.polygon);
  for (std::size_t p = 0; p < polygons_.size(); ++p)
    if (root(static_cast<int>(p)) != root(0)) fail(ErrorCode::not_connected, "polygon complex is not connected");

  // Vertex classes by walking counterclockwise around each corner.
  vertex_class_.resize(polygons_.size());
  for (std::size_t p = 0; p < polygons_.size(); ++p) vertex_class_[p].assign(polygons_[p].size(), -1);
  for (std::size_t p = 0; p < polygons_.size(); ++p) {
    for (std::size_t i = 0; i < polygons_[p].size(); ++i) {
      if (vertex_class_[p][i] >= 0) continue;
      ConePointDesc cls;
      cls.turns = 0;
      const int id = static_cast<int>(classes_.size());
      VertexRef cur{static_cast<int>(p), static_cast<int>(i)};
      while (vertex_class_[cur.polygon][cur.vertex] < 0) {
        vertex_class_[cur.polygon][cur.vertex] = id;
        cls.corners.push_back(cur);
        const Polygon& poly = polygons_[cur.polygon];
        const int n = static_cast<int>(poly.size());
        const int in = (cur.vertex + n - 1) % n;
        if (sweep_passes_axis(poly.edge(cur.vertex), -poly.edge(in))) ++cls.turns;
        const EdgeRef next = partner_[cur.polygon][in];
        cur = {next.polygon, next.edge};
      }
      classes_.push_back(std::move(cls));
    }
  }
  for (const auto& m : marked_) {
    if (m.polygon < 0 || m.polygon >= static_cast<int>(polygons_.size()) || m.vertex < 0 ||
        m.vertex >= static_cast<int>(polygons_[m.polygon].size()))
      fail(ErrorCode::malformed_polygon, "marked point refers to a missing vertex");
    classes_[vertex_class_[m.polygon][m.vertex]].marked = true;
  }
}

EdgeRef PolygonComplex::partner(EdgeRef e) const { return partner_.at(e.polygon).at(e.edge); }

std::vector<ConePointDesc> cone_points(const PolygonComplex& c) { return c.vertex_classes(); }

int genus(const PolygonComplex& c) {
  int excess = 0;
  for (const auto& cls : c.vertex_classes()) excess += cls.turns - 1;
  return (excess + 2) / 2;
}

PolygonComplex transform(const PolygonComplex& c, const Mat2& m) {
  if ((m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).sign() <= 0)
    throw Error(ErrorCode::constraint_violation, "transform needs a positive determinant");
  std::vector<Polygon> polys = c.polygons();
  for (auto& p : polys)
    for (auto& v : p.vertices) v = (m * v).eval();
  return PolygonComplex(std::move(polys), c.gluings(), c.marked());
}

}  // namespace tsurf
