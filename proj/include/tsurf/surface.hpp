#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tsurf/geometry.hpp"
#include "tsurf/module.hpp"

namespace tsurf {

struct Polygon {
  std::vector<Vec2> vertices;  // counterclockwise
  Vec2 edge(std::size_t i) const { return vertices[(i + 1) % vertices.size()] - vertices[i]; }
  std::size_t size() const { return vertices.size(); }
};

// Edge i of a polygon runs from vertex i to vertex i+1.
struct EdgeRef {
  int polygon = 0;
  int edge = 0;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct VertexRef {
  int polygon = 0;
  int vertex = 0;
  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

struct Gluing {
  EdgeRef a, b;
};

struct ConePointDesc {
  std::vector<VertexRef> corners;  // in counterclockwise order around the point
  int turns = 1;                   // angle is 2 pi turns
  bool marked = false;
  bool regular() const { return turns == 1; }
};

struct Triangle {
  std::array<Vec2, 3> v;
  std::array<int, 3> vertex_class;  // class of v[i]
  std::array<std::pair<int, int>, 3> neighbour;  // (triangle, edge) across edge i
};

class PolygonComplex {
 public:
  // Validates: simple positively oriented polygons, every edge glued once to
  // an edge with the opposite vector, connected.
  PolygonComplex(std::vector<Polygon> polygons, std::vector<Gluing> gluings, std::vector<VertexRef> marked = {});

  const std::vector<Polygon>& polygons() const { return polygons_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  const std::vector<VertexRef>& marked() const { return marked_; }
  EdgeRef partner(EdgeRef e) const;
  TowerPtr tower() const { return tower_; }

  int vertex_class(VertexRef v) const { return vertex_class_.at(v.polygon).at(v.vertex); }
  const std::vector<ConePointDesc>& vertex_classes() const { return classes_; }
  std::size_t edge_count() const { return gluings_.size(); }

 private:
  std::vector<Polygon> polygons_;
  std::vector<Gluing> gluings_;
  std::vector<VertexRef> marked_;
  std::vector<std::vector<EdgeRef>> partner_;
  std::vector<std::vector<int>> vertex_class_;
  std::vector<ConePointDesc> classes_;
  TowerPtr tower_;
};

// Singular or marked vertex classes.
std::vector<ConePointDesc> cone_points(const PolygonComplex& c);
// 2 - 2g from the cone angles.
int genus(const PolygonComplex& c);

// Triangulation with vertices at polygon vertices (ear clipping); gluings
// between triangles follow the complex.
std::vector<Triangle> triangulate(const PolygonComplex& c);

struct HolonomyModules {
  ModuleDesc lambda;   // absolute
  ModuleDesc lambda0;  // relative to the vertex set
};
HolonomyModules holonomy_modules(const PolygonComplex& c);

struct SaddleConnection {
  Vec2 holonomy;
  int start = 0;  // vertex class (or singularity index for atlases)
  int end = 0;
  int multiplicity = 1;
};

struct SaddleConnectionSet {
  std::vector<SaddleConnection> connections;  // sorted by holonomy then endpoints
  FieldElem bound;
  bool truncated = false;

  // Distinct holonomy vectors.
  std::vector<Vec2> vectors() const;
};

// Every saddle connection of length at most `bound`, by unfolding triangles.
SaddleConnectionSet saddle_connections(const PolygonComplex& c, const FieldElem& bound);

struct OrigamiVerdict {
  bool is_origami = false;
  std::optional<Mat2> affine_map;  // sends the lattice basis to the standard basis
  std::optional<std::array<Vec2, 2>> lattice_basis;
  ModuleDesc lambda0;
};
OrigamiVerdict detect_origami(const PolygonComplex& c);

// Applies a linear map to all polygon vertices (det > 0).
PolygonComplex transform(const PolygonComplex& c, const Mat2& m);

}  // namespace tsurf
