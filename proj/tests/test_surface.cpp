#include <doctest.h>

#include <numeric>
#include <random>

#include "tsurf/origami.hpp"
#include "tsurf/surface.hpp"

using namespace tsurf;

namespace {

Vec2 v2(FieldElem x, FieldElem y) { return Vec2(std::move(x), std::move(y)); }

PolygonComplex square_torus(const FieldElem& side, bool mark = true) {
  Polygon sq{{v2(0, 0), v2(side, 0), v2(side, side), v2(0, side)}};
  std::vector<VertexRef> marked;
  if (mark) marked.push_back({0, 0});
  return PolygonComplex({sq}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}}, marked);
}

// Unit square cut into four triangles around an interior point p; p and the
// corner are marked.
PolygonComplex torus_with_point(const Vec2& p) {
  const Vec2 c[4] = {v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)};
  std::vector<Polygon> tris;
  for (int i = 0; i < 4; ++i) tris.push_back({{c[i], c[(i + 1) % 4], p}});
  std::vector<Gluing> g{{{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}};
  for (int i = 0; i < 4; ++i) g.push_back({{i, 1}, {(i + 1) % 4, 2}});
  return PolygonComplex(tris, g, {{0, 0}, {0, 2}});
}

// Centrally symmetric octagon with opposite sides glued.
PolygonComplex octagon(const std::vector<Vec2>& half_edges) {
  std::vector<Vec2> edges = half_edges;
  for (const auto& e : half_edges) edges.push_back(-e);
  Polygon poly;
  Vec2 cur = v2(0, 0);
  for (const auto& e : edges) {
    poly.vertices.push_back(cur);
    cur = cur + e;
  }
  std::vector<Gluing> g;
  for (int i = 0; i < 4; ++i) g.push_back({{0, i}, {0, i + 4}});
  return PolygonComplex({poly}, g);
}

Integer gcd_int(long a, long b) { return boost::multiprecision::gcd(Integer(a), Integer(b)); }

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(square_torus(1));
  Polygon sq{{v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)}};
  try {
    PolygonComplex({sq}, {{{0, 3}, {0, 2}}, {{0, 0}, {0, 1}}});
    FAIL("expected non-parallel gluing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_parallel_gluing);
  }
  try {
    PolygonComplex({sq}, {{{0, 0}, {0, 2}}});
    FAIL("expected unmatched edge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unmatched_edge);
  }
  try {
    PolygonComplex({sq, sq}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}, {{1, 0}, {1, 2}}, {{1, 1}, {1, 3}}});
    FAIL("expected not connected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_connected);
  }
  Polygon cw{{v2(0, 0), v2(0, 1), v2(1, 1), v2(1, 0)}};
  CHECK_THROWS_AS(PolygonComplex({cw}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}}), Error);
  CHECK_NOTHROW(to_surface(Origami({1, 0, 2}, {2, 1, 0})));
}

TEST_CASE("cone points") {
  auto t = cone_points(square_torus(1, false));
  REQUIRE(t.size() == 1);
  CHECK(t[0].turns == 1);
  CHECK(t[0].regular());
  CHECK(t[0].corners.size() == 4);

  auto l = cone_points(to_surface(Origami({1, 0, 2}, {2, 1, 0})));
  REQUIRE(l.size() == 1);
  CHECK(l[0].turns == 3);

  // Two squares side by side: each corner class gathers 4 right angles.
  auto two = cone_points(to_surface(Origami({1, 0}, {0, 1})));
  REQUIRE(two.size() == 2);
  CHECK(two[0].turns == 1);
  CHECK(two[1].turns == 1);

  // Octagon: all 8 corners meet, 6 pi of interior angle.
  auto q = quadratic_tower({2});
  const FieldElem r = q->gen("sqrt2");
  auto oc = octagon({v2(1, 0), v2(1, 1), v2(0, r), v2(-1, 1)});
  auto cp = cone_points(oc);
  REQUIRE(cp.size() == 1);
  CHECK(cp[0].turns == 3);
  CHECK(genus(oc) == 2);
}

TEST_CASE("Euler characteristic of the triangulation") {
  auto q = quadratic_tower({2});
  const FieldElem r = q->gen("sqrt2");
  for (const PolygonComplex& c :
       {square_torus(1), to_surface(Origami({1, 0, 2}, {2, 1, 0})), torus_with_point(v2(r - 1, Rational(1, 2))),
        octagon({v2(2, 0), v2(1, r), v2(-1, 2), v2(-r, 1)})}) {
    const auto tris = triangulate(c);
    const long faces = static_cast<long>(tris.size());
    const long edges = 3 * faces / 2;
    const long vertices = static_cast<long>(c.vertex_classes().size());
    CHECK(vertices - edges + faces == 2 - 2 * genus(c));
    for (const auto& t : tris) CHECK(cross((t.v[1] - t.v[0]).eval(), (t.v[2] - t.v[0]).eval()).sign() > 0);
  }
}

TEST_CASE("holonomy modules") {
  auto hm = holonomy_modules(square_torus(1));
  REQUIRE(hm.lambda.is_lattice());
  CHECK(hm.lambda.rank_z == 2);
  CHECK(equal((*hm.lambda.lattice_basis)[0], v2(1, 0)));
  CHECK(equal((*hm.lambda.lattice_basis)[1], v2(0, 1)));
  CHECK(hm.lambda0.rank_z == 2);

  auto q = quadratic_tower({2});
  const FieldElem r = q->gen("sqrt2");
  auto hp = holonomy_modules(torus_with_point(v2(r - 1, Rational(1, 2))));
  CHECK(hp.lambda.rank_z == 2);
  CHECK(hp.lambda0.rank_z == 3);
  CHECK_FALSE(hp.lambda0.is_lattice());
  for (const auto& g : hp.lambda.generators) CHECK(z_contains(hp.lambda0, g));

  auto hr = holonomy_modules(torus_with_point(v2(Rational(1, 3), Rational(1, 2))));
  CHECK(hr.lambda0.rank_z == 2);
  REQUIRE(hr.lambda0.is_lattice());
  // The lattice generated by Z^2 and (1/3, 1/2) has covolume 1/6.
  const auto& b = *hr.lambda0.lattice_basis;
  CHECK(abs(cross(b[0], b[1])) == FieldElem(Rational(1, 6)));
  for (const auto& g : hr.lambda0.generators) CHECK(z_contains(hr.lambda0, g));
  CHECK_FALSE(z_contains(hr.lambda0, v2(Rational(1, 2), 0)));
  CHECK(q_contains(hr.lambda0, v2(Rational(1, 2), 0)));
}

TEST_CASE("module ranks") {
  auto q = quadratic_tower({2, 3});
  const FieldElem a = q->gen("sqrt2"), b = q->gen("sqrt3");
  auto m = make_module({v2(1, 0), v2(a, 0), v2(2 + a, 0)});
  CHECK(m.span_dim == 1);
  CHECK(m.rank_z == 2);
  CHECK_FALSE(m.is_lattice());
  auto m2 = make_module({v2(2, 0), v2(3, 0)});
  REQUIRE(m2.is_lattice());
  CHECK(equal((*m2.lattice_basis)[0], v2(1, 0)));
  auto m3 = make_module({v2(1 + b, -1), v2(-(1 + a), 1), v2(-(1 + a * b), 1)});
  CHECK(m3.rank_z == 3);
}

TEST_CASE("saddle connections on the torus match the lattice-point count") {
  for (long B : {1L, 2L, 3L, 5L}) {
    auto sc = saddle_connections(square_torus(1), FieldElem(B));
    std::size_t expected = 0;
    for (long x = -B; x <= B; ++x)
      for (long y = -B; y <= B; ++y)
        if ((x || y) && x * x + y * y <= B * B && gcd_int(x, y) == 1) ++expected;
    CHECK(sc.connections.size() == expected);
    for (const auto& s : sc.connections) {
      CHECK(s.multiplicity == 1);
      REQUIRE(s.holonomy(0).is_rational());
      const Rational x = s.holonomy(0).rational(), y = s.holonomy(1).rational();
      CHECK(gcd_int(static_cast<long>(numerator(x)), static_cast<long>(numerator(y))) == 1);
    }
  }
  auto q = quadratic_tower({2});
  auto sc = saddle_connections(square_torus(1), q->gen("sqrt2"));
  CHECK(sc.connections.size() == 8);
  auto sc1 = saddle_connections(square_torus(1), FieldElem(1));
  CHECK(sc1.connections.size() == 4);
}

TEST_CASE("saddle connections on origamis are integral") {
  auto l = saddle_connections(to_surface(Origami({1, 0, 2}, {2, 1, 0})), FieldElem(1));
  bool e1 = false, e2 = false;
  for (const auto& v : l.vectors()) {
    e1 = e1 || equal(v, v2(1, 0));
    e2 = e2 || equal(v, v2(0, 1));
  }
  CHECK(e1);
  CHECK(e2);
  std::mt19937 rng(2);
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + static_cast<int>(rng() % 6);
    Permutation h(n), v(n);
    std::iota(h.begin(), h.end(), 0);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(h.begin(), h.end(), rng);
    std::shuffle(v.begin(), v.end(), rng);
    std::optional<Origami> o;
    try {
      o.emplace(h, v);
    } catch (const Error&) {
      continue;
    }
    auto sc = saddle_connections(to_surface(*o), FieldElem(3));
    for (const auto& s : sc.connections) {
      CHECK(s.holonomy(0).is_rational());
      CHECK(denominator(s.holonomy(0).rational()) == 1);
      CHECK(denominator(s.holonomy(1).rational()) == 1);
    }
  }
}

TEST_CASE("saddle connections: reversal symmetry on a non-lattice surface") {
  auto q = quadratic_tower({2});
  const FieldElem r = q->gen("sqrt2");
  auto sc = saddle_connections(octagon({v2(1, 0), v2(1, 1), v2(0, r), v2(-1, 1)}), FieldElem(3));
  CHECK(!sc.connections.empty());
  for (const auto& s : sc.connections) {
    bool found = false;
    for (const auto& t : sc.connections)
      found = found || (equal(t.holonomy, -s.holonomy) && t.start == s.end && t.end == s.start &&
                        t.multiplicity == s.multiplicity);
    CHECK(found);
    CHECK(compare(squared_norm(s.holonomy), FieldElem(9)) <= 0);
  }
}

TEST_CASE("origami detection") {
  auto q = quadratic_tower({2});
  const FieldElem r = q->gen("sqrt2");
  auto d = detect_origami(square_torus(r));
  CHECK(d.is_origami);
  REQUIRE(d.affine_map);
  CHECK((*d.affine_map)(0, 0) == 1 / r);
  CHECK((*d.affine_map)(1, 1) == 1 / r);
  CHECK((*d.affine_map)(0, 1).is_zero());
  CHECK((*d.affine_map)(1, 0).is_zero());

  auto dl = detect_origami(to_surface(Origami({1, 0, 2}, {2, 1, 0})));
  CHECK(dl.is_origami);
  CHECK(*dl.affine_map == Mat2::Identity());

  auto dp = detect_origami(torus_with_point(v2(r - 1, Rational(1, 2))));
  CHECK_FALSE(dp.is_origami);
  CHECK(dp.lambda0.rank_z > 2);

  try {
    detect_origami(square_torus(1, false));
    FAIL("expected no-cone-points");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_cone_points);
  }

  // Verdicts are unchanged under linear maps.
  Mat2 m;
  m << 2, r, 1, 1 + r;
  for (const PolygonComplex& c : {square_torus(1), torus_with_point(v2(r - 1, Rational(1, 2))),
                                  torus_with_point(v2(Rational(1, 3), Rational(1, 2))),
                                  to_surface(Origami({1, 2, 0}, {0, 2, 1}))})
    CHECK(detect_origami(transform(c, m)).is_origami == detect_origami(c).is_origami);
}
