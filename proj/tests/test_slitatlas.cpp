#include <doctest.h>

#include "tsurf/slitatlas.hpp"

using namespace tsurf;

namespace {

Vec2 v(FieldElem x, FieldElem y) { return Vec2(std::move(x), std::move(y)); }

Window box(int r) { return {v(-r, -r), v(r, r)}; }

// Two planes, each slit along [0,1] x {0}, crosswise.
SlitAtlas double_slit() {
  std::vector<std::vector<Slit>> s{{Slit::segment(v(0, 0), v(1, 0))}, {Slit::segment(v(0, 0), v(1, 0))}};
  return SlitAtlas(2, s, {{{0, 0, Bank::left}, {1, 0, Bank::right}}, {{0, 0, Bank::right}, {1, 0, Bank::left}}},
                   box(20));
}

// v0, v1 in plane 0; w0, z0 in plane 1; w1, z1 in plane 2; w0 and w1 lie
// on the same segment of their planes. Every pair is glued crosswise.
SlitAtlas three_plane(const FieldElem& r) {
  std::vector<std::vector<Slit>> s{
      {Slit::segment(v(0, 0), v(1, 0)), Slit::segment(v(0, 1), v(1, 1))},
      {Slit::segment(v(0, 0), v(1, 0)), Slit::segment(v(2, 0), v(2 + r, 0))},
      {Slit::segment(v(0, 0), v(1, 0)), Slit::segment(v(2, 0), v(2 + r, 0))},
  };
  std::vector<std::pair<BankRef, BankRef>> g;
  auto cross_glue = [&](int p, int i, int q, int j) {
    g.push_back({{p, i, Bank::left}, {q, j, Bank::right}});
    g.push_back({{p, i, Bank::right}, {q, j, Bank::left}});
  };
  cross_glue(0, 0, 1, 0);
  cross_glue(0, 1, 2, 0);
  cross_glue(1, 1, 2, 1);
  return SlitAtlas(3, s, g, box(20));
}

bool has(const SaddleConnectionSet& s, const Vec2& h, int start, int end) {
  for (const auto& c : s.connections)
    if (equal(c.holonomy, h) && c.start == start && c.end == end) return true;
  return false;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::constraint_violation;
}

}  // namespace

TEST_CASE("atlas validation") {
  const Slit a = Slit::segment(v(0, 0), v(2, 0));
  CHECK(code_of([&] { SlitAtlas(1, {{a, Slit::segment(v(1, -1), v(1, 1))}}, {}, box(5)); }) ==
        ErrorCode::overlapping_slits);
  CHECK(code_of([&] { SlitAtlas(1, {{a, Slit::segment(v(1, 0), v(3, 0))}}, {}, box(5)); }) ==
        ErrorCode::overlapping_slits);
  CHECK(code_of([&] { SlitAtlas(1, {{a, Slit::ray(v(5, 0), v(-1, 0))}}, {}, box(5)); }) ==
        ErrorCode::overlapping_slits);
  // Meeting in an endpoint is allowed.
  CHECK_NOTHROW(SlitAtlas(1, {{a, Slit::segment(v(2, 0), v(2, 3)), Slit::ray(v(0, 0), v(-1, -1))}}, {}, box(5)));
  CHECK_NOTHROW(SlitAtlas(1, {{a, Slit::segment(v(2, 0), v(3, 0))}}, {}, box(5)));

  std::vector<std::vector<Slit>> two{{a}, {a}};
  CHECK(code_of([&] { SlitAtlas(2, two, {{{0, 0, Bank::left}, {1, 0, Bank::left}}}, box(5)); }) ==
        ErrorCode::incongruent_gluing);
  std::vector<std::vector<Slit>> uneven{{a}, {Slit::segment(v(0, 0), v(3, 0))}};
  CHECK(code_of([&] { SlitAtlas(2, uneven, {{{0, 0, Bank::left}, {1, 0, Bank::right}}}, box(5)); }) ==
        ErrorCode::incongruent_gluing);
  CHECK(code_of([&] { SlitAtlas(2, two, {}, box(5)); }) == ErrorCode::not_connected);

  const auto d = double_slit();
  CHECK_FALSE(d.truncated());
  CHECK(code_of([&] { trace_ray(d, 0, v(FieldElem(Rational(1, 2)), 0), v(0, 1), 5); }) ==
        ErrorCode::starts_on_slit_interior);
}

TEST_CASE("cone angles of slit constructions") {
  const auto d = double_slit();
  REQUIRE(d.singularities().size() == 2);
  for (const auto& s : d.singularities()) {
    CHECK(s.turns == 2);
    CHECK(s.incidences.size() == 2);
  }
  // A single unglued slit leaves the walk open.
  const SlitAtlas open(1, {{Slit::segment(v(0, 0), v(1, 0))}}, {}, box(5));
  CHECK(open.truncated());
  CHECK_FALSE(open.singularities()[0].turns.has_value());
  // Two parallel slits glued crosswise in one plane add a handle with two
  // 4 pi points.
  const SlitAtlas self(1, {{Slit::segment(v(0, 0), v(1, 0)), Slit::segment(v(0, 2), v(1, 2))}},
                       {{{0, 0, Bank::left}, {0, 1, Bank::right}}, {{0, 0, Bank::right}, {0, 1, Bank::left}}}, box(5));
  for (const auto& s : self.singularities()) CHECK(s.turns == 2);

  FieldElem r = quadratic_tower({3})->gen("sqrt3");
  const auto t = three_plane(r);
  CHECK(t.singularities().size() == 6);
  for (const auto& s : t.singularities()) CHECK(s.turns == 2);
}

TEST_CASE("tracing") {
  const auto d = double_slit();
  auto hit = trace_ray(d, 0, v(0, 0), v(1, 0), 5);
  CHECK(hit.terminated == TraceStop::hit_singularity);
  CHECK(equal(hit.developed_endpoint, v(1, 0)));
  CHECK(hit.crossings.empty());
  CHECK(*hit.singularity == d.singularity_at(0, 0, 1));

  auto through = trace_ray(d, 0, v(FieldElem(Rational(1, 2)), -1), v(0, 1), 5);
  REQUIRE(through.crossings.size() == 1);
  CHECK(through.crossings[0].bank == Bank::right);
  CHECK(through.end_plane == 1);
  CHECK(through.terminated == TraceStop::escaped_window);
  CHECK(equal(through.developed_endpoint, v(FieldElem(Rational(1, 2)), 20)));

  auto limited = trace_ray(d, 0, v(FieldElem(Rational(1, 2)), -1), v(0, 1), 0);
  CHECK(limited.terminated == TraceStop::max_crossings);
  CHECK(equal(limited.developed_endpoint, v(FieldElem(Rational(1, 2)), 0)));

  auto shortened = trace_ray(d, 0, v(0, -1), v(1, 1), 5, FieldElem(1));
  CHECK(shortened.terminated == TraceStop::length_bound);

  FieldElem r = quadratic_tower({5})->gen("sqrt5");
  const auto t = three_plane(r);
  auto z = trace_ray(t, 1, v(2, 0), v(1, 0), 3);
  CHECK(z.terminated == TraceStop::hit_singularity);
  CHECK(equal(z.developed_endpoint, v(2 + r, 0)));
  // Up through v0 into plane 1, where nothing lies above.
  auto up = trace_ray(t, 0, v(FieldElem(Rational(1, 3)), -1), v(0, 1), 10);
  REQUIRE(up.crossings.size() == 1);
  CHECK(up.end_plane == 1);
  // Down from above v1 in plane 0: through v1 into plane 2, missing v0.
  auto down = trace_ray(t, 0, v(FieldElem(Rational(1, 3)), 3), v(0, -1), 10);
  REQUIRE(down.crossings.size() == 1);
  CHECK(down.crossings[0].bank == Bank::left);
  CHECK(down.end_plane == 2);
}

TEST_CASE("saddle connections in the window") {
  const auto d = double_slit();
  auto sc = saddle_connections_window(d, 5, 4);
  // The two sides of the slit, in both directions.
  REQUIRE(sc.connections.size() == 2);
  const int a = d.singularity_at(0, 0, 0), b = d.singularity_at(0, 0, 1);
  CHECK(has(sc, v(1, 0), a, b));
  CHECK(has(sc, v(-1, 0), b, a));
  for (const auto& c : sc.connections) CHECK(c.multiplicity == 2);
  // The only closed curves circle the slit, with zero holonomy.
  CHECK(cycle_module(sc).rank_z == 0);
  CHECK(saddle_connections_window(d, FieldElem(Rational(1, 2)), 4).connections.empty());

  FieldElem r = quadratic_tower({2})->gen("sqrt2");
  const auto t = three_plane(r);
  auto small = saddle_connections_window(t, 2, 3);
  auto big = saddle_connections_window(t, 3, 3);
  auto deep = saddle_connections_window(t, 3, 6);
  // Reversal symmetry.
  for (const auto& c : big.connections) CHECK(has(big, Vec2(-c.holonomy), c.end, c.start));
  // Monotone in the bound and in the crossing budget.
  for (const auto& c : small.connections) CHECK(has(big, c.holonomy, c.start, c.end));
  for (const auto& c : big.connections) CHECK(has(deep, c.holonomy, c.start, c.end));
  for (const auto& c : big.connections) CHECK(compare(squared_norm(c.holonomy), FieldElem(9)) <= 0);
  // The slits themselves and the vertical unit jumps between their ends.
  CHECK(has(big, v(1, 0), t.singularity_at(0, 0, 0), t.singularity_at(0, 0, 1)));
  CHECK(has(big, v(r, 0), t.singularity_at(1, 1, 0), t.singularity_at(1, 1, 1)));
  CHECK(has(big, v(0, 1), t.singularity_at(0, 0, 0), t.singularity_at(0, 1, 0)));

  auto mods = holonomy_modules_window(t, 3, 3);
  CHECK(mods.lambda0.rank_z == 3);
  CHECK(mods.lambda0.span_dim == 2);
  CHECK_FALSE(mods.truncated);
  CHECK(mods.stabilized);
}
