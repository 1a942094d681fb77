#include <doctest.h>

#include "tsurf/io.hpp"

using namespace tsurf;
using io::json;

TEST_CASE("elements over a mixed tower survive a round trip") {
  auto tw = TowerBuilder()
                .extension("a", {"-2", "0", "1"}, 1, 2)
                .extension("b", {"-3", "0", "1"}, 1, 2)
                .transcendental("t", Embedding::named(Constant::pi))
                .transcendental("u", Embedding::decimal("0.123456789"))
                .build();
  const auto a = tw->gen("a"), b = tw->gen("b"), t = tw->gen("t"), u = tw->gen("u");
  const std::vector<FieldElem> xs{FieldElem(Rational(-7, 3)), a + b, a * b / 5, (t * t + a) / (t - b),
                                  (u + t) / (u * t + 1), FieldElem(0)};
  const json jt = io::tower_to_json(tw);
  auto tw2 = io::tower_from_json(json::parse(jt.dump()));
  CHECK(io::tower_to_json(tw2) == jt);
  for (const auto& x : xs) {
    const json j = io::elem_to_json(x);
    const auto y = io::elem_from_json(json::parse(j.dump()), tw2);
    CHECK(io::elem_to_json(y) == j);
    CHECK(y.to_string() == x.to_string());
  }
  CHECK(io::elem_from_json("a*b - 1", tw).to_string() == (a * b - 1).to_string());
  CHECK(io::tower_to_json(nullptr).is_null());
}

TEST_CASE("surfaces, atlases and origamis") {
  auto L = build_glued_L_pair(FieldElem(Rational(1, 10)), Vec2(FieldElem(1), quadratic_tower({2})->gen("sqrt2") / 2));
  const json js = io::surface_to_json(L.object);
  TowerPtr t;
  auto back = io::surface_from_json(json::parse(js.dump()), &t);
  CHECK(t);
  CHECK(io::surface_to_json(back) == js);
  CHECK(genus(back) == 4);

  auto three = build_three_plane_sqrtp(3);
  const json ja = io::atlas_to_json(three.object);
  CHECK(io::atlas_to_json(io::atlas_from_json(ja)) == ja);

  auto stair = build_staircase(quadratic_tower({2})->gen("sqrt2") / 2, 2);
  const json jb = io::built_to_json(stair);
  auto st = io::atlas_from_json(jb.at("atlas"), &t);
  CHECK(io::expected_to_json(io::expected_from_json(jb.at("expected"), t)) == jb.at("expected"));
  CHECK(io::matrix_group_to_json(io::matrix_group_from_json(jb.at("veech"), t)) == jb.at("veech"));

  const Origami o = build_L_origami();
  CHECK(io::origami_from_json(io::origami_to_json(o)) == o);
  CHECK(io::origami_from_json(json{{"n", 3}, {"sigma_h", "(1,2)"}, {"sigma_v", "(1,3)"}}) == o);
}

TEST_CASE("malformed input is a parse error") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::constraint_violation;
  };
  CHECK(code([] { io::surface_from_json(json{{"polygons", 3}}); }) == ErrorCode::parse_error);
  CHECK(code([] { io::atlas_from_json(json::object()); }) == ErrorCode::parse_error);
  CHECK(code([] { io::elem_from_json(json{{"level", 1}}, nullptr); }) == ErrorCode::parse_error);
  CHECK(code([] { io::origami_from_json(json{{"n", 2}, {"sigma_h", {1, 1}}, {"sigma_v", {1, 2}}}); }) ==
        ErrorCode::malformed_permutation);
}
