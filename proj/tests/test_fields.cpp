#include <doctest.h>

#include <random>

#include "tsurf/fields.hpp"
#include "tsurf/origami.hpp"

using namespace tsurf;

namespace {

Vec2 v(FieldElem x, FieldElem y) { return Vec2(std::move(x), std::move(y)); }

TowerPtr pi_tower() { return TowerBuilder().transcendental("t", Embedding::named(Constant::pi)).build(); }

// Cross ratio of lines written with determinants; no slopes involved.
FieldElem det_cross_ratio(const Vec2& v1, const Vec2& v2, const Vec2& v3, const Vec2& v4) {
  return cross(v3, v1) * cross(v4, v2) / (cross(v3, v2) * cross(v4, v1));
}

FieldElem random_elem(std::mt19937& rng, const FieldElem& r) {
  std::uniform_int_distribution<int> d(-4, 4);
  return FieldElem(Rational(d(rng), 1 + (rng() % 3))) + FieldElem(d(rng)) * r;
}

Vec2 random_vec(std::mt19937& rng, const FieldElem& r) {
  for (;;) {
    Vec2 x = v(random_elem(rng, r), random_elem(rng, r));
    if (rng() % 5 == 0) x(0) = 0;
    if (!is_zero(x)) return x;
  }
}

}  // namespace

TEST_CASE("cross ratio") {
  auto tw = quadratic_tower({2, 3});
  FieldElem r2 = tw->gen("sqrt2"), r3 = tw->gen("sqrt3");
  CHECK(cross_ratio(v(-1, 1), v(0, 1), v(1, 0), v(r2, 1)) == 2 - r2);
  for (int n : {1, 2})
    for (const FieldElem& a : {r2, r3}) CHECK(cross_ratio(v(-1, 1), v(0, 1), v(1, 0), v(a, n)) == a / (a + n));
  auto pt = pi_tower();
  FieldElem t = pt->gen("t");
  CHECK(cross_ratio(v(-1, 1), v(0, 1), v(1, 0), v(t, 1)) == t / (t + 1));

  const FieldElem r = r2 + Rational(1, 3);
  CHECK(cross_ratio(Slope{}, Slope{FieldElem(0)}, Slope{FieldElem(1)}, Slope{r}) == r);
  CHECK(cross_ratio(Slope{}, Slope{FieldElem(0)}, Slope{FieldElem(1)}, Slope{FieldElem(-1)}) == FieldElem(-1));
  CHECK_THROWS_AS(cross_ratio(v(1, 1), v(2, 2), v(1, 0), v(0, 1)), Error);

  // Slope formula with elimination agrees with the determinant form, and
  // both are invariant under linear maps.
  std::mt19937 rng(7);
  Mat2 g;
  g << 2, r3, 1, FieldElem(-1) + r2;
  for (int i = 0; i < 200; ++i) {
    std::array<Vec2, 4> q;
    for (auto& x : q) x = random_vec(rng, r2);
    bool ok = true;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < a; ++b) ok = ok && !parallel(q[a], q[b]);
    if (!ok) continue;
    const FieldElem c = cross_ratio(q[0], q[1], q[2], q[3]);
    CHECK(c == det_cross_ratio(q[0], q[1], q[2], q[3]));
    CHECK(c == cross_ratio(Vec2(g * q[0]), Vec2(g * q[1]), Vec2(g * q[2]), Vec2(g * q[3])));
  }
}

TEST_CASE("cross-ratio field") {
  auto tw = quadratic_tower({2, 3});
  FieldElem r2 = tw->gen("sqrt2"), r3 = tw->gen("sqrt3");
  auto q = field_cr(slope_set({v(1, 0), v(1, 1), v(1, -1), v(0, 1)}));
  CHECK(q.is_rationals());
  auto f = field_cr(slope_set({v(0, 1), v(1, 0), v(1, 1), v(1, r2)}));
  CHECK(f.degree() == 2u);
  CHECK(is_member(r2, f));
  CHECK(same_field(f, field_cr_brute_force(slope_set({v(0, 1), v(1, 0), v(1, 1), v(1, r2)}))));
  CHECK_THROWS_AS(field_cr(slope_set({v(1, 0), v(0, 1), v(2, 0), v(1, 1)})), Error);

  // Staircase-like rational slopes.
  std::vector<Vec2> stairs;
  for (int k = -2; k <= 2; ++k) stairs.push_back(v(-FieldElem(Rational(1, 2)).pow(k), FieldElem(3).pow(k)));
  CHECK(field_cr(slope_set(stairs)).is_rationals());

  std::mt19937 rng(11);
  for (int i = 0; i < 25; ++i) {
    std::vector<Vec2> vs;
    const std::size_t n = 4 + rng() % 3;
    while (slope_set(vs).slopes.size() < n) vs.push_back(random_vec(rng, rng() % 2 ? r2 : r3));
    const auto s = slope_set(vs);
    CHECK(same_field(field_cr(s, tw), field_cr_brute_force(s, tw)));
  }
}

TEST_CASE("holonomy field") {
  CHECK(field_hol(make_module({v(1, 0), v(0, 1)})).is_rationals());
  CHECK(field_hol(make_module({v(2, 0), v(3, 0)})).is_rationals());
  CHECK(field_hol(make_module({})).is_rationals());

  auto tw = quadratic_tower({2, 3, 5});
  FieldElem m1 = tw->gen("sqrt2"), m2 = tw->gen("sqrt3"), m3 = tw->gen("sqrt5");
  const auto m = make_module({v(1 + m2, -1), v(-(1 + m1), 1), v(-(1 + m3), 1)});
  const auto k = field_hol(m);
  CHECK_FALSE(k.is_rationals());
  // The coordinates of the third vector in the basis of the first two are
  // a = 2 + sqrt6 - sqrt10 - sqrt15 and a + 1.
  const FieldElem a = 2 + m1 * m2 - m1 * m3 - m2 * m3;
  CHECK(same_field(k, subfield_generated({a}, tw)));
  CHECK(k.degree() == 4u);
  CHECK(is_member(m1 * m2, k));
  CHECK(is_member(m1 * m3, k));
  CHECK_FALSE(is_member(m1, k));

  // Independent of the basis pair.
  for (std::size_t i = 0; i < m.generators.size(); ++i)
    for (std::size_t j = 0; j < m.generators.size(); ++j)
      if (i != j && !parallel(m.generators[i], m.generators[j])) CHECK(same_field(field_hol(m, i, j), k));

  // A scaled lattice has rational coordinates in its own basis.
  CHECK(field_sc(make_module({v(m1, 0), v(0, m1), v(m1 / 2, m1 / 3)})).is_rationals());
}

TEST_CASE("trace field") {
  MatrixGroupGens sl2z;
  Mat2 s, t;
  s << 0, 1, -1, 0;
  t << 1, 1, 0, 1;
  sl2z.generators = {s, t};
  CHECK(field_tr(sl2z).is_rationals());

  auto pt = pi_tower();
  MatrixGroupGens cyclic;
  cyclic.trace_presented = {{pt->gen("t"), FieldElem(1)}};
  auto kt = field_tr(cyclic);
  CHECK_FALSE(kt.degree().has_value());
  CHECK(kt.transcendence_names() == std::vector<std::string>{"t"});

  auto tw = quadratic_tower({2});
  const FieldElem l = tw->gen("sqrt2");
  Mat2 mm;
  mm << l, 0, 0, 2 * l;
  MatrixGroupGens stair{{mm}, {}};
  auto ks = field_tr(stair);
  CHECK(is_member(3 * l, ks));
  CHECK(same_field(ks, subfield_generated({l}, tw)));

  // Traces of longer random words stay in the field.
  Mat2 h;
  h << 1 + l, 1, 1, 1;
  MatrixGroupGens two{{mm, h}, {}};
  auto k2 = field_tr(two);
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    std::vector<int> w;
    const int len = 1 + static_cast<int>(rng() % 8);
    for (int j = 0; j < len; ++j) w.push_back(static_cast<int>(rng() % 4) - 2);
    CHECK(is_member(word_trace(two, w), k2));
    std::vector<int> c(len);
    for (int j = 0; j < len; ++j) c[j] = (rng() % 2) ? 0 : -1;
    CHECK(is_member(word_trace(cyclic, c), kt));
  }
  // Trace recurrence against explicit powers.
  Mat2 p = Mat2::Identity();
  for (int k = 1; k <= 6; ++k) {
    p = p * h;
    MatrixGroupGens tp;
    tp.trace_presented = {{h(0, 0) + h(1, 1), h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)}};
    CHECK(word_trace(tp, std::vector<int>(k, 0)) == p(0, 0) + p(1, 1));
  }
}

TEST_CASE("reports on origamis") {
  const Origami l({1, 0, 2}, {2, 1, 0});
  auto vg = veech_group(l, 100);
  MatrixGroupGens gens;
  for (const auto& [w, m] : vg.generators) {
    Mat2 x;
    x << FieldElem(m(0, 0)), FieldElem(m(0, 1)), FieldElem(m(1, 0)), FieldElem(m(1, 1));
    gens.generators.push_back(x);
  }
  auto r = surface_fields(to_surface(l), 4, gens);
  CHECK(r.k_hol.is_rationals());
  CHECK(r.k_sc.is_rationals());
  REQUIRE(r.k_cr);
  CHECK(r.k_cr->is_rationals());
  CHECK(r.k_tr->is_rationals());
  CHECK(r.containments.hol_in_sc);
  CHECK(*r.containments.cr_in_sc);
  CHECK(*r.containments.cr_eq_sc);
  CHECK(*r.containments.tr_in_hol);

  // Too few slopes for a cross ratio.
  auto small = surface_fields(to_surface(Origami({0}, {0})), FieldElem(Rational(11, 10)));
  CHECK(small.kcr_undefined);
  CHECK_FALSE(small.containments.cr_in_sc.has_value());
}
