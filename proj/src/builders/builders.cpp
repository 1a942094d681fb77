#include <algorithm>
#include <sstream>

#include "tsurf/builders.hpp"

namespace tsurf {

namespace {

[[noreturn]] void violated(const std::string& msg) { throw Error(ErrorCode::constraint_violation, msg); }

Vec2 v(FieldElem x, FieldElem y) { return Vec2(std::move(x), std::move(y)); }

Window box(int r) { return {v(-r, -r), v(r, r)}; }

void glue_crosswise(std::vector<std::pair<BankRef, BankRef>>& g, int p, int i, int q, int j) {
  g.push_back({{p, i, Bank::left}, {q, j, Bank::right}});
  g.push_back({{p, i, Bank::right}, {q, j, Bank::left}});
}

void check_in_window(const std::vector<std::vector<Slit>>& slits, const Window& w) {
  auto inside = [&](const Vec2& x) {
    return compare(x(0), w.lo(0)) > 0 && compare(x(0), w.hi(0)) < 0 && compare(x(1), w.lo(1)) > 0 &&
           compare(x(1), w.hi(1)) < 0;
  };
  for (const auto& plane : slits)
    for (const auto& s : plane)
      if (!inside(s.p0) || (s.kind == SlitKind::segment && !inside(s.p1))) violated("window too small for the slits");
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::optional<int>> sorted_turns(std::vector<std::optional<int>> t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    if (!a || !b) return a.has_value() && !b.has_value();
    return *a < *b;
  });
  return t;
}

std::string turns_string(const std::vector<std::optional<int>>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + (t[i] ? std::to_string(*t[i]) : std::string("inf"));
  return s + "]";
}

const char* field_label(FieldName f) {
  switch (f) {
    case FieldName::hol: return "K_hol";
    case FieldName::sc: return "K_sc";
    case FieldName::cr: return "K_cr";
    case FieldName::tr: return "K_tr";
  }
  return "";
}

}  // namespace

Built<SlitAtlas> build_three_plane_sqrtp(int p, int window) {
  if (!is_prime(p)) violated("p must be prime");
  const auto tower = quadratic_tower({p});
  const FieldElem r = tower->gen("sqrt" + std::to_string(p));
  std::vector<std::vector<Slit>> s{
      {Slit::segment(v(0, 0), v(1, 0)), Slit::segment(v(0, 1), v(1, 1))},
      {Slit::segment(v(0, 0), v(1, 0)), Slit::segment(v(2, 0), v(2 + r, 0))},
      {Slit::segment(v(0, 0), v(1, 0)), Slit::segment(v(2, 0), v(2 + r, 0))},
  };
  check_in_window(s, box(window));
  std::vector<std::pair<BankRef, BankRef>> g;
  glue_crosswise(g, 0, 0, 1, 0);
  glue_crosswise(g, 0, 1, 2, 0);
  glue_crosswise(g, 1, 1, 2, 1);
  ExpectedRecord e;
  e.claims = {"six cone points, each of angle 4pi", "cross-ratio field is Q",
              "saddle-connection field contains sqrt(" + std::to_string(p) + ")"};
  e.cone_turns = std::vector<std::optional<int>>(6, 2);
  e.fields = {{FieldName::cr, FieldClaim::Kind::is_rationals, {}}, {FieldName::sc, FieldClaim::Kind::contains, {r}}};
  return {"three-plane-sqrtp", {{"p", FieldElem(p)}}, SlitAtlas(3, s, g, box(window)), e, std::nullopt};
}

Built<PolygonComplex> build_glued_L_pair(const FieldElem& eps, const Vec2& dir) {
  if (is_zero(dir)) violated("direction must be nonzero");
  if (dir(0).is_zero() || (dir(1) / dir(0)).is_rational())
    throw Error(ErrorCode::slope_rational, "mark direction must have irrational slope");
  if (eps.sign() <= 0 || compare(eps, FieldElem(1)) >= 0) violated("eps must lie in (0, 1)");
  const Vec2 p = dir * eps;
  for (int i = 0; i < 2; ++i)
    if (p(i).sign() <= 0 || compare(p(i), FieldElem(1)) >= 0) violated("the mark must end inside the corner square");

  std::vector<Polygon> polys;
  std::vector<Gluing> g;
  for (int c = 0; c < 2; ++c) {
    polys.push_back({{v(0, 0), v(1, 0), v(1, 1), p}});  // A: below the mark
    polys.push_back({{v(0, 0), p, v(1, 1), v(0, 1)}});  // B: above the mark
    polys.push_back({{v(1, 0), v(2, 0), v(2, 1), v(1, 1)}});
    polys.push_back({{v(0, 1), v(1, 1), v(1, 2), v(0, 2)}});
    const int a = 4 * c, b = a + 1, s1 = a + 2, s2 = a + 3;
    g.push_back({{a, 2}, {b, 1}});
    g.push_back({{a, 1}, {s1, 3}});
    g.push_back({{s1, 1}, {b, 3}});
    g.push_back({{s2, 1}, {s2, 3}});
    g.push_back({{b, 2}, {s2, 0}});
    g.push_back({{s1, 2}, {s1, 0}});
    g.push_back({{s2, 2}, {a, 0}});
  }
  g.push_back({{0, 3}, {5, 0}});
  g.push_back({{4, 3}, {1, 0}});

  const FieldElem slope = dir(1) / dir(0);
  ExpectedRecord e;
  e.claims = {"one 12pi point and one 4pi point, genus 4", "absolute holonomy is the lattice Z^2",
              "holonomy field is Q", "saddle-connection field is not Q and contains the mark slope",
              "cross-ratio field is not Q and contains the mark slope"};
  e.cone_turns = std::vector<std::optional<int>>{2, 6};
  e.genus = 4;
  e.lambda_is_z2 = true;
  e.fields = {{FieldName::hol, FieldClaim::Kind::is_rationals, {}},
              {FieldName::sc, FieldClaim::Kind::not_rationals, {}},
              {FieldName::sc, FieldClaim::Kind::contains, {slope}},
              {FieldName::cr, FieldClaim::Kind::not_rationals, {}},
              {FieldName::cr, FieldClaim::Kind::contains, {slope}}};
  return {"glued-L-pair",
          {{"eps", eps}, {"dir_x", dir(0)}, {"dir_y", dir(1)}},
          PolygonComplex(std::move(polys), std::move(g)),
          e,
          std::nullopt};
}

Built<SlitAtlas> build_two_plane_mu(const FieldElem& mu1, const FieldElem& mu2, const FieldElem& mu3, int window) {
  const std::array<FieldElem, 3> mu{mu1, mu2, mu3};
  for (const auto& m : mu) {
    if (compare(m, FieldElem(1)) <= 0) violated("each mu must exceed 1");
    if (m.is_rational()) violated("each mu must be irrational");
  }
  if (mu1 == mu2 || mu1 == mu3 || mu2 == mu3) violated("the mu must be distinct");
  const std::vector<Vec2> cycles{v(1 + mu2, -1), v(-(1 + mu1), 1), v(-(1 + mu3), 1)};
  if (make_module(cycles).rank_z != 3) violated("the three cycle holonomies must be independent over Z");

  std::vector<std::vector<Slit>> s(2);
  FieldElem lambda(0);
  for (int n = 0; n < 4; ++n) {
    if (n > 0) lambda += mu[n - 1];
    s[0].push_back(Slit::segment(v(0, n), v(1, n)));
    s[1].push_back(Slit::segment(v(n + lambda, 0), v(n + lambda + 1, 0)));
  }
  check_in_window(s, box(window));
  std::vector<std::pair<BankRef, BankRef>> g;
  for (int n = 0; n < 4; ++n) glue_crosswise(g, 0, n, 1, n);

  ExpectedRecord e;
  e.claims = {"eight cone points, each of angle 4pi", "absolute holonomy contains (1+mu2,-1), (-(1+mu1),1), (-(1+mu3),1)",
              "absolute holonomy has rank 3", "cross-ratio field is Q", "holonomy field is not Q"};
  e.cone_turns = std::vector<std::optional<int>>(8, 2);
  e.lambda_contains = cycles;
  e.lambda_rank = 3;
  e.fields = {{FieldName::cr, FieldClaim::Kind::is_rationals, {}}, {FieldName::hol, FieldClaim::Kind::not_rationals, {}}};
  return {"two-plane-mu", {{"mu1", mu1}, {"mu2", mu2}, {"mu3", mu3}}, SlitAtlas(2, s, g, box(window)), e, std::nullopt};
}

Built<SlitAtlas> build_staircase(const FieldElem& lambda, int n, int k_min, int k_max) {
  if (lambda.sign() <= 0 || compare(lambda, FieldElem(1)) >= 0) violated("lambda must lie in (0, 1)");
  if (lambda.is_rational()) violated("lambda must be irrational");
  if (n < 1 || compare(n * lambda, FieldElem(1)) <= 0) violated("n lambda must exceed 1");
  if (k_min > k_max) violated("empty range of planes");
  const FieldElem nl = n * lambda;
  const int planes = k_max - k_min + 1;
  std::vector<std::vector<Slit>> s(planes);
  std::vector<Vec2> expected;
  FieldElem reach(1);
  for (int i = 0; i < planes; ++i) {
    const int k = k_min + i;
    const FieldElem y = nl.pow(k), x = lambda.pow(k);
    s[i].push_back(Slit::ray(v(0, y), v(0, 1)));
    s[i].push_back(Slit::ray(v(x, 0), v(1, 0)));
    expected.push_back(v(-x, y));
    expected.push_back(v(x, -y));
    for (const auto& c : {x, y})
      if (compare(c, reach) > 0) reach = c;
  }
  const int window = static_cast<int>(floor(reach)) + 2;
  std::vector<std::pair<BankRef, BankRef>> g;
  for (int i = 0; i + 1 < planes; ++i)
    for (int r = 0; r < 2; ++r) g.push_back({{i, r, Bank::right}, {i + 1, r, Bank::left}});

  Mat2 m;
  m << lambda, 0, 0, nl;
  ExpectedRecord e;
  e.claims = {"two infinite-angle points", "saddle connections are exactly +-(-lambda^k, (n lambda)^k)",
              "cross-ratio field is Q", "trace field contains (n+1) lambda"};
  e.cone_turns = std::vector<std::optional<int>>{std::nullopt, std::nullopt};
  e.holonomy_vectors = expected;
  e.fields = {{FieldName::cr, FieldClaim::Kind::is_rationals, {}},
              {FieldName::tr, FieldClaim::Kind::contains, {(n + 1) * lambda}}};
  return {"staircase",
          {{"lambda", lambda}, {"n", FieldElem(n)}, {"k_min", FieldElem(k_min)}, {"k_max", FieldElem(k_max)}},
          SlitAtlas(planes, s, g, box(window)),
          e,
          MatrixGroupGens{{m}, {}}};
}

Origami build_L_origami() { return Origami({1, 0, 2}, {2, 1, 0}); }

std::array<Vec2, 4> build_cross_ratio_quadruple(const FieldElem& alpha, int N) {
  return {v(-1, 1), v(0, 1), v(1, 0), v(alpha, N)};
}

Built<PolygonComplex> build_transcendental_page(int n) {
  if (n < 1) violated("n must be positive");
  const auto tower = TowerBuilder()
                         .transcendental("t1", Embedding::named(Constant::pi))
                         .transcendental("t2", Embedding::named(Constant::e))
                         .build();
  const FieldElem pi = tower->gen("t1"), e = tower->gen("t2"), half = pi / 2;
  const int L = n + 1;
  std::vector<Polygon> polys{
      // Page: a square torus of side 2(n+1) cut along y = 0, with the mark
      // [-n, -n+1] x {0} on the cut.
      {{v(-L, 0), v(-n, 0), v(-n + 1, 0), v(L, 0), v(L, L), v(-L, L)}},
      {{v(-L, -L), v(L, -L), v(L, 0), v(-n + 1, 0), v(-n, 0), v(-L, 0)}},
      // The e by pi torus cut at half height, with the mark [0, 1] on the cut.
      {{v(0, 0), v(e, 0), v(e, half), v(1, half), v(0, half)}},
      {{v(0, half), v(1, half), v(e, half), v(e, pi), v(0, pi)}},
  };
  std::vector<Gluing> g{
      {{0, 0}, {1, 4}}, {{0, 2}, {1, 2}}, {{0, 3}, {0, 5}}, {{1, 1}, {1, 5}}, {{0, 4}, {1, 0}},
      {{2, 2}, {3, 1}}, {{2, 1}, {2, 4}}, {{3, 2}, {3, 4}}, {{2, 0}, {3, 3}},
      {{0, 1}, {2, 3}}, {{3, 0}, {1, 3}},
  };
  ExpectedRecord x;
  x.claims = {"absolute holonomy contains (e, 0) and (0, pi)", "holonomy field is not Q"};
  x.lambda_contains = {v(e, 0), v(0, pi)};
  x.fields = {{FieldName::hol, FieldClaim::Kind::not_rationals, {}}};
  return {"transcendental-page", {{"n", FieldElem(n)}}, PolygonComplex(std::move(polys), std::move(g)), x,
          std::nullopt};
}

std::vector<std::string> check_expected(const ExpectedRecord& e, const FieldsReport& r,
                                        const std::vector<std::optional<int>>& cone_turns,
                                        const std::vector<Vec2>& saddle_vectors, std::optional<int> genus) {
  std::vector<std::string> fail;
  if (e.cone_turns) {
    const auto want = sorted_turns(*e.cone_turns), got = sorted_turns(cone_turns);
    if (want != got) fail.push_back("cone angles " + turns_string(got) + ", expected " + turns_string(want));
  }
  if (e.genus && genus != e.genus)
    fail.push_back("genus " + (genus ? std::to_string(*genus) : std::string("?")) + ", expected " +
                   std::to_string(*e.genus));
  for (const auto& c : e.fields) {
    const SubfieldDesc* f = nullptr;
    switch (c.field) {
      case FieldName::hol: f = &r.k_hol; break;
      case FieldName::sc: f = &r.k_sc; break;
      case FieldName::cr: f = r.k_cr ? &*r.k_cr : nullptr; break;
      case FieldName::tr: f = r.k_tr ? &*r.k_tr : nullptr; break;
    }
    const std::string name = field_label(c.field);
    if (!f) {
      fail.push_back(name + " is undefined");
      continue;
    }
    switch (c.kind) {
      case FieldClaim::Kind::is_rationals:
        if (!f->is_rationals()) fail.push_back(name + " = " + f->describe() + ", expected Q");
        break;
      case FieldClaim::Kind::not_rationals:
        if (f->is_rationals()) fail.push_back(name + " = Q, expected a larger field");
        break;
      case FieldClaim::Kind::contains:
        for (const auto& x : c.elements)
          if (!is_member(x, *f)) fail.push_back(name + " does not contain " + x.to_string());
        break;
      case FieldClaim::Kind::excludes:
        for (const auto& x : c.elements)
          if (is_member(x, *f)) fail.push_back(name + " contains " + x.to_string());
        break;
    }
  }
  for (const auto& x : e.lambda_contains)
    if (!z_contains(r.lambda, x)) fail.push_back("absolute holonomy misses " + to_string(x));
  if (e.lambda_rank && r.lambda.rank_z != *e.lambda_rank)
    fail.push_back("absolute holonomy has rank " + std::to_string(r.lambda.rank_z) + ", expected " +
                   std::to_string(*e.lambda_rank));
  if (e.lambda_is_z2) {
    bool ok = r.lambda.is_lattice() && r.lambda.rank_z == 2 && z_contains(r.lambda, v(1, 0)) &&
              z_contains(r.lambda, v(0, 1));
    for (const auto& g : r.lambda.generators)
      for (int i = 0; i < 2; ++i) ok = ok && g(i).is_rational() && boost::multiprecision::denominator(g(i).rational()) == 1;
    if (!ok) fail.push_back("absolute holonomy is not Z^2");
  }
  if (e.holonomy_vectors) {
    auto has = [](const std::vector<Vec2>& s, const Vec2& x) {
      return std::any_of(s.begin(), s.end(), [&](const Vec2& y) { return equal(x, y); });
    };
    for (const auto& x : *e.holonomy_vectors)
      if (!has(saddle_vectors, x)) fail.push_back("saddle connection " + to_string(x) + " not found");
    for (const auto& x : saddle_vectors)
      if (!has(*e.holonomy_vectors, x)) fail.push_back("unexpected saddle connection " + to_string(x));
  }
  return fail;
}

BuiltCheck verify(const Built<SlitAtlas>& b, const WindowOptions& w, int word_len) {
  BuiltCheck c;
  c.report = atlas_fields(b.object, w.bound, w.crossings, b.veech, word_len);
  c.saddle_vectors = c.report.saddle_vectors;
  for (const auto& s : b.object.singularities()) c.cone_turns.push_back(s.turns);
  c.failures = check_expected(b.expected, c.report, c.cone_turns, c.saddle_vectors);
  return c;
}

BuiltCheck verify(const Built<PolygonComplex>& b, const FieldElem& bound, int word_len) {
  BuiltCheck c;
  c.report = surface_fields(b.object, bound, b.veech, word_len);
  c.saddle_vectors = c.report.saddle_vectors;
  for (const auto& p : cone_points(b.object))
    if (!p.regular()) c.cone_turns.push_back(p.turns);
  c.failures = check_expected(b.expected, c.report, c.cone_turns, c.saddle_vectors, genus(b.object));
  return c;
}

}  // namespace tsurf
