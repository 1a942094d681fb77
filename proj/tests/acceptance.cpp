// Acceptance run: one PASS/FAIL line per criterion, with timing against the
// stated limit. Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "tsurf/builders.hpp"
#include "tsurf/fields.hpp"
#include "tsurf/origami.hpp"

using namespace tsurf;

namespace {

Vec2 v2(FieldElem x, FieldElem y) { return Vec2(std::move(x), std::move(y)); }

bool contains_vec(const std::vector<Vec2>& vs, const Vec2& v) {
  for (const auto& w : vs)
    if (equal(w, v)) return true;
  return false;
}

bool is_integral(const FieldElem& x) { return x.is_rational() && denominator(x.rational()) == 1; }

// Collects the first few problems of a criterion.
struct Log {
  int failures = 0;
  std::ostringstream notes;
  void fail(const std::string& why) {
    if (failures++ < 5) notes << "    " << why << "\n";
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

Origami random_origami(std::mt19937& rng, int n) {
  for (;;) {
    Permutation h(n), v(n);
    std::iota(h.begin(), h.end(), 0);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(h.begin(), h.end(), rng);
    std::shuffle(v.begin(), v.end(), rng);
    try {
      return Origami(h, v);
    } catch (const Error&) {
    }
  }
}

std::vector<Origami> origami_sample(unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::vector<Origami> out;
  for (int i = 0; i < count; ++i) out.push_back(random_origami(rng, 1 + static_cast<int>(rng() % 8)));
  return out;
}

// Convex centrally symmetric 2k-gon over Q(sqrt d), opposite sides glued.
// With k = 4 every vertex is one point of angle 6 pi, with k = 5 there are
// two points of angle 4 pi, so the fan triangulation uses cone points only.
PolygonComplex random_symmetric_polygon(std::mt19937& rng, const TowerPtr& tw, int k) {
  const FieldElem r = tw->gen(1);
  auto coeff = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  std::vector<Vec2> half;
  while (static_cast<int>(half.size()) < k) {
    Vec2 e = v2(coeff(-2, 2) + coeff(-1, 1) * r, coeff(0, 2) + coeff(-1, 1) * r);
    if (direction_half(e) != 0 || is_zero(e)) continue;
    bool fresh = true;
    for (const auto& f : half) fresh = fresh && !parallel(e, f);
    if (fresh) half.push_back(e);
  }
  std::sort(half.begin(), half.end(), [](const Vec2& a, const Vec2& b) { return compare_direction(a, b) < 0; });
  std::vector<Vec2> edges = half;
  for (const auto& e : half) edges.push_back(-e);
  Polygon poly;
  Vec2 cur = v2(0, 0);
  for (const auto& e : edges) {
    poly.vertices.push_back(cur);
    cur = cur + e;
  }
  std::vector<Gluing> g;
  for (int i = 0; i < k; ++i) g.push_back({{0, i}, {0, i + k}});
  return PolygonComplex({poly}, g);
}

// Smallest integer at least the largest vertex distance.
FieldElem diameter_bound(const PolygonComplex& c) {
  FieldElem best(0);
  for (const auto& p : c.polygons())
    for (const auto& a : p.vertices)
      for (const auto& b : p.vertices) {
        const FieldElem d = squared_norm(Vec2(a - b));
        if (compare(d, best) > 0) best = d;
      }
  Integer n = boost::multiprecision::sqrt(floor(best));
  while (compare(FieldElem(Rational(n * n)), best) < 0) ++n;
  return FieldElem(Rational(n));
}

// Reports from every example, shared by the containment criterion.
struct Example {
  std::string name;
  FieldsReport report;
};
std::vector<Example> examples;

// Containments re-derived from exact subfield tests.
void check_containments(Log& log, const Example& ex) {
  const auto& r = ex.report;
  log.expect(is_subfield(r.k_hol, r.k_sc), ex.name + ": K_hol not in K_sc");
  log.expect(r.containments.hol_in_sc, ex.name + ": reported K_hol not in K_sc");
  if (r.k_cr) {
    log.expect(is_subfield(*r.k_cr, r.k_sc), ex.name + ": K_cr not in K_sc");
    log.expect(r.containments.cr_in_sc.value_or(false), ex.name + ": reported K_cr not in K_sc");
  }
  if (r.k_tr && r.lambda.span_dim == 2) {
    log.expect(is_subfield(*r.k_tr, r.k_hol), ex.name + ": K_tr not in K_hol");
    log.expect(r.containments.tr_in_hol.value_or(false), ex.name + ": reported K_tr not in K_hol");
  }
  for (const auto& g : r.k_hol.generators) log.expect(is_member(g, r.k_sc), ex.name + ": generator of K_hol outside K_sc");
}

void criterion1(Log& log) {
  auto q = quadratic_tower({2, 3});
  auto t = TowerBuilder().transcendental("t", Embedding::named(Constant::pi)).build();
  for (const FieldElem& a : {q->gen("sqrt2"), q->gen("sqrt3"), t->gen("t")})
    for (int N : {1, 2}) {
      const auto v = build_cross_ratio_quadruple(a, N);
      const FieldElem cr = cross_ratio(v[0], v[1], v[2], v[3]);
      log.expect(cr == a / (a + N), "alpha = " + a.to_string() + ", N = " + std::to_string(N) + ": got " + cr.to_string());
      log.expect(!cr.is_rational(), "cross ratio rational for alpha = " + a.to_string());
    }
}

void criterion2(Log& log) {
  for (int p : {2, 3, 5}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = build_three_plane_sqrtp(p);
    const auto& sing = b.object.singularities();
    log.expect(sing.size() == 6, "p = " + std::to_string(p) + ": " + std::to_string(sing.size()) + " cone points");
    for (const auto& s : sing) log.expect(s.turns == 2, "p = " + std::to_string(p) + ": cone angle not 4 pi");
    const auto r = atlas_fields(b.object, FieldElem(3), 4);
    log.expect(r.k_cr && r.k_cr->is_rationals(), "p = " + std::to_string(p) + ": K_cr is not Q");
    log.expect(is_member(b.object.tower()->gen(1), r.k_sc), "p = " + std::to_string(p) + ": sqrt p not in K_sc");
    examples.push_back({"three-plane p=" + std::to_string(p), r});
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log.expect(s < 5, "p = " + std::to_string(p) + " took more than 5 s");
  }
}

void criterion3(Log& log) {
  auto q = quadratic_tower({2});
  const auto b = build_glued_L_pair(FieldElem(Rational(1, 10)), v2(1, q->gen("sqrt2") / 2));
  const auto r = surface_fields(b.object, FieldElem(2));
  log.expect(r.lambda.is_lattice() && r.lambda.rank_z == 2, "Lambda is not a rank 2 lattice");
  log.expect(z_contains(r.lambda, v2(1, 0)) && z_contains(r.lambda, v2(0, 1)), "Lambda misses a basis vector of Z^2");
  for (const auto& g : r.lambda.generators)
    log.expect(is_integral(g(0)) && is_integral(g(1)), "Lambda generator outside Z^2: " + to_string(g));
  log.expect(!r.k_sc.is_rationals(), "K_sc is Q");
  log.expect(r.k_cr && !r.k_cr->is_rationals(), "K_cr is Q or undefined");
  examples.push_back({"glued L pair", r});
}

void criterion4(Log& log) {
  auto q = quadratic_tower({2, 3, 5});
  const FieldElem m1 = q->gen("sqrt2"), m2 = q->gen("sqrt3"), m3 = q->gen("sqrt5");
  const auto b = build_two_plane_mu(m1, m2, m3);
  const auto r = atlas_fields(b.object, FieldElem(3), 3);
  const Vec2 c[3] = {v2(1 + m2, -1), v2(-(1 + m1), 1), v2(-(1 + m3), 1)};
  for (const auto& v : c) log.expect(z_contains(r.lambda, v), "Lambda misses " + to_string(v));
  log.expect(r.lambda.rank_z == 3, "Lambda rank " + std::to_string(r.lambda.rank_z));
  log.expect(make_module({c[0], c[1], c[2]}).rank_z == 3, "the three cycles have rank below 3");
  log.expect(r.k_cr && r.k_cr->is_rationals(), "K_cr is not Q");
  log.expect(!r.k_hol.is_rationals(), "K_hol is Q");
  examples.push_back({"two-plane mu", r});
}

void criterion5(Log& log) {
  auto q = quadratic_tower({2});
  const FieldElem lambda = q->gen("sqrt2") / 2;
  const int n = 2;
  const auto b = build_staircase(lambda, n);
  const auto r = atlas_fields(b.object, FieldElem(3), 4, b.veech);
  std::vector<Vec2> want;
  for (int k = -2; k <= 2; ++k) {
    const Vec2 h = v2(-lambda.pow(k), (n * lambda).pow(k));
    want.push_back(h);
    want.push_back(-h);
  }
  log.expect(r.saddle_vectors.size() == want.size(),
             std::to_string(r.saddle_vectors.size()) + " vectors, expected " + std::to_string(want.size()));
  for (const auto& v : want) log.expect(contains_vec(r.saddle_vectors, v), "missing " + to_string(v));
  for (const auto& v : r.saddle_vectors) log.expect(contains_vec(want, v), "unexpected " + to_string(v));
  log.expect(r.k_cr && r.k_cr->is_rationals(), "K_cr is not Q");
  log.expect(r.k_tr && is_member((n + 1) * lambda, *r.k_tr), "(n+1) lambda not in K_tr");
  log.expect(r.k_tr && !r.k_tr->is_rationals(), "K_tr is Q");
  examples.push_back({"staircase", r});
}

void criterion6(Log& log) {
  const auto sample = origami_sample(6, 200);
  int i = 0;
  for (const auto& o : sample) {
    const std::string tag = "origami " + std::to_string(i++) + " (n = " + std::to_string(o.size()) + ")";
    const auto surf = to_surface(o);
    const auto r = surface_fields(surf, FieldElem(5));
    for (const auto& v : r.saddle_vectors)
      log.expect(is_integral(v(0)) && is_integral(v(1)), tag + ": holonomy " + to_string(v) + " not in Z^2");
    log.expect(r.k_sc.is_rationals() && r.k_hol.is_rationals(), tag + ": K_sc or K_hol is not Q");
    const auto vg = veech_group(o, 1000000);
    for (const auto& [w, m] : vg.generators)
      log.expect(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) == 1, tag + ": generator " + w + " has det != 1");
    if (i <= 20) examples.push_back({tag, r});
  }
}

void criterion7(Log& log) {
  for (const auto& o : origami_sample(7, 100)) {
    const auto d = detect_origami(to_surface(o));
    log.expect(d.is_origami, "origami not detected");
    log.expect(d.lattice_basis.has_value(), "no lattice basis");
    if (d.lattice_basis) {
      const auto& lb = *d.lattice_basis;
      const FieldElem det = lb[0](0) * lb[1](1) - lb[0](1) * lb[1](0);
      log.expect(det == 1 || det == -1, "lattice is not Z^2");
      for (const auto& w : lb) log.expect(is_integral(w(0)) && is_integral(w(1)), "lattice is not Z^2");
    }
  }
  auto q = quadratic_tower({2});
  const FieldElem r = q->gen("sqrt2");
  Polygon sq{{v2(0, 0), v2(r, 0), v2(r, r), v2(0, r)}};
  const auto d = detect_origami(PolygonComplex({sq}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}}, {{0, 0}}));
  log.expect(d.is_origami, "sqrt2 torus not detected");
  if (d.affine_map) {
    Mat2 want;
    want << 1 / r, 0, 0, 1 / r;
    log.expect(*d.affine_map == want, "affine map is not diag(1/sqrt2, 1/sqrt2)");
  } else {
    log.fail("sqrt2 torus has no affine map");
  }
  for (int p : {2, 3, 5}) {
    const auto m = holonomy_modules_window(build_three_plane_sqrtp(p).object, FieldElem(3), 4);
    log.expect(m.lambda0.rank_z == 3 && !m.lambda0.is_lattice(),
               "three-plane p = " + std::to_string(p) + " not rejected (Lambda0 rank " +
                   std::to_string(m.lambda0.rank_z) + ")");
  }
}

void criterion8(Log& log) {
  const FreeWord conj{1, 2, -1};
  for (const auto& x : origami_sample(8, 1000)) {
    const Origami o = canonical_form(x);
    log.expect(sl2z_act("SSSS", o) == o, "S^4 acts nontrivially");
    log.expect(sl2z_act("SST", o) == sl2z_act("TSS", o), "S^2 does not commute with T");
    log.expect(sl2z_act("STSTSTSTSTST", o) == o, "(ST)^6 acts nontrivially");
  }
  for (const auto& o : origami_sample(88, 50))
    for (Generator g : {Generator::S, Generator::T}) {
      const auto alt = conjugated(standard_lift(g), conj);
      log.expect(abelianization(alt) == generator_matrix(g), "alternative lift has the wrong matrix");
      log.expect(pullback(o, alt) == sl2z_act(g, o), "alternative lift changes the image");
    }
}

void criterion9(Log& log) {
  std::mt19937 rng(9);
  const int radicands[] = {2, 3, 5, 7};
  int irrational = 0;
  for (int i = 0; i < 50; ++i) {
    auto tw = quadratic_tower({radicands[rng() % 4]});
    const auto c = random_symmetric_polygon(rng, tw, 4 + static_cast<int>(rng() % 2));
    const auto r = surface_fields(c, diameter_bound(c));
    const std::string tag = "polygon " + std::to_string(i);
    log.expect(r.k_cr.has_value(), tag + ": K_cr undefined");
    if (r.k_cr) log.expect(same_field(*r.k_cr, r.k_sc), tag + ": K_cr = " + r.k_cr->describe() + ", K_sc = " + r.k_sc.describe());
    irrational += !r.k_sc.is_rationals();
    if (i < 10) examples.push_back({tag, r});
  }
  // The sample must exercise genuinely quadratic fields.
  log.expect(irrational >= 40, std::to_string(irrational) + " of 50 samples have K_sc != Q");
}

void criterion10(Log& log) {
  // The transcendental page is only reached here.
  const auto page = build_transcendental_page();
  const auto r = surface_fields(page.object, FieldElem(2));
  log.expect(!r.k_hol.is_rationals(), "transcendental page: K_hol is Q");
  examples.push_back({"transcendental page", r});
  log.expect(examples.size() >= 8, "too few examples collected");
  for (const auto& ex : examples) check_containments(log, ex);
}

void criterion11(Log& log) {
  auto t = TowerBuilder().transcendental("t", Embedding::named(Constant::pi)).build();
  MatrixGroupGens g;
  g.trace_presented = {{t->gen("t"), FieldElem(1)}};
  const auto f = field_tr(g);
  log.expect(!f.degree().has_value(), "degree is finite");
  log.expect(f.transcendence_names() == std::vector<std::string>{"t"}, "transcendence generators are not {t}");
  log.expect(is_member(t->gen("t"), f), "t not in the trace field");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<void(Log&)> run;
  };
  const std::vector<Criterion> criteria{
      {"cross ratio of the four-line quadruple is alpha/(alpha+N)", 1, criterion1},
      {"three-plane sqrt p surface: six 4pi points, K_cr = Q, sqrt p in K_sc", 15, criterion2},
      {"glued L pair: Lambda = Z^2, K_sc and K_cr differ from Q", 10, criterion3},
      {"two-plane mu surface: Lambda holds c1, c2, c3, rank 3, K_cr = Q, K_hol != Q", 10, criterion4},
      {"staircase: holonomy set, K_cr = Q, (n+1) lambda in K_tr", 10, criterion5},
      {"random origamis: integral holonomy, K_sc = K_hol = Q, det 1 Veech generators", 120, criterion6},
      {"origami detection and rejection", 10, criterion7},
      {"SL(2,Z) relations and lift independence on origamis", 120, criterion8},
      {"K_cr = K_sc on random symmetric polygons", 300, criterion9},
      {"containments on all examples", 60, criterion10},
      {"trace field of a trace-presented generator is transcendental", 1, criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Log log;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(log);
    } catch (const std::exception& e) {
      log.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > criteria[i].limit_s) log.fail("over the time limit");
    const bool ok = log.failures == 0;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << std::setw(2) << i + 1 << "] " << criteria[i].name << " ("
              << std::fixed << std::setprecision(2) << s << " s / " << criteria[i].limit_s << " s)\n"
              << log.notes.str() << std::flush;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed;
}
