#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "tsurf/origami.hpp"

using namespace tsurf;

namespace {

Permutation id(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

// Squares 1, 2 in a row and 3 on top of 1.
Origami L() { return Origami({1, 0, 2}, {2, 1, 0}); }

// Canonical representative over all n! relabelings.
Origami naive_canonical(const Origami& o) {
  Permutation r = id(o.size());
  Origami best = o;
  do {
    Origami c = relabeled(o, r);
    if (c < best) best = c;
  } while (std::next_permutation(r.begin(), r.end()));
  return best;
}

// Geometric moves written out directly: after a counterclockwise quarter
// turn the right neighbour is the old bottom neighbour and the top
// neighbour is the old right neighbour. Shearing by T^-1 makes the top
// neighbour "up, then right".
Origami rotate_ccw(const Origami& o) { return Origami(inverse(o.v()), o.h()); }
Origami shear_inv(const Origami& o) {
  Permutation v(o.size());
  for (int i = 0; i < o.size(); ++i) v[i] = o.h()[o.v()[i]];
  return Origami(o.h(), v);
}

Origami random_origami(std::mt19937& rng, int n) {
  for (;;) {
    Permutation h = id(n), v = id(n);
    std::shuffle(h.begin(), h.end(), rng);
    std::shuffle(v.begin(), v.end(), rng);
    try {
      return Origami(h, v);
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(Origami({0}, {0}));
  CHECK_NOTHROW(Origami({1, 0}, {0, 1}));
  try {
    Origami({0, 1}, {0, 1});
    FAIL("expected not-connected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_connected);
  }
  CHECK_THROWS_AS(Origami({0, 0}, {0, 1}), Error);
  CHECK(parse_permutation("(1 2)(3)", 3) == Permutation{1, 0, 2});
  CHECK(parse_permutation("[2,3,1]", 3) == Permutation{1, 2, 0});
  CHECK(parse_permutation("", 2) == id(2));
  CHECK_THROWS_AS(parse_permutation("(1 2)(2 3)", 3), Error);
  CHECK_THROWS_AS(parse_permutation("1 1 2", 3), Error);
  CHECK(cycle_string({1, 2, 0, 3}) == "(1 2 3)");
}

TEST_CASE("canonical form agrees with exhaustive relabeling") {
  const Origami l = L();
  Permutation r = id(3);
  do {
    CHECK(canonical_form(relabeled(l, r)) == canonical_form(l));
  } while (std::next_permutation(r.begin(), r.end()));
  CHECK(canonical_form(Origami({0}, {0})) == Origami({0}, {0}));

  std::mt19937 rng(3);
  std::vector<Origami> sample;
  for (int i = 0; i < 60; ++i) sample.push_back(random_origami(rng, 1 + static_cast<int>(rng() % 5)));
  for (const auto& a : sample) {
    Permutation p = id(a.size());
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(canonical_form(relabeled(a, p)) == canonical_form(a));
    for (const auto& b : sample)
      if (a.size() == b.size())
        CHECK((canonical_form(a) == canonical_form(b)) == (naive_canonical(a) == naive_canonical(b)));
  }
}

TEST_CASE("strata") {
  auto torus = stratum(Origami({0}, {0}));
  CHECK(torus.cone_points.empty());
  CHECK(torus.marked_regular_points == 1);
  CHECK(torus.genus == 1);

  auto l = stratum(L());
  CHECK(l.cone_points == std::vector<int>{3});
  CHECK(l.genus == 2);

  auto cyl = stratum(Origami({1, 0}, {0, 1}));
  CHECK(cyl.cycle_lengths == std::vector<int>{1, 1});
  CHECK(cyl.genus == 1);

  // Gauss-Bonnet, and agreement with the corner walk on the square complex.
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    Origami o = random_origami(rng, 1 + static_cast<int>(rng() % 7));
    auto s = stratum(o);
    int excess = 0;
    for (int l : s.cycle_lengths) excess += l - 1;
    CHECK(excess == 2 * s.genus - 2);
    std::vector<int> turns;
    for (const auto& c : cone_points(to_surface(o))) turns.push_back(c.turns);
    std::sort(turns.rbegin(), turns.rend());
    CHECK(turns == s.cycle_lengths);
  }
}

TEST_CASE("lifts and matrices") {
  IntMat2 s, t;
  s << 0, 1, -1, 0;
  t << 1, 1, 0, 1;
  CHECK(generator_matrix(Generator::S) == s);
  CHECK(generator_matrix(Generator::T) == t);
  CHECK(generator_matrix(Generator::S) * generator_matrix(Generator::S_inv) == IntMat2::Identity());
  CHECK(generator_matrix(Generator::T) * generator_matrix(Generator::T_inv) == IntMat2::Identity());
  CHECK(word_matrix("SS") == -IntMat2::Identity());
  CHECK(word_matrix("ST") == s * t);
  CHECK(inverse_word("STt") == "Tts");
  CHECK(reduce_word("STts") == "");
}

TEST_CASE("action on squares matches the geometric moves") {
  std::mt19937 rng(9);
  for (int i = 0; i < 40; ++i) {
    Origami o = random_origami(rng, 1 + static_cast<int>(rng() % 7));
    CHECK(sl2z_act(Generator::S, o) == canonical_form(rotate_ccw(o)));
    CHECK(sl2z_act(Generator::T, o) == canonical_form(shear_inv(o)));
    // S^2 is the half turn.
    CHECK(sl2z_act("SS", o) == canonical_form(Origami(inverse(o.h()), inverse(o.v()))));
  }
  const Origami torus({0}, {0});
  for (char g : std::string("STst")) CHECK(sl2z_act(std::string(1, g), torus) == torus);
  const Origami cyl({1, 0}, {0, 1});
  CHECK(sl2z_act("T", cyl) == canonical_form(Origami({1, 0}, {1, 0})));
}

TEST_CASE("group relations act trivially") {
  std::mt19937 rng(17);
  for (int i = 0; i < 150; ++i) {
    Origami o = canonical_form(random_origami(rng, 1 + static_cast<int>(rng() % 8)));
    CHECK(sl2z_act("SSSS", o) == o);
    CHECK(sl2z_act("STSTSTSTSTST", o) == o);
    CHECK(sl2z_act("SST", o) == sl2z_act("TSS", o));
    CHECK(sl2z_act("Ss", o) == o);
    CHECK(sl2z_act("tT", o) == o);
  }
}

TEST_CASE("lift independence") {
  std::mt19937 rng(23);
  const FreeWord conj{1, 2, -1};
  for (int i = 0; i < 40; ++i) {
    Origami o = random_origami(rng, 1 + static_cast<int>(rng() % 8));
    for (Generator g : {Generator::S, Generator::T, Generator::S_inv, Generator::T_inv}) {
      const auto alt = conjugated(standard_lift(g), conj);
      CHECK(abelianization(alt) == generator_matrix(g));
      CHECK(pullback(o, alt) == sl2z_act(g, o));
    }
  }
}

TEST_CASE("Veech groups") {
  const Origami torus({0}, {0});
  auto vt = veech_group(torus, 10);
  CHECK(vt.orbit_size == 1);
  std::set<std::string> words;
  for (const auto& [w, m] : vt.generators) words.insert(w);
  CHECK(words.count("S"));
  CHECK(words.count("T"));
  CHECK(vt.contains_minus_identity);

  // Orbit of the L-origami by closing its canonical form under the
  // geometric moves with exhaustive canonicalization.
  std::set<Origami> naive{naive_canonical(L())};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& o : std::vector<Origami>(naive.begin(), naive.end()))
      for (const Origami& img : {rotate_ccw(o), shear_inv(o)}) grew = naive.insert(naive_canonical(img)).second || grew;
  }
  auto vl = veech_group(L(), 100);
  CHECK(vl.orbit_size == naive.size());
  CHECK(vl.orbit_size == 3);
  CHECK(vl.coset_representatives.size() == vl.orbit_size);
  for (const auto& [w, m] : vl.generators) {
    CHECK(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) == 1);
    CHECK(word_matrix(w) == m);
    CHECK(sl2z_act(w, L()) == canonical_form(L()));
  }
  // Coset representative times a generator stays in its coset.
  for (std::size_t i = 0; i < vl.orbit_size; ++i)
    for (const auto& [w, m] : vl.generators)
      CHECK(sl2z_act(w + vl.coset_representatives[i], L()) == vl.orbit[i]);

  auto vc = veech_group(Origami({1, 0}, {0, 1}), 100);
  CHECK(sl2z_act("T", Origami({1, 0}, {0, 1})) != canonical_form(Origami({1, 0}, {0, 1})));
  CHECK(sl2z_act("TT", Origami({1, 0}, {0, 1})) == canonical_form(Origami({1, 0}, {0, 1})));
  CHECK(vc.orbit_size == 3);

  CHECK_THROWS_AS(veech_group(L(), 2), Error);
}

TEST_CASE("stabilizer index by random walks") {
  // The uniform measure on the orbit is stationary for the symmetric walk, so
  // a long random word lands in the stabilizer with frequency 1/index.
  std::mt19937 rng(31);
  const Origami start = canonical_form(L());
  const std::string letters = "STst";
  int hits = 0;
  const int trials = 3000;
  for (int i = 0; i < trials; ++i) {
    std::string w;
    for (int k = 0; k < 41; ++k) w += letters[rng() % 4];
    if (sl2z_act(w, start) == start) ++hits;
  }
  const double freq = static_cast<double>(hits) / trials;
  CHECK(freq == doctest::Approx(1.0 / 3).epsilon(0.15));
}

TEST_CASE("orbit invariance of strata") {
  std::mt19937 rng(41);
  for (int i = 0; i < 15; ++i) {
    Origami o = random_origami(rng, 2 + static_cast<int>(rng() % 5));
    auto v = veech_group(o, 100000);
    auto s = stratum(o);
    for (const auto& p : v.orbit) {
      CHECK(stratum(p).cycle_lengths == s.cycle_lengths);
      CHECK(stratum(p).genus == s.genus);
    }
    for (const auto& [w, m] : v.generators) CHECK(sl2z_act(w, o) == canonical_form(o));
  }
}
