#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsurf/fields.hpp"
#include "tsurf/origami.hpp"
#include "tsurf/slitatlas.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

enum class FieldName { hol, sc, cr, tr };

// Statement about one field: equal to Q, different from Q, or containing
// the listed elements.
struct FieldClaim {
  enum class Kind { is_rationals, not_rationals, contains, excludes };
  FieldName field;
  Kind kind;
  std::vector<FieldElem> elements;
};

struct ExpectedRecord {
  std::vector<std::string> claims;  // one line of prose per checked statement
  std::optional<std::vector<std::optional<int>>> cone_turns;  // sorted, nullopt = infinite angle
  std::optional<int> genus;
  std::vector<FieldClaim> fields;
  std::vector<Vec2> lambda_contains;
  std::optional<int> lambda_rank;
  bool lambda_is_z2 = false;
  // Exact set of saddle-connection vectors, both orientations.
  std::optional<std::vector<Vec2>> holonomy_vectors;
};

template <class T>
struct Built {
  std::string name;
  std::vector<std::pair<std::string, FieldElem>> parameters;
  T object;
  ExpectedRecord expected;
  std::optional<MatrixGroupGens> veech;  // known affine generators, for K_tr
};

// Default window half-width and crossing budget for atlas computations.
struct WindowOptions {
  FieldElem bound{3};
  int crossings = 4;
};

Built<SlitAtlas> build_three_plane_sqrtp(int p, int window = 10);
Built<PolygonComplex> build_glued_L_pair(const FieldElem& eps, const Vec2& dir);
Built<SlitAtlas> build_two_plane_mu(const FieldElem& mu1, const FieldElem& mu2, const FieldElem& mu3, int window = 20);
Built<SlitAtlas> build_staircase(const FieldElem& lambda, int n, int k_min = -2, int k_max = 2);
Origami build_L_origami();
std::array<Vec2, 4> build_cross_ratio_quadruple(const FieldElem& alpha, int N);
// A square torus page carrying a unit mark glued to an e by pi torus, over
// the tower Q(t1, t2) with t1 -> pi, t2 -> e.
Built<PolygonComplex> build_transcendental_page(int n = 1);

// Empty when every expected statement holds; otherwise one line per failure.
std::vector<std::string> check_expected(const ExpectedRecord& e, const FieldsReport& r,
                                        const std::vector<std::optional<int>>& cone_turns,
                                        const std::vector<Vec2>& saddle_vectors, std::optional<int> genus = std::nullopt);

// Full pipeline on a built object with the given search limits.
struct BuiltCheck {
  FieldsReport report;
  std::vector<Vec2> saddle_vectors;
  std::vector<std::optional<int>> cone_turns;
  std::vector<std::string> failures;
};
BuiltCheck verify(const Built<SlitAtlas>& b, const WindowOptions& w, int word_len = 3);
BuiltCheck verify(const Built<PolygonComplex>& b, const FieldElem& bound, int word_len = 3);

}  // namespace tsurf
