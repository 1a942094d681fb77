#pragma once

#include <optional>
#include <vector>

#include "tsurf/exactnum/subfield.hpp"
#include "tsurf/geometry.hpp"
#include "tsurf/module.hpp"
#include "tsurf/slitatlas.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

// y/x; nullopt is the vertical slope.
using Slope = std::optional<FieldElem>;

Slope slope_of(const Vec2& v);
// Infinity first, then increasing.
int compare_slopes(const Slope& a, const Slope& b);

struct SlopeSet {
  std::vector<Slope> slopes;  // distinct, sorted by compare_slopes
};
SlopeSet slope_set(const std::vector<Vec2>& vectors);

FieldElem cross_ratio(const Slope& r1, const Slope& r2, const Slope& r3, const Slope& r4);
FieldElem cross_ratio(const Vec2& v1, const Vec2& v2, const Vec2& v3, const Vec2& v4);

// Field of all cross ratios. Throws fewer_than_four_slopes.
SubfieldDesc field_cr(const SlopeSet& s, TowerPtr tower = nullptr);
// Same field from every ordered 4-tuple; for checking.
SubfieldDesc field_cr_brute_force(const SlopeSet& s, TowerPtr tower = nullptr);

// Coefficients of every generator in the basis of the first non-parallel pair.
SubfieldDesc field_hol(const ModuleDesc& m, TowerPtr tower = nullptr);
// Same, with the basis pair (i, j) of generators.
SubfieldDesc field_hol(const ModuleDesc& m, std::size_t i, std::size_t j, TowerPtr tower = nullptr);
inline SubfieldDesc field_sc(const ModuleDesc& lambda0, TowerPtr tower = nullptr) { return field_hol(lambda0, tower); }

struct MatrixGroupGens {
  std::vector<Mat2> generators;  // det > 0
  // A cyclic group whose generator is known only by trace and determinant.
  std::optional<std::pair<FieldElem, FieldElem>> trace_presented;
};

// Traces of all words of length at most word_len in the generators and
// their inverses.
SubfieldDesc field_tr(const MatrixGroupGens& g, int word_len = 3, TowerPtr tower = nullptr);
// Trace of the word given as generator indices (negative index -i-1 for the
// inverse of generator i).
FieldElem word_trace(const MatrixGroupGens& g, const std::vector<int>& word);

struct Containments {
  bool hol_in_sc = false;
  std::optional<bool> cr_in_sc;   // empty when K_cr is undefined
  std::optional<bool> tr_in_hol;  // empty without K_tr or without two independent vectors
  std::optional<bool> cr_eq_sc;
};
Containments containments(const std::optional<SubfieldDesc>& ktr, const SubfieldDesc& khol, const SubfieldDesc& ksc,
                          const std::optional<SubfieldDesc>& kcr, bool independent_hol_pair);

struct FieldsReport {
  SubfieldDesc k_hol, k_sc;
  std::optional<SubfieldDesc> k_cr;
  std::optional<SubfieldDesc> k_tr;
  Containments containments;
  ModuleDesc lambda, lambda0;
  SlopeSet slopes;
  std::vector<Vec2> saddle_vectors;  // distinct holonomy vectors found
  bool kcr_undefined = false;
  bool truncated = false;
};

// Lambda and Lambda0 from the complex, slopes from saddle connections up to
// `bound`, K_tr from `veech` when given.
FieldsReport surface_fields(const PolygonComplex& c, const FieldElem& bound,
                            const std::optional<MatrixGroupGens>& veech = std::nullopt, int word_len = 3);
// Windowed versions of the same.
FieldsReport atlas_fields(const SlitAtlas& a, const FieldElem& bound, int max_crossings,
                          const std::optional<MatrixGroupGens>& veech = std::nullopt, int word_len = 3);

}  // namespace tsurf
