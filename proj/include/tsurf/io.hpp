#pragma once

#include <json.hpp>

#include "tsurf/builders.hpp"
#include "tsurf/fields.hpp"
#include "tsurf/origami.hpp"
#include "tsurf/slitatlas.hpp"
#include "tsurf/surface.hpp"

namespace tsurf::io {

using nlohmann::json;

// null for the rationals.
json tower_to_json(const TowerPtr& t);
TowerPtr tower_from_json(const json& j);

// Rationals as "p/q" strings; otherwise {"level", "coeffs"} for an algebraic
// level or {"level", "num", "den"} for a transcendental one, with nested
// coefficients. Strings are also accepted on input as expressions.
json elem_to_json(const FieldElem& x);
FieldElem elem_from_json(const json& j, const TowerPtr& t);
json vec_to_json(const Vec2& v);
Vec2 vec_from_json(const json& j, const TowerPtr& t);

// Objects carry their tower under "tower"; the parsed tower is returned
// through `tower` when requested.
json surface_to_json(const PolygonComplex& c);
PolygonComplex surface_from_json(const json& j, TowerPtr* tower = nullptr);

json atlas_to_json(const SlitAtlas& a);
SlitAtlas atlas_from_json(const json& j, TowerPtr* tower = nullptr);

// One-line 1-based permutations; cycle-notation strings are accepted too.
json origami_to_json(const Origami& o);
Origami origami_from_json(const json& j);

json int_matrix_to_json(const IntMat2& m);
json veech_to_json(const VeechGroupDesc& v);
json stratum_to_json(const StratumDesc& s);
json saddles_to_json(const SaddleConnectionSet& s);
json module_to_json(const ModuleDesc& m);
json subfield_to_json(const SubfieldDesc& f);
json report_to_json(const FieldsReport& r);
json verdict_to_json(const OrigamiVerdict& v);

json matrix_group_to_json(const MatrixGroupGens& g);
MatrixGroupGens matrix_group_from_json(const json& j, const TowerPtr& t);

json expected_to_json(const ExpectedRecord& e);
ExpectedRecord expected_from_json(const json& j, const TowerPtr& t);

// {"name", "parameters", "surface" or "atlas", "expected", "veech"}.
json built_to_json(const Built<SlitAtlas>& b);
json built_to_json(const Built<PolygonComplex>& b);

}  // namespace tsurf::io
