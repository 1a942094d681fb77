#include "tsurf/io.hpp"

#include <algorithm>

namespace tsurf::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::parse_error, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int get_int(const json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<int>();
}

std::string get_string(const json& j) {
  if (!j.is_string()) bad("expected a string, got " + j.dump());
  return j.get<std::string>();
}

const json& get_array(const json& j, std::size_t size = 0) {
  if (!j.is_array() || (size && j.size() != size)) bad("expected an array, got " + j.dump());
  return j;
}

json value_to_json(const detail::Value& v, const TowerPtr& t) {
  if (v.level == 0) return to_string(v.q);
  json out{{"level", v.level}};
  auto list = [&](const std::vector<detail::Value>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(value_to_json(x, t));
    return a;
  };
  if (t->level(v.level).kind == LevelKind::algebraic) {
    out["coeffs"] = list(v.a);
  } else {
    out["num"] = list(v.a);
    out["den"] = list(v.b);
  }
  return out;
}

FieldElem polynomial_at(const json& coeffs, const FieldElem& g, const TowerPtr& t) {
  FieldElem sum(0), power(1);
  for (const auto& c : get_array(coeffs)) {
    sum += elem_from_json(c, t) * power;
    power *= g;
  }
  return sum;
}

json turns_to_json(const std::optional<int>& t) { return t ? json(*t) : json("infinite"); }

std::optional<int> turns_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "infinite") return std::nullopt;
  return get_int(j);
}

const char* bank_name(Bank b) { return b == Bank::left ? "left" : "right"; }

Bank bank_from(const json& j) {
  const auto s = get_string(j);
  if (s == "left") return Bank::left;
  if (s == "right") return Bank::right;
  bad("bank must be left or right");
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

json slope_to_json(const Slope& s) { return s ? elem_to_json(*s) : json("inf"); }

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

const char* field_key(FieldName f) {
  switch (f) {
    case FieldName::hol: return "K_hol";
    case FieldName::sc: return "K_sc";
    case FieldName::cr: return "K_cr";
    case FieldName::tr: return "K_tr";
  }
  return "";
}

const char* claim_kind(FieldClaim::Kind k) {
  switch (k) {
    case FieldClaim::Kind::is_rationals: return "is_Q";
    case FieldClaim::Kind::not_rationals: return "not_Q";
    case FieldClaim::Kind::contains: return "contains";
    case FieldClaim::Kind::excludes: return "excludes";
  }
  return "";
}

}  // namespace

json tower_to_json(const TowerPtr& t) {
  if (!t) return nullptr;
  json ext = json::array(), trans = json::array();
  for (int i = 1; i <= t->height(); ++i) {
    const auto& l = t->level(i);
    if (l.kind == LevelKind::algebraic) {
      ext.push_back({{"name", l.name},
                     {"minpoly_coeffs", l.minpoly_text},
                     {"isolating_interval", {to_string(l.lo), to_string(l.hi)}}});
    } else {
      trans.push_back(
          {{"name", l.name}, {"constant", std::string(to_string(l.embedding.constant))}, {"decimal_hint", l.embedding.hint}});
    }
  }
  return {{"extensions", ext}, {"transcendentals", trans}};
}

TowerPtr tower_from_json(const json& j) {
  if (j.is_null()) return nullptr;
  return guarded([&] {
    TowerBuilder b;
    for (const auto& e : get_array(field(j, "extensions"))) {
      std::vector<std::string> coeffs;
      for (const auto& c : get_array(field(e, "minpoly_coeffs"))) coeffs.push_back(get_string(c));
      const auto& iv = get_array(field(e, "isolating_interval"), 2);
      b.extension(get_string(field(e, "name")), coeffs, parse_rational(get_string(iv[0])),
                  parse_rational(get_string(iv[1])));
    }
    for (const auto& e : get_array(field(j, "transcendentals"))) {
      const std::string name = get_string(field(e, "name"));
      std::optional<Constant> c;
      if (e.contains("constant")) c = constant_from_string(get_string(e.at("constant")));
      if (c && *c != Constant::decimal)
        b.transcendental(name, Embedding::named(*c));
      else
        b.transcendental(name, Embedding::decimal(get_string(field(e, "decimal_hint"))));
    }
    return b.build();
  });
}

json elem_to_json(const FieldElem& x) { return value_to_json(x.value(), x.tower()); }

FieldElem elem_from_json(const json& j, const TowerPtr& t) {
  if (j.is_string()) return parse_element(t, j.get<std::string>());
  if (j.is_number_integer()) return FieldElem(j.get<long long>());
  if (!j.is_object()) bad("malformed field element " + j.dump());
  if (!t) bad("field element needs a tower");
  const int level = get_int(field(j, "level"));
  if (level < 1 || level > t->height()) bad("field element level out of range");
  const FieldElem g = t->gen(level);
  if (t->level(level).kind == LevelKind::algebraic) return polynomial_at(field(j, "coeffs"), g, t);
  return polynomial_at(field(j, "num"), g, t) / polynomial_at(field(j, "den"), g, t);
}

json vec_to_json(const Vec2& v) { return {elem_to_json(v(0)), elem_to_json(v(1))}; }

Vec2 vec_from_json(const json& j, const TowerPtr& t) {
  const auto& a = get_array(j, 2);
  return Vec2(elem_from_json(a[0], t), elem_from_json(a[1], t));
}

json surface_to_json(const PolygonComplex& c) {
  json polys = json::array(), glue = json::array(), marked = json::array();
  for (const auto& p : c.polygons()) {
    json vs = json::array();
    for (const auto& v : p.vertices) vs.push_back(vec_to_json(v));
    polys.push_back(vs);
  }
  for (const auto& g : c.gluings()) glue.push_back({{g.a.polygon, g.a.edge}, {g.b.polygon, g.b.edge}});
  for (const auto& m : c.marked()) marked.push_back({m.polygon, m.vertex});
  return {{"tower", tower_to_json(c.tower())}, {"polygons", polys}, {"gluings", glue}, {"marked", marked}};
}

PolygonComplex surface_from_json(const json& j, TowerPtr* tower) {
  return guarded([&] {
    const TowerPtr t = j.contains("tower") ? tower_from_json(j.at("tower")) : nullptr;
    if (tower) *tower = t;
    std::vector<Polygon> polys;
    for (const auto& p : get_array(field(j, "polygons"))) {
      Polygon poly;
      for (const auto& v : get_array(p)) poly.vertices.push_back(vec_from_json(v, t));
      polys.push_back(std::move(poly));
    }
    std::vector<Gluing> glue;
    for (const auto& g : get_array(field(j, "gluings"))) {
      const auto& pr = get_array(g, 2);
      const auto &a = get_array(pr[0], 2), &b = get_array(pr[1], 2);
      glue.push_back({{get_int(a[0]), get_int(a[1])}, {get_int(b[0]), get_int(b[1])}});
    }
    std::vector<VertexRef> marked;
    if (j.contains("marked"))
      for (const auto& m : get_array(j.at("marked"))) {
        const auto& a = get_array(m, 2);
        marked.push_back({get_int(a[0]), get_int(a[1])});
      }
    return PolygonComplex(std::move(polys), std::move(glue), std::move(marked));
  });
}

json atlas_to_json(const SlitAtlas& a) {
  json planes = json::array(), glue = json::array();
  for (const auto& plane : a.slits()) {
    json ss = json::array();
    for (const auto& s : plane) {
      if (s.kind == SlitKind::segment)
        ss.push_back({{"kind", "segment"}, {"p0", vec_to_json(s.p0)}, {"p1", vec_to_json(s.p1)}});
      else
        ss.push_back({{"kind", "ray"}, {"p0", vec_to_json(s.p0)}, {"dir", vec_to_json(s.dir)}});
    }
    planes.push_back(ss);
  }
  for (const auto& [x, y] : a.gluings())
    glue.push_back({{x.plane, x.slit, bank_name(x.bank)}, {y.plane, y.slit, bank_name(y.bank)}});
  return {{"tower", tower_to_json(a.tower())},
          {"planes", planes},
          {"gluings", glue},
          {"window", {{"lo", vec_to_json(a.window().lo)}, {"hi", vec_to_json(a.window().hi)}}},
          {"truncated", a.truncated()}};
}

SlitAtlas atlas_from_json(const json& j, TowerPtr* tower) {
  return guarded([&] {
    const TowerPtr t = j.contains("tower") ? tower_from_json(j.at("tower")) : nullptr;
    if (tower) *tower = t;
    std::vector<std::vector<Slit>> slits;
    for (const auto& plane : get_array(field(j, "planes"))) {
      std::vector<Slit> ss;
      for (const auto& s : get_array(plane)) {
        const auto kind = get_string(field(s, "kind"));
        const Vec2 p0 = vec_from_json(field(s, "p0"), t);
        if (kind == "segment")
          ss.push_back(Slit::segment(p0, vec_from_json(field(s, "p1"), t)));
        else if (kind == "ray")
          ss.push_back(Slit::ray(p0, vec_from_json(field(s, "dir"), t)));
        else
          bad("slit kind must be segment or ray");
      }
      slits.push_back(std::move(ss));
    }
    std::vector<std::pair<BankRef, BankRef>> glue;
    for (const auto& g : get_array(field(j, "gluings"))) {
      const auto& pr = get_array(g, 2);
      auto ref = [&](const json& r) {
        const auto& a = get_array(r, 3);
        return BankRef{get_int(a[0]), get_int(a[1]), bank_from(a[2])};
      };
      glue.push_back({ref(pr[0]), ref(pr[1])});
    }
    const auto& w = field(j, "window");
    const int planes = static_cast<int>(slits.size());
    return SlitAtlas(planes, std::move(slits), std::move(glue),
                     Window{vec_from_json(field(w, "lo"), t), vec_from_json(field(w, "hi"), t)});
  });
}

json origami_to_json(const Origami& o) {
  std::vector<int> h, v;
  for (int x : o.h()) h.push_back(x + 1);
  for (int x : o.v()) v.push_back(x + 1);
  return {{"n", o.size()}, {"sigma_h", h}, {"sigma_v", v}};
}

Origami origami_from_json(const json& j) {
  return guarded([&] {
    const int n = get_int(field(j, "n"));
    auto perm = [&](const json& p) {
      if (p.is_string()) return parse_permutation(p.get<std::string>(), n);
      Permutation out;
      for (const auto& x : get_array(p)) out.push_back(get_int(x) - 1);
      if (static_cast<int>(out.size()) != n || !is_permutation(out))
        throw Error(ErrorCode::malformed_permutation, "not a permutation of 1.." + std::to_string(n));
      return out;
    };
    return Origami(perm(field(j, "sigma_h")), perm(field(j, "sigma_v")));
  });
}

json int_matrix_to_json(const IntMat2& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) rows.push_back({m(r, 0).str(), m(r, 1).str()});
  return rows;
}

json veech_to_json(const VeechGroupDesc& v) {
  json gens = json::array();
  for (const auto& [w, m] : v.generators) gens.push_back({{"word", w}, {"matrix", int_matrix_to_json(m)}});
  return {{"orbit_size", v.orbit_size},
          {"generators", gens},
          {"coset_representatives", v.coset_representatives},
          {"contains_minus_identity", v.contains_minus_identity}};
}

json stratum_to_json(const StratumDesc& s) {
  json cones = json::array();
  for (int l : s.cone_points) cones.push_back({{"cycle_length", l}, {"cone_angle", std::to_string(2 * l) + "pi"}});
  return {{"cone_points", cones}, {"genus", s.genus}, {"marked_regular_points", s.marked_regular_points}};
}

json saddles_to_json(const SaddleConnectionSet& s) {
  json cs = json::array();
  for (const auto& c : s.connections)
    cs.push_back({{"holonomy", vec_to_json(c.holonomy)},
                  {"start", c.start},
                  {"end", c.end},
                  {"multiplicity", c.multiplicity}});
  return {{"bound", elem_to_json(s.bound)}, {"truncated", s.truncated}, {"connections", cs}};
}

json module_to_json(const ModuleDesc& m) {
  json gens = json::array();
  for (const auto& g : m.generators) gens.push_back(vec_to_json(g));
  json basis = nullptr;
  if (m.lattice_basis) {
    basis = json::array();
    for (const auto& b : *m.lattice_basis) basis.push_back(vec_to_json(b));
  }
  return {{"generators", gens}, {"rank_z", m.rank_z}, {"real_span_dim", m.span_dim}, {"lattice_basis", basis}};
}

json subfield_to_json(const SubfieldDesc& f) {
  json gens = json::array();
  for (const auto& g : f.generators) gens.push_back(elem_to_json(g));
  const auto d = f.degree();
  const auto prim = f.primitive_element();
  return {{"generators", gens},
          {"degree", d ? json(*d) : json("infinite")},
          {"algebraic_degree", f.algebraic_degree()},
          {"primitive_element", prim ? elem_to_json(*prim) : json(nullptr)},
          {"minimal_polynomial", poly_to_string(f.algebraic_minpoly)},
          {"transcendence_generators", f.transcendence_names()},
          {"is_Q", f.is_rationals()},
          {"description", f.describe()}};
}

json report_to_json(const FieldsReport& r) {
  json slopes = json::array();
  for (const auto& s : r.slopes.slopes) slopes.push_back(slope_to_json(s));
  json vectors = json::array();
  for (const auto& v : r.saddle_vectors) vectors.push_back(vec_to_json(v));
  return {{"K_hol", subfield_to_json(r.k_hol)},
          {"K_sc", subfield_to_json(r.k_sc)},
          {"K_cr", r.k_cr ? subfield_to_json(*r.k_cr) : json(nullptr)},
          {"K_tr", r.k_tr ? subfield_to_json(*r.k_tr) : json(nullptr)},
          {"containments",
           {{"K_hol_in_K_sc", r.containments.hol_in_sc},
            {"K_cr_in_K_sc", opt_bool(r.containments.cr_in_sc)},
            {"K_tr_in_K_hol", opt_bool(r.containments.tr_in_hol)},
            {"K_cr_equals_K_sc", opt_bool(r.containments.cr_eq_sc)}}},
          {"flags", {{"kcr_undefined", r.kcr_undefined}, {"truncated", r.truncated}}},
          {"lambda", module_to_json(r.lambda)},
          {"lambda0", module_to_json(r.lambda0)},
          {"slopes", slopes},
          {"saddle_vectors", vectors}};
}

json verdict_to_json(const OrigamiVerdict& v) {
  json out{{"is_origami", v.is_origami}, {"lambda0", module_to_json(v.lambda0)}};
  if (v.affine_map) {
    const Mat2& m = *v.affine_map;
    out["affine_map"] = {{elem_to_json(m(0, 0)), elem_to_json(m(0, 1))}, {elem_to_json(m(1, 0)), elem_to_json(m(1, 1))}};
  } else {
    out["affine_map"] = nullptr;
  }
  if (v.lattice_basis)
    out["lattice_basis"] = {vec_to_json((*v.lattice_basis)[0]), vec_to_json((*v.lattice_basis)[1])};
  else
    out["lattice_basis"] = nullptr;
  return out;
}

json matrix_group_to_json(const MatrixGroupGens& g) {
  json gens = json::array();
  for (const auto& m : g.generators)
    gens.push_back({{elem_to_json(m(0, 0)), elem_to_json(m(0, 1))}, {elem_to_json(m(1, 0)), elem_to_json(m(1, 1))}});
  json out{{"generators", gens}};
  if (g.trace_presented)
    out["trace_presented"] = {{"trace", elem_to_json(g.trace_presented->first)},
                              {"det", elem_to_json(g.trace_presented->second)}};
  return out;
}

MatrixGroupGens matrix_group_from_json(const json& j, const TowerPtr& t) {
  return guarded([&] {
    MatrixGroupGens g;
    for (const auto& m : get_array(field(j, "generators"))) {
      const auto& rows = get_array(m, 2);
      Mat2 x;
      for (int r = 0; r < 2; ++r) {
        const auto& row = get_array(rows[r], 2);
        x(r, 0) = elem_from_json(row[0], t);
        x(r, 1) = elem_from_json(row[1], t);
      }
      g.generators.push_back(x);
    }
    if (j.contains("trace_presented")) {
      const auto& tp = j.at("trace_presented");
      g.trace_presented = {{elem_from_json(field(tp, "trace"), t), elem_from_json(field(tp, "det"), t)}};
    }
    return g;
  });
}

json expected_to_json(const ExpectedRecord& e) {
  json out{{"claims", e.claims}};
  if (e.cone_turns) {
    json t = json::array();
    for (const auto& x : *e.cone_turns) t.push_back(turns_to_json(x));
    out["cone_turns"] = t;
  }
  if (e.genus) out["genus"] = *e.genus;
  json fs = json::array();
  for (const auto& c : e.fields) {
    json els = json::array();
    for (const auto& x : c.elements) els.push_back(elem_to_json(x));
    fs.push_back({{"field", field_key(c.field)}, {"kind", claim_kind(c.kind)}, {"elements", els}});
  }
  out["fields"] = fs;
  json lc = json::array();
  for (const auto& v : e.lambda_contains) lc.push_back(vec_to_json(v));
  out["lambda_contains"] = lc;
  if (e.lambda_rank) out["lambda_rank"] = *e.lambda_rank;
  out["lambda_is_Z2"] = e.lambda_is_z2;
  if (e.holonomy_vectors) {
    json hv = json::array();
    for (const auto& v : *e.holonomy_vectors) hv.push_back(vec_to_json(v));
    out["holonomy_vectors"] = hv;
  }
  return out;
}

ExpectedRecord expected_from_json(const json& j, const TowerPtr& t) {
  return guarded([&] {
    ExpectedRecord e;
    if (j.contains("claims"))
      for (const auto& c : get_array(j.at("claims"))) e.claims.push_back(get_string(c));
    if (j.contains("cone_turns")) {
      e.cone_turns.emplace();
      for (const auto& x : get_array(j.at("cone_turns"))) e.cone_turns->push_back(turns_from_json(x));
    }
    if (j.contains("genus")) e.genus = get_int(j.at("genus"));
    if (j.contains("fields"))
      for (const auto& f : get_array(j.at("fields"))) {
        FieldClaim c{};
        const auto name = get_string(field(f, "field"));
        const auto kind = get_string(field(f, "kind"));
        bool known = false;
        for (FieldName n : {FieldName::hol, FieldName::sc, FieldName::cr, FieldName::tr})
          if (name == field_key(n)) c.field = n, known = true;
        if (!known) bad("unknown field " + name);
        known = false;
        for (auto k : {FieldClaim::Kind::is_rationals, FieldClaim::Kind::not_rationals, FieldClaim::Kind::contains,
                       FieldClaim::Kind::excludes})
          if (kind == claim_kind(k)) c.kind = k, known = true;
        if (!known) bad("unknown claim kind " + kind);
        if (f.contains("elements"))
          for (const auto& x : get_array(f.at("elements"))) c.elements.push_back(elem_from_json(x, t));
        e.fields.push_back(std::move(c));
      }
    if (j.contains("lambda_contains"))
      for (const auto& v : get_array(j.at("lambda_contains"))) e.lambda_contains.push_back(vec_from_json(v, t));
    if (j.contains("lambda_rank")) e.lambda_rank = get_int(j.at("lambda_rank"));
    if (j.contains("lambda_is_Z2")) e.lambda_is_z2 = j.at("lambda_is_Z2").get<bool>();
    if (j.contains("holonomy_vectors")) {
      e.holonomy_vectors.emplace();
      for (const auto& v : get_array(j.at("holonomy_vectors"))) e.holonomy_vectors->push_back(vec_from_json(v, t));
    }
    return e;
  });
}

namespace {

template <class T>
json built_common(const Built<T>& b) {
  json params = json::object();
  for (const auto& [k, x] : b.parameters) params[k] = elem_to_json(x);
  json out{{"name", b.name}, {"parameters", params}, {"expected", expected_to_json(b.expected)}};
  out["veech"] = b.veech ? matrix_group_to_json(*b.veech) : json(nullptr);
  return out;
}

}  // namespace

json built_to_json(const Built<SlitAtlas>& b) {
  json out = built_common(b);
  out["atlas"] = atlas_to_json(b.object);
  return out;
}

json built_to_json(const Built<PolygonComplex>& b) {
  json out = built_common(b);
  out["surface"] = surface_to_json(b.object);
  return out;
}

}  // namespace tsurf::io
