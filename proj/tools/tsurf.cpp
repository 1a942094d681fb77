// Command-line front end. JSON on stdout, a short summary on stderr
// (or the summary alone on stdout with --format text).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <set>
#include <sstream>

#include "tsurf/io.hpp"

using namespace tsurf;
using io::json;

namespace {

struct Options {
  std::string input = "-";
  std::string bound = "3";
  int crossings = 4;
  std::size_t orbit_cap = 100000;
  int word_len = 3;
  int window = 0;
  std::string format = "json";

  // build parameters
  std::string builder;
  int p = 2;
  std::string eps = "1/10";
  std::string dir_x = "1", dir_y = "sqrt2/2";
  std::string mu1 = "sqrt2", mu2 = "sqrt3", mu3 = "sqrt5";
  std::string lambda = "sqrt2/2";
  int n = 2;
  int k_min = -2, k_max = 2;
  std::string alpha;
  int N = 1;
  int page_n = 1;
};

struct Output {
  json data;
  std::string summary;
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse_error:
    case ErrorCode::malformed_permutation: return 2;
    case ErrorCode::orbit_cap_exceeded: return 4;
    case ErrorCode::constraint_violation:
    case ErrorCode::not_connected:
    case ErrorCode::non_parallel_gluing:
    case ErrorCode::unmatched_edge:
    case ErrorCode::malformed_polygon:
    case ErrorCode::no_cone_points:
    case ErrorCode::overlapping_slits:
    case ErrorCode::incongruent_gluing:
    case ErrorCode::starts_on_slit_interior:
    case ErrorCode::parallel_vectors:
    case ErrorCode::fewer_than_four_slopes:
    case ErrorCode::slope_rational: return 3;
    default: return 1;
  }
}

json read_input(const std::string& where) {
  std::string text;
  if (where == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!where.empty() && (where.front() == '{' || where.front() == '[')) {
    text = where;
  } else {
    std::ifstream in(where);
    if (!in) throw Error(ErrorCode::parse_error, "cannot open " + where);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

// Tower for command-line expressions: sqrtN names a square root, pi and t
// name pi, e names e.
TowerPtr tower_for(const std::vector<std::string>& exprs) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  std::set<int> radicands;
  bool pi = false, e = false, t = false;
  for (const auto& x : exprs)
    for (auto it = std::sregex_iterator(x.begin(), x.end(), ident); it != std::sregex_iterator(); ++it) {
      const std::string name = it->str();
      std::smatch m;
      if (std::regex_match(name, m, std::regex("sqrt([1-9][0-9]{0,5})")))
        radicands.insert(std::stoi(m[1]));
      else if (name == "pi")
        pi = true;
      else if (name == "e")
        e = true;
      else if (name == "t")
        t = true;
      else
        throw Error(ErrorCode::parse_error, "unknown name '" + name + "' in '" + x + "'");
    }
  if (radicands.empty() && !pi && !e && !t) return nullptr;
  TowerBuilder b;
  for (int r : radicands) {
    const std::string name = "sqrt" + std::to_string(r);
    b.extension(name, {std::to_string(-r), "0", "1"}, Rational(0), Rational(r + 1));
  }
  if (pi) b.transcendental("pi", Embedding::named(Constant::pi));
  if (t) b.transcendental("t", Embedding::named(Constant::pi));
  if (e) b.transcendental("e", Embedding::named(Constant::e));
  return b.build();
}

FieldElem bound_in(const Options& o, const TowerPtr& t) {
  const FieldElem b = parse_element(t, o.bound);
  if (b.sign() <= 0) throw Error(ErrorCode::constraint_violation, "--bound must be positive");
  return b;
}

// A bare object or a build record holding it under `key`.
const json& unwrap(const json& j, const char* key) { return j.is_object() && j.contains(key) ? j.at(key) : j; }

std::string turns_text(const std::vector<std::optional<int>>& turns) {
  std::string s;
  for (const auto& t : turns) s += (s.empty() ? "" : ", ") + (t ? std::to_string(2 * *t) + "pi" : std::string("inf"));
  return "[" + s + "]";
}

std::string report_text(const FieldsReport& r) {
  std::ostringstream s;
  s << "K_hol = " << r.k_hol.describe() << "\n";
  s << "K_sc  = " << r.k_sc.describe() << "\n";
  s << "K_cr  = " << (r.k_cr ? r.k_cr->describe() : std::string("undefined (fewer than four slopes)")) << "\n";
  if (r.k_tr) s << "K_tr  = " << r.k_tr->describe() << "\n";
  s << "Lambda rank " << r.lambda.rank_z << (r.lambda.is_lattice() ? " (lattice)" : "") << ", Lambda0 rank "
    << r.lambda0.rank_z << ", " << r.saddle_vectors.size() << " saddle vectors";
  if (r.truncated) s << ", truncated";
  s << "\n";
  return s.str();
}

json check_json(const std::vector<std::string>& failures) { return {{"passed", failures.empty()}, {"failures", failures}}; }

std::string check_text(const std::vector<std::string>& failures) {
  if (failures.empty()) return "expected record: all statements hold\n";
  std::string s = "expected record: " + std::to_string(failures.size()) + " failure(s)\n";
  for (const auto& f : failures) s += "  " + f + "\n";
  return s;
}

Output origami_veech(const Options& o) {
  const Origami x = io::origami_from_json(unwrap(read_input(o.input), "origami"));
  const auto v = veech_group(x, o.orbit_cap);
  std::ostringstream s;
  s << "orbit size " << v.orbit_size << ", " << v.generators.size()
    << " generators\n";
  return {{{"origami", io::origami_to_json(x)}, {"veech", io::veech_to_json(v)}}, s.str()};
}

Output origami_stratum(const Options& o) {
  const Origami x = io::origami_from_json(unwrap(read_input(o.input), "origami"));
  const auto st = stratum(x);
  std::ostringstream s;
  s << "genus " << st.genus << ", cone points";
  for (int l : st.cone_points) s << " " << 2 * l << "pi";
  if (st.cone_points.empty()) s << " none";
  s << "\n";
  return {{{"origami", io::origami_to_json(x)}, {"stratum", io::stratum_to_json(st)}}, s.str()};
}

// Surface input: a surface, a build record with "surface", or an origami.
Built<PolygonComplex> read_surface(const Options& o, bool* has_expected) {
  const json j = read_input(o.input);
  if (j.is_object() && (j.contains("sigma_h") || j.contains("origami"))) {
    *has_expected = false;
    return {"origami", {}, to_surface(io::origami_from_json(unwrap(j, "origami"))), {}, std::nullopt};
  }
  TowerPtr t;
  Built<PolygonComplex> b{"", {}, io::surface_from_json(unwrap(j, "surface"), &t), {}, std::nullopt};
  *has_expected = j.contains("expected");
  if (*has_expected) b.expected = io::expected_from_json(j.at("expected"), t);
  if (j.contains("veech") && !j.at("veech").is_null()) b.veech = io::matrix_group_from_json(j.at("veech"), t);
  if (j.contains("name")) b.name = j.at("name").get<std::string>();
  return b;
}

Output surface_fields_cmd(const Options& o) {
  bool has_expected = false;
  const auto b = read_surface(o, &has_expected);
  const auto c = verify(b, bound_in(o, b.object.tower()), o.word_len);
  json out{{"report", io::report_to_json(c.report)}, {"cone_turns", json::array()}, {"genus", genus(b.object)}};
  for (const auto& t : c.cone_turns) out["cone_turns"].push_back(*t);
  std::string text = "genus " + std::to_string(genus(b.object)) + ", cone angles " + turns_text(c.cone_turns) + "\n" +
                     report_text(c.report);
  if (has_expected) {
    out["expected_check"] = check_json(c.failures);
    text += check_text(c.failures);
  }
  return {out, text};
}

Output surface_saddles(const Options& o) {
  bool has_expected = false;
  const auto b = read_surface(o, &has_expected);
  const auto s = saddle_connections(b.object, bound_in(o, b.object.tower()));
  return {{{"saddle_connections", io::saddles_to_json(s)}},
          std::to_string(s.connections.size()) + " saddle connections, " + std::to_string(s.vectors().size()) +
              " distinct holonomy vectors\n"};
}

Output surface_detect(const Options& o) {
  bool has_expected = false;
  const auto b = read_surface(o, &has_expected);
  const auto v = detect_origami(b.object);
  std::string text = v.is_origami ? "origami: Lambda0 is a lattice\n"
                                  : "not an origami: Lambda0 has rank " + std::to_string(v.lambda0.rank_z) + "\n";
  return {{{"verdict", io::verdict_to_json(v)}}, text};
}

Output atlas_fields_cmd(const Options& o) {
  const json j = read_input(o.input);
  TowerPtr t;
  Built<SlitAtlas> b{"", {}, io::atlas_from_json(unwrap(j, "atlas"), &t), {}, std::nullopt};
  const bool has_expected = j.contains("expected");
  if (has_expected) b.expected = io::expected_from_json(j.at("expected"), t);
  if (j.contains("veech") && !j.at("veech").is_null()) b.veech = io::matrix_group_from_json(j.at("veech"), t);
  if (o.crossings < 1) throw Error(ErrorCode::constraint_violation, "--crossings must be positive");
  const auto c = verify(b, {bound_in(o, t), o.crossings}, o.word_len);
  json turns = json::array();
  for (const auto& x : c.cone_turns) turns.push_back(x ? json(*x) : json("infinite"));
  json out{{"report", io::report_to_json(c.report)}, {"cone_turns", turns}};
  std::string text = "singularities " + turns_text(c.cone_turns) + "\n" + report_text(c.report);
  if (has_expected) {
    out["expected_check"] = check_json(c.failures);
    text += check_text(c.failures);
  }
  return {out, text};
}

Output build_cmd(const Options& o) {
  const std::string& w = o.builder;
  auto expressions = [&](std::vector<std::string> xs) {
    const TowerPtr t = tower_for(xs);
    std::vector<FieldElem> out;
    for (const auto& x : xs) out.push_back(parse_element(t, x));
    return std::pair{t, out};
  };
  json out;
  if (w == "three-plane-sqrtp") {
    out = io::built_to_json(o.window > 0 ? build_three_plane_sqrtp(o.p, o.window) : build_three_plane_sqrtp(o.p));
  } else if (w == "glued-L-pair") {
    auto [t, x] = expressions({o.eps, o.dir_x, o.dir_y});
    out = io::built_to_json(build_glued_L_pair(x[0], Vec2(x[1], x[2])));
  } else if (w == "two-plane-mu") {
    auto [t, x] = expressions({o.mu1, o.mu2, o.mu3});
    out = io::built_to_json(o.window > 0 ? build_two_plane_mu(x[0], x[1], x[2], o.window)
                                         : build_two_plane_mu(x[0], x[1], x[2]));
  } else if (w == "staircase") {
    auto [t, x] = expressions({o.lambda});
    out = io::built_to_json(build_staircase(x[0], o.n, o.k_min, o.k_max));
  } else if (w == "L-origami") {
    out = {{"name", "L-origami"}, {"origami", io::origami_to_json(build_L_origami())}};
  } else if (w == "cross-ratio-quadruple") {
    auto [t, x] = expressions({o.alpha.empty() ? "sqrt2" : o.alpha});
    const auto q = build_cross_ratio_quadruple(x[0], o.N);
    json vs = json::array();
    for (const auto& v : q) vs.push_back(io::vec_to_json(v));
    const FieldElem a = x[0];
    out = {{"name", "cross-ratio-quadruple"},
           {"tower", io::tower_to_json(t)},
           {"parameters", {{"alpha", io::elem_to_json(a)}, {"N", o.N}}},
           {"vectors", vs},
           {"expected", {{"cross_ratio", io::elem_to_json(a / (a + o.N))}}}};
  } else if (w == "transcendental-page") {
    out = io::built_to_json(build_transcendental_page(o.page_n));
  } else {
    throw Error(ErrorCode::parse_error, "unknown builder " + w);
  }
  return {out, "built " + w + "\n"};
}

Output cross_ratio_cmd(const Options& o) {
  TowerPtr t;
  std::vector<Vec2> vs;
  if (!o.alpha.empty()) {
    t = tower_for({o.alpha});
    const auto q = build_cross_ratio_quadruple(parse_element(t, o.alpha), o.N);
    vs.assign(q.begin(), q.end());
  } else {
    const json j = read_input(o.input);
    if (j.contains("tower")) t = io::tower_from_json(j.at("tower"));
    if (!j.contains("vectors") || !j.at("vectors").is_array() || j.at("vectors").size() != 4)
      throw Error(ErrorCode::parse_error, "expected four vectors under \"vectors\"");
    for (const auto& v : j.at("vectors")) vs.push_back(io::vec_from_json(v, t));
  }
  const FieldElem cr = cross_ratio(vs[0], vs[1], vs[2], vs[3]);
  return {{{"cross_ratio", io::elem_to_json(cr)}, {"text", cr.to_string()}, {"rational", cr.is_rational()}},
          "cross ratio " + cr.to_string() + "\n"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic invariants of translation surfaces"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* c) { c->add_option("input", o.input, "JSON file, inline JSON, or - for stdin"); };
  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto bound = [&](CLI::App* c) { c->add_option("--bound", o.bound, "saddle connection length bound (expression)"); };
  auto word_len = [&](CLI::App* c) {
    c->add_option("--word-len", o.word_len, "word length for trace fields")->check(CLI::PositiveNumber);
  };

  auto* veech = app.add_subcommand("origami-veech", "Veech group of an origami");
  input(veech), common(veech);
  veech->add_option("--orbit-cap", o.orbit_cap, "largest SL(2,Z) orbit explored")->check(CLI::PositiveNumber);
  auto* strat = app.add_subcommand("origami-stratum", "cone angles and genus of an origami");
  input(strat), common(strat);
  auto* sfields = app.add_subcommand("surface-fields", "field report of a polygon complex");
  input(sfields), common(sfields), bound(sfields), word_len(sfields);
  auto* saddles = app.add_subcommand("surface-saddles", "saddle connections of a polygon complex");
  input(saddles), common(saddles), bound(saddles);
  auto* detect = app.add_subcommand("surface-detect-origami", "decide whether a complex is an affine origami");
  input(detect), common(detect);
  auto* afields = app.add_subcommand("atlas-fields", "windowed field report of a slit atlas");
  input(afields), common(afields), bound(afields), word_len(afields);
  afields->add_option("--crossings", o.crossings, "slit crossing budget per trace")->check(CLI::PositiveNumber);
  auto* build = app.add_subcommand("build", "emit a construction with its expected invariants");
  common(build);
  build
      ->add_option("name", o.builder, "builder")
      ->required()
      ->check(CLI::IsMember({"three-plane-sqrtp", "glued-L-pair", "two-plane-mu", "staircase", "L-origami",
                             "cross-ratio-quadruple", "transcendental-page"}));
  build->add_option("--p", o.p, "prime for three-plane-sqrtp");
  build->add_option("--window", o.window, "window half-width")->check(CLI::PositiveNumber);
  build->add_option("--eps", o.eps, "mark length for glued-L-pair");
  build->add_option("--dir-x", o.dir_x, "mark direction x");
  build->add_option("--dir-y", o.dir_y, "mark direction y");
  build->add_option("--mu1", o.mu1);
  build->add_option("--mu2", o.mu2);
  build->add_option("--mu3", o.mu3);
  build->add_option("--lambda", o.lambda, "staircase contraction");
  build->add_option("--n", o.n, "staircase expansion factor");
  build->add_option("--k-min", o.k_min);
  build->add_option("--k-max", o.k_max);
  build->add_option("--alpha", o.alpha, "quadruple parameter (expression)");
  build->add_option("--N", o.N, "quadruple integer");
  build->add_option("--pages", o.page_n, "page parameter for transcendental-page")->check(CLI::PositiveNumber);
  auto* cr = app.add_subcommand("cross-ratio", "cross ratio of four vectors");
  input(cr), common(cr);
  cr->add_option("--alpha", o.alpha, "use the standard quadruple with this parameter");
  cr->add_option("--N", o.N, "quadruple integer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return 0;
    std::cout << json{{"error", {{"code", "parse_error"}, {"message", e.what()}}}}.dump(2) << "\n";
    return 2;
  }

  Output out;
  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "origami-veech") out = origami_veech(o);
    else if (name == "origami-stratum") out = origami_stratum(o);
    else if (name == "surface-fields") out = surface_fields_cmd(o);
    else if (name == "surface-saddles") out = surface_saddles(o);
    else if (name == "surface-detect-origami") out = surface_detect(o);
    else if (name == "atlas-fields") out = atlas_fields_cmd(o);
    else if (name == "build") out = build_cmd(o);
    else out = cross_ratio_cmd(o);
    out.data["command"] = name;
  } catch (const Error& e) {
    std::cout << json{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (o.format == "text") {
    std::cout << out.summary;
  } else {
    std::cout << out.data.dump(2) << "\n";
    std::cerr << out.summary;
  }
  // A failed expected record is reported in the output and in the status.
  if (out.data.contains("expected_check") && !out.data["expected_check"]["passed"].get<bool>()) return 5;
  return 0;
}
