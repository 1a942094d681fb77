#include <algorithm>
#include <set>

#include "tsurf/fields.hpp"

namespace tsurf {

namespace {

TowerPtr tower_of_all(const std::vector<FieldElem>& xs, TowerPtr t) {
  for (const auto& x : xs) t = common_tower(t, x.tower());
  return t;
}

TowerPtr tower_of_slopes(const SlopeSet& s, TowerPtr t) {
  for (const auto& r : s.slopes)
    if (r) t = common_tower(t, r->tower());
  return t;
}

Mat2 inverse2(const Mat2& m) {
  const FieldElem det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Mat2 r;
  r << m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det;
  return r;
}

FieldElem trace(const Mat2& m) { return m(0, 0) + m(1, 1); }

// Trace of g^k for a generator with the given trace and determinant.
FieldElem power_trace(const FieldElem& tr, const FieldElem& det, long k) {
  if (k < 0) return power_trace(tr, det, -k) / det.pow(-k);
  FieldElem prev(2), cur = tr;
  if (k == 0) return prev;
  for (long i = 1; i < k; ++i) {
    FieldElem next = tr * cur - det * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Slope slope_of(const Vec2& v) {
  if (is_zero(v)) throw Error(ErrorCode::parallel_vectors, "zero vector has no slope");
  if (v(0).is_zero()) return std::nullopt;
  return v(1) / v(0);
}

int compare_slopes(const Slope& a, const Slope& b) {
  if (!a || !b) return (a ? 1 : 0) - (b ? 1 : 0);
  return compare(*a, *b);
}

SlopeSet slope_set(const std::vector<Vec2>& vectors) {
  SlopeSet s;
  for (const auto& v : vectors) s.slopes.push_back(slope_of(v));
  std::sort(s.slopes.begin(), s.slopes.end(), [](const Slope& a, const Slope& b) { return compare_slopes(a, b) < 0; });
  s.slopes.erase(std::unique(s.slopes.begin(), s.slopes.end(),
                             [](const Slope& a, const Slope& b) { return compare_slopes(a, b) == 0; }),
                 s.slopes.end());
  return s;
}

FieldElem cross_ratio(const Slope& r1, const Slope& r2, const Slope& r3, const Slope& r4) {
  const std::array<const Slope*, 4> r{&r1, &r2, &r3, &r4};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j)
      if (compare_slopes(*r[i], *r[j]) == 0) throw Error(ErrorCode::parallel_vectors, "cross ratio of parallel vectors");
  // A factor containing the infinite slope is dropped.
  auto factor = [&](int i, int j) { return *r[i] && *r[j] ? **r[i] - **r[j] : FieldElem(1); };
  return factor(0, 2) * factor(1, 3) / (factor(1, 2) * factor(0, 3));
}

FieldElem cross_ratio(const Vec2& v1, const Vec2& v2, const Vec2& v3, const Vec2& v4) {
  return cross_ratio(slope_of(v1), slope_of(v2), slope_of(v3), slope_of(v4));
}

SubfieldDesc field_cr(const SlopeSet& s, TowerPtr tower) {
  if (s.slopes.size() < 4) throw Error(ErrorCode::fewer_than_four_slopes, "cross-ratio field needs four slopes");
  tower = tower_of_slopes(s, tower);
  // Moebius map sending the first three slopes to infinity, 0, 1.
  const Slope &a = s.slopes[0], &b = s.slopes[1], &c = s.slopes[2];
  std::vector<FieldElem> images;
  for (std::size_t i = 3; i < s.slopes.size(); ++i) {
    const FieldElem& r = *s.slopes[i];
    if (!a)
      images.push_back((r - *b) / (*c - *b));
    else
      images.push_back((r - *b) * (*c - *a) / ((r - *a) * (*c - *b)));
  }
  return subfield_generated(images, tower);
}

SubfieldDesc field_cr_brute_force(const SlopeSet& s, TowerPtr tower) {
  if (s.slopes.size() < 4) throw Error(ErrorCode::fewer_than_four_slopes, "cross-ratio field needs four slopes");
  tower = tower_of_slopes(s, tower);
  const std::size_t n = s.slopes.size();
  std::set<FieldElem, CanonicalLess> values;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (std::set<std::size_t>{i, j, k, l}.size() == 4)
            values.insert(cross_ratio(s.slopes[i], s.slopes[j], s.slopes[k], s.slopes[l]));
  return subfield_generated({values.begin(), values.end()}, tower);
}

SubfieldDesc field_hol(const ModuleDesc& m, std::size_t i, std::size_t j, TowerPtr tower) {
  const auto& g = m.generators;
  for (const auto& v : g) tower = common_tower(tower, tower_of(v));
  std::vector<FieldElem> coeffs;
  if (m.span_dim == 0 || g.empty()) return rational_subfield(tower);
  if (m.span_dim == 1) {
    const Vec2& e = g.at(i);
    const int k = e(0).is_zero() ? 1 : 0;
    for (const auto& v : g) coeffs.push_back(v(k) / e(k));
    return subfield_generated(coeffs, tower);
  }
  const Vec2 &e1 = g.at(i), &e2 = g.at(j);
  const FieldElem det = cross(e1, e2);
  if (det.is_zero()) throw Error(ErrorCode::parallel_vectors, "basis pair is parallel");
  for (const auto& v : g) {
    coeffs.push_back(cross(v, e2) / det);
    coeffs.push_back(cross(e1, v) / det);
  }
  return subfield_generated(coeffs, tower);
}

SubfieldDesc field_hol(const ModuleDesc& m, TowerPtr tower) {
  const auto& g = m.generators;
  if (m.span_dim == 2)
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        if (!parallel(g[i], g[j])) return field_hol(m, i, j, std::move(tower));
  return field_hol(m, 0, 0, std::move(tower));
}

FieldElem word_trace(const MatrixGroupGens& g, const std::vector<int>& word) {
  if (g.trace_presented) {
    long k = 0;
    for (int x : word) {
      if (x != 0 && x != -1) throw Error(ErrorCode::constraint_violation, "cyclic group has one generator");
      k += x == 0 ? 1 : -1;
    }
    return power_trace(g.trace_presented->first, g.trace_presented->second, k);
  }
  Mat2 m = Mat2::Identity();
  for (int x : word) {
    const int i = x >= 0 ? x : -x - 1;
    m = m * (x >= 0 ? g.generators.at(i) : inverse2(g.generators.at(i)));
  }
  return trace(m);
}

SubfieldDesc field_tr(const MatrixGroupGens& g, int word_len, TowerPtr tower) {
  if (word_len < 1) throw Error(ErrorCode::constraint_violation, "word length must be positive");
  std::set<FieldElem, CanonicalLess> traces;
  if (g.trace_presented) {
    const auto& [tr, det] = *g.trace_presented;
    if (det.sign() <= 0) throw Error(ErrorCode::constraint_violation, "determinant must be positive");
    tower = common_tower(common_tower(tower, tr.tower()), det.tower());
    for (long k = 1; k <= word_len; ++k) {
      traces.insert(power_trace(tr, det, k));
      traces.insert(power_trace(tr, det, -k));
    }
    return subfield_generated({traces.begin(), traces.end()}, tower);
  }
  if (g.generators.empty()) throw Error(ErrorCode::constraint_violation, "no generators");
  std::vector<Mat2> letters;
  for (const auto& m : g.generators) {
    const FieldElem det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (det.sign() <= 0) throw Error(ErrorCode::constraint_violation, "determinant must be positive");
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) tower = common_tower(tower, m(r, c).tower());
    letters.push_back(m);
    letters.push_back(inverse2(m));
  }
  std::vector<Mat2> layer{Mat2::Identity()};
  for (int len = 1; len <= word_len; ++len) {
    std::vector<Mat2> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        next.push_back(w * l);
        traces.insert(trace(next.back()));
      }
    layer = std::move(next);
  }
  return subfield_generated({traces.begin(), traces.end()}, tower);
}

Containments containments(const std::optional<SubfieldDesc>& ktr, const SubfieldDesc& khol, const SubfieldDesc& ksc,
                          const std::optional<SubfieldDesc>& kcr, bool independent_hol_pair) {
  Containments c;
  c.hol_in_sc = is_subfield(khol, ksc);
  if (kcr) {
    c.cr_in_sc = is_subfield(*kcr, ksc);
    c.cr_eq_sc = same_field(*kcr, ksc);
  }
  if (ktr && independent_hol_pair) c.tr_in_hol = is_subfield(*ktr, khol);
  return c;
}

namespace {

FieldsReport finish_report(FieldsReport r, TowerPtr tower, const std::optional<MatrixGroupGens>& veech, int word_len) {
  if (veech) {
    for (const auto& m : veech->generators)
      for (int i = 0; i < 4; ++i) tower = common_tower(tower, m(i / 2, i % 2).tower());
    if (veech->trace_presented)
      tower = tower_of_all({veech->trace_presented->first, veech->trace_presented->second}, tower);
  }
  r.k_hol = field_hol(r.lambda, tower);
  r.k_sc = field_sc(r.lambda0, tower);
  try {
    r.k_cr = field_cr(r.slopes, tower);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::fewer_than_four_slopes) throw;
    r.kcr_undefined = true;
  }
  if (veech) r.k_tr = field_tr(*veech, word_len, tower);
  r.containments = containments(r.k_tr, r.k_hol, r.k_sc, r.k_cr, r.lambda.span_dim == 2);
  return r;
}

}  // namespace

FieldsReport surface_fields(const PolygonComplex& c, const FieldElem& bound, const std::optional<MatrixGroupGens>& veech,
                            int word_len) {
  FieldsReport r;
  const auto hm = holonomy_modules(c);
  r.lambda = hm.lambda;
  r.lambda0 = hm.lambda0;
  const auto sc = saddle_connections(c, bound);
  r.saddle_vectors = sc.vectors();
  r.slopes = slope_set(r.saddle_vectors);
  r.truncated = sc.truncated;
  return finish_report(std::move(r), c.tower(), veech, word_len);
}

FieldsReport atlas_fields(const SlitAtlas& a, const FieldElem& bound, int max_crossings,
                          const std::optional<MatrixGroupGens>& veech, int word_len) {
  FieldsReport r;
  const auto sc = saddle_connections_window(a, bound, max_crossings);
  r.lambda0 = make_module(sc.vectors());
  r.lambda = cycle_module(sc);
  r.saddle_vectors = sc.vectors();
  r.slopes = slope_set(r.saddle_vectors);
  r.truncated = sc.truncated || a.truncated();
  return finish_report(std::move(r), a.tower(), veech, word_len);
}

}  // namespace tsurf
