#include "tsurf/module.hpp"

#include <map>

#include "tsurf/exactnum/subfield.hpp"

namespace tsurf {

namespace {

using IntRow = std::vector<Integer>;

// Integer coordinates of the vectors in a common Q-basis, scaled by one
// common denominator; the map is injective and Z-linear.
std::vector<IntRow> integer_rows(const std::vector<Vec2>& vs) {
  std::vector<FieldElem> flat;
  for (const auto& v : vs) flat.push_back(v(0));
  for (const auto& v : vs) flat.push_back(v(1));
  const auto emb = rational_embedding(flat);
  const std::size_t n = vs.size();
  Integer den = 1;
  for (const auto& row : emb)
    for (const auto& c : row) den = lcm(den, denominator(c));
  std::vector<IntRow> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto* part : {&emb[i], &emb[n + i]})
      for (const auto& c : *part) out[i].push_back(numerator(c) * (den / denominator(c)));
  }
  return out;
}

std::size_t leading(const IntRow& r) {
  std::size_t i = 0;
  while (i < r.size() && r[i] == 0) ++i;
  return i;
}

// Echelon basis of a Z-module: rows with distinct leading columns and
// positive leading entries, each carrying the plane vector it encodes.
struct Hnf {
  std::map<std::size_t, std::pair<IntRow, Vec2>> rows;

  void add(IntRow r, Vec2 v) {
    for (;;) {
      const std::size_t p = leading(r);
      if (p == r.size()) return;
      auto it = rows.find(p);
      if (it == rows.end()) {
        if (r[p] < 0) {
          for (auto& c : r) c = -c;
          v = -v;
        }
        rows.emplace(p, std::make_pair(std::move(r), std::move(v)));
        return;
      }
      auto& [b, bv] = it->second;
      // Extended gcd on the two leading entries.
      Integer a0 = b[p], a1 = r[p];
      Integer s0 = 1, t0 = 0, s1 = 0, t1 = 1;
      while (a1 != 0) {
        Integer q = a0 / a1;
        Integer tmp = a0 - q * a1;
        a0 = a1;
        a1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
      }
      // s0*b + t0*r has leading entry a0 = gcd; s1*b + t1*r vanishes there.
      IntRow nb(r.size()), nr(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) {
        nb[i] = s0 * b[i] + t0 * r[i];
        nr[i] = s1 * b[i] + t1 * r[i];
      }
      Vec2 nbv = bv * FieldElem(Rational(s0)) + v * FieldElem(Rational(t0));
      Vec2 nrv = bv * FieldElem(Rational(s1)) + v * FieldElem(Rational(t1));
      if (nb[p] < 0) {
        for (auto& c : nb) c = -c;
        nbv = -nbv;
      }
      b = std::move(nb);
      bv = std::move(nbv);
      r = std::move(nr);
      v = std::move(nrv);
    }
  }

  bool contains(IntRow r) const {
    for (;;) {
      const std::size_t p = leading(r);
      if (p == r.size()) return true;
      auto it = rows.find(p);
      if (it == rows.end()) return false;
      const auto& b = it->second.first;
      if (r[p] % b[p] != 0) return false;
      const Integer q = r[p] / b[p];
      for (std::size_t i = p; i < r.size(); ++i) r[i] -= q * b[i];
    }
  }
};

void gauss_reduce(Vec2& b1, Vec2& b2) {
  for (;;) {
    if (compare(squared_norm(b2), squared_norm(b1)) < 0) std::swap(b1, b2);
    const Integer mu = round_nearest(dot(b1, b2) / squared_norm(b1));
    if (mu == 0) return;
    b2 = b2 - b1 * FieldElem(Rational(mu));
  }
}

// A deterministic representative among the reduced bases.
std::vector<Vec2> normalize_basis(Vec2 b1, Vec2 b2) {
  gauss_reduce(b1, b2);
  if (cross(b1, b2).sign() < 0) b2 = -b2;
  std::vector<std::pair<Vec2, Vec2>> cands{{b1, b2}, {-b1, -b2}};
  if (squared_norm(b1) == squared_norm(b2)) {
    cands.emplace_back(b2, -b1);
    cands.emplace_back(-b2, b1);
  }
  auto best = cands.front();
  for (const auto& c : cands)
    if (compare_direction(c.first, best.first) < 0) best = c;
  return {best.first, best.second};
}

}  // namespace

int real_span_dim(const std::vector<Vec2>& vs) {
  const Vec2* first = nullptr;
  for (const auto& v : vs) {
    if (is_zero(v)) continue;
    if (!first) {
      first = &v;
      continue;
    }
    if (!parallel(*first, v)) return 2;
  }
  return first ? 1 : 0;
}

ModuleDesc make_module(std::vector<Vec2> generators) {
  ModuleDesc m;
  for (auto& g : generators) {
    if (is_zero(g)) continue;
    bool dup = false;
    for (const auto& h : m.generators) dup = dup || equal(g, h);
    if (!dup) m.generators.push_back(std::move(g));
  }
  m.span_dim = real_span_dim(m.generators);
  if (m.generators.empty()) {
    m.lattice_basis = std::vector<Vec2>{};
    return m;
  }
  const auto rows = integer_rows(m.generators);
  Hnf h;
  for (std::size_t i = 0; i < rows.size(); ++i) h.add(rows[i], m.generators[i]);
  m.rank_z = static_cast<int>(h.rows.size());
  if (m.rank_z == m.span_dim) {
    std::vector<Vec2> basis;
    for (const auto& [p, row] : h.rows) basis.push_back(row.second);
    if (basis.size() == 2) {
      basis = normalize_basis(basis[0], basis[1]);
    } else if (direction_half(basis[0]) == 1) {
      basis[0] = -basis[0];
    }
    m.lattice_basis = std::move(basis);
  }
  return m;
}

bool z_contains(const ModuleDesc& m, const Vec2& v) {
  if (is_zero(v)) return true;
  if (m.generators.empty()) return false;
  std::vector<Vec2> all = m.generators;
  all.push_back(v);
  auto rows = integer_rows(all);
  Hnf h;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) h.add(rows[i], all[i]);
  return h.contains(rows.back());
}

bool q_contains(const ModuleDesc& m, const Vec2& v) {
  if (is_zero(v)) return true;
  std::vector<Vec2> all = m.generators;
  all.push_back(v);
  const auto rows = integer_rows(all);
  QSpan span(rows.front().size());
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) span.add(std::vector<Rational>(rows[i].begin(), rows[i].end()));
  return span.contains(std::vector<Rational>(rows.back().begin(), rows.back().end()));
}

}  // namespace tsurf
