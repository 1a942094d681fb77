#include "arith.hpp"

#include <algorithm>
#include <utility>

namespace tsurf::detail {

namespace {

int compare_lists(const std::vector<Value>& u, const std::vector<Value>& v) {
  if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (int c = structural_compare(u[i], v[i])) return c;
  return 0;
}

const mpfr_prec_t kMaxPrecision = 1 << 16;

}  // namespace

int structural_compare(const Value& x, const Value& y) {
  if (x.level != y.level) return x.level < y.level ? -1 : 1;
  if (x.level == 0) return x.q < y.q ? -1 : (y.q < x.q ? 1 : 0);
  if (int c = compare_lists(x.a, y.a)) return c;
  return compare_lists(x.b, y.b);
}

void Arith::trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Value Arith::alg_make(int level, Poly c) const {
  bool collapses = true;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (!c[i].is_zero()) {
      collapses = false;
      break;
    }
  if (collapses) return c.empty() ? Value() : std::move(c[0]);
  c.resize(t_.level(level).degree());
  Value out;
  out.level = level;
  out.a = std::move(c);
  return out;
}

Value Arith::trans_make(int level, Poly num, Poly den) const {
  trim(num);
  if (num.empty()) return Value();
  if (den.size() == 1 && num.size() == 1) return std::move(num[0]);
  Value out;
  out.level = level;
  out.a = std::move(num);
  out.b = std::move(den);
  return out;
}

Value Arith::trans_reduce(int level, Poly num, Poly den) const {
  trim(num);
  trim(den);
  if (num.empty()) return Value();
  Poly g = pgcd(num, den);
  if (g.size() > 1) {
    num = pquo(num, g);
    den = pquo(den, g);
  }
  const Value& lc = den.back();
  if (!(lc.level == 0 && lc.q == 1)) {
    Value s = inv(lc);
    num = pscale(num, s);
    den = pscale(den, s);
  }
  return trans_make(level, std::move(num), std::move(den));
}

Value Arith::add(const Value& x, const Value& y) const {
  if (x.level == 0 && y.level == 0) return Value(x.q + y.q);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const int level = std::max(x.level, y.level);
  const auto& lv = t_.level(level);
  if (lv.kind == LevelKind::algebraic) {
    if (x.level == y.level) {
      Poly c(x.a.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = add(x.a[i], y.a[i]);
      return alg_make(level, std::move(c));
    }
    const Value& hi = x.level == level ? x : y;
    const Value& lo = x.level == level ? y : x;
    Poly c = hi.a;
    c[0] = add(c[0], lo);
    return alg_make(level, std::move(c));
  }
  if (x.level != y.level) {
    const Value& hi = x.level == level ? x : y;
    const Value& lo = x.level == level ? y : x;
    return trans_make(level, padd(hi.a, pscale(hi.b, lo)), hi.b);
  }
  if (compare_lists(x.b, y.b) == 0) return trans_reduce(level, padd(x.a, y.a), x.b);
  return trans_reduce(level, padd(pmul(x.a, y.b), pmul(y.a, x.b)), pmul(x.b, y.b));
}

Value Arith::neg(const Value& x) const {
  if (x.level == 0) return Value(-x.q);
  Value out = x;
  for (auto& c : out.a) c = neg(c);
  return out;
}

Value Arith::mul(const Value& x, const Value& y) const {
  if (x.level == 0 && y.level == 0) return Value(x.q * y.q);
  if (x.is_zero() || y.is_zero()) return Value();
  const int level = std::max(x.level, y.level);
  const auto& lv = t_.level(level);
  if (x.level != y.level) {
    const Value& hi = x.level == level ? x : y;
    const Value& lo = x.level == level ? y : x;
    if (lo.level == 0 && lo.q == 1) return hi;
    if (lv.kind == LevelKind::algebraic) {
      Poly c = hi.a;
      for (auto& ci : c) ci = mul(ci, lo);
      return alg_make(level, std::move(c));
    }
    return trans_make(level, pscale(hi.a, lo), hi.b);
  }
  if (lv.kind == LevelKind::algebraic) {
    const std::size_t d = lv.degree();
    Poly prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (x.a[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (!y.a[j].is_zero()) prod[i + j] = add(prod[i + j], mul(x.a[i], y.a[j]));
    }
    const Poly& m = lv.minpoly;
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
      if (prod[k].is_zero()) continue;
      const Value c = prod[k];
      for (std::size_t j = 0; j < d; ++j)
        if (!m[j].is_zero()) prod[k - d + j] = sub(prod[k - d + j], mul(c, m[j]));
    }
    prod.resize(d);
    return alg_make(level, std::move(prod));
  }
  Poly g1 = pgcd(x.a, y.b), g2 = pgcd(y.a, x.b);
  Poly n1 = g1.size() > 1 ? pquo(x.a, g1) : x.a;
  Poly d2 = g1.size() > 1 ? pquo(y.b, g1) : y.b;
  Poly n2 = g2.size() > 1 ? pquo(y.a, g2) : y.a;
  Poly d1 = g2.size() > 1 ? pquo(x.b, g2) : x.b;
  return trans_make(level, pmul(n1, n2), pmul(d1, d2));
}

Poly Arith::alg_inverse(const Poly& p, const Poly& m) const {
  Poly r0 = m, r1 = p, s0, s1{Value(Rational(1))};
  trim(r1);
  while (!r1.empty()) {
    Poly q, r;
    pdivmod(r0, r1, &q, &r);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s = psub(s0, pmul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant because m is irreducible and p is not divisible by m.
  return pscale(s0, inv(r0[0]));
}

Value Arith::inv(const Value& x) const {
  if (x.is_zero()) throw Error(ErrorCode::division_by_zero, "division by zero");
  if (x.level == 0) return Value(Rational(1) / x.q);
  const auto& lv = t_.level(x.level);
  if (lv.kind == LevelKind::algebraic) {
    Poly s = alg_inverse(x.a, lv.minpoly);
    s = prem(s, lv.minpoly);
    return alg_make(x.level, std::move(s));
  }
  Value s = inv(x.a.back());
  return trans_make(x.level, pscale(x.b, s), pscale(x.a, s));
}

Poly Arith::padd(const Poly& p, const Poly& q) const {
  Poly out(std::max(p.size(), q.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < p.size() && i < q.size())
      out[i] = add(p[i], q[i]);
    else
      out[i] = i < p.size() ? p[i] : q[i];
  }
  trim(out);
  return out;
}

Poly Arith::psub(const Poly& p, const Poly& q) const {
  Poly out(std::max(p.size(), q.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < p.size() && i < q.size())
      out[i] = sub(p[i], q[i]);
    else
      out[i] = i < p.size() ? p[i] : neg(q[i]);
  }
  trim(out);
  return out;
}

Poly Arith::pmul(const Poly& p, const Poly& q) const {
  if (p.empty() || q.empty()) return {};
  Poly out(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    for (std::size_t j = 0; j < q.size(); ++j)
      if (!q[j].is_zero()) out[i + j] = add(out[i + j], mul(p[i], q[j]));
  }
  trim(out);
  return out;
}

Poly Arith::pscale(const Poly& p, const Value& c) const {
  if (c.is_zero()) return {};
  Poly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = mul(p[i], c);
  return out;
}

void Arith::pdivmod(const Poly& a, const Poly& b, Poly* quot, Poly* rem) const {
  Poly r = a;
  trim(r);
  const std::size_t db = b.size() - 1;
  Poly q(r.size() > db ? r.size() - db : 0);
  const Value lc_inv = inv(b.back());
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k].is_zero()) continue;
    Value c = mul(r[k], lc_inv);
    for (std::size_t j = 0; j <= db; ++j)
      if (!b[j].is_zero()) r[k - db + j] = sub(r[k - db + j], mul(c, b[j]));
    q[k - db] = std::move(c);
  }
  r.resize(std::min(r.size(), db));
  trim(r);
  trim(q);
  if (quot) *quot = std::move(q);
  if (rem) *rem = std::move(r);
}

Poly Arith::pquo(const Poly& a, const Poly& b) const {
  Poly q;
  pdivmod(a, b, &q, nullptr);
  return q;
}

Poly Arith::prem(const Poly& a, const Poly& b) const {
  Poly r;
  pdivmod(a, b, nullptr, &r);
  return r;
}

Poly Arith::pmonic(const Poly& p) const {
  if (p.empty()) return p;
  const Value& lc = p.back();
  if (lc.level == 0 && lc.q == 1) return p;
  return pscale(p, inv(lc));
}

Poly Arith::pgcd(Poly a, Poly b) const {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = prem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(a);
}

Poly Arith::pderiv(const Poly& p) const {
  Poly out;
  for (std::size_t i = 1; i < p.size(); ++i)
    out.push_back(mul(p[i], Value(Rational(static_cast<long>(i)))));
  trim(out);
  return out;
}

Value Arith::peval(const Poly& p, const Value& x) const {
  Value acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = add(mul(acc, x), p[i]);
  return acc;
}

Interval Arith::enclose(const Value& x, mpfr_prec_t prec) const {
  if (x.level == 0) return Interval::point(x.q, prec);
  const Interval g = t_.generator_enclosure(x.level, prec);
  auto horner = [&](const Poly& p) {
    Interval acc = enclose(p.back(), prec);
    for (std::size_t i = p.size() - 1; i-- > 0;) acc = acc * g + enclose(p[i], prec);
    return acc;
  };
  if (t_.level(x.level).kind == LevelKind::algebraic) return horner(x.a);
  return horner(x.a) / horner(x.b);
}

int Arith::sign(const Value& x) const {
  if (x.level == 0) return x.q < 0 ? -1 : (x.q > 0 ? 1 : 0);
  for (mpfr_prec_t prec = default_precision(); prec <= kMaxPrecision; prec *= 2) {
    const int s = enclose(x, prec).sign();
    if (s != 0) return s;
  }
  throw Error(ErrorCode::undecidable_comparison,
              "sign not separated from zero at " + std::to_string(kMaxPrecision) + " bits");
}

std::vector<Rational> Arith::flatten(const Value& x, int level) const {
  std::vector<Rational> out;
  out.reserve(t_.dimension_up_to(level));
  flatten_into(x, level, out);
  return out;
}

void Arith::flatten_into(const Value& x, int level, std::vector<Rational>& out) const {
  if (level == 0) {
    out.push_back(x.q);
    return;
  }
  if (x.level < level) {
    flatten_into(x, level - 1, out);
    const std::size_t pad = (t_.level(level).degree() - 1) * t_.dimension_up_to(level - 1);
    out.resize(out.size() + pad);
    return;
  }
  for (const auto& c : x.a) flatten_into(c, level - 1, out);
}

Value Arith::unflatten(const std::vector<Rational>& coords, int level) const {
  return unflatten_at(coords, level, 0);
}

Value Arith::unflatten_at(const std::vector<Rational>& coords, int level, std::size_t offset) const {
  if (level == 0) return Value(coords[offset]);
  const std::size_t d = t_.level(level).degree();
  const std::size_t block = t_.dimension_up_to(level - 1);
  Poly c(d);
  for (std::size_t j = 0; j < d; ++j) c[j] = unflatten_at(coords, level - 1, offset + j * block);
  return alg_make(level, std::move(c));
}

PowerData power_data(const Arith& ar, const Value& g, int level) {
  const std::size_t dim = ar.tower().dimension_up_to(level);
  PowerData out;
  std::vector<std::vector<Rational>> combos;
  Value power(Rational(1));
  for (std::size_t k = 0; k <= dim; ++k) {
    std::vector<Rational> v = ar.flatten(power, level);
    std::vector<Rational> combo(dim + 1);
    combo[k] = 1;
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      const Rational f = v[out.pivots[r]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < dim; ++i)
        if (out.rows[r][i] != 0) v[i] -= f * out.rows[r][i];
      for (std::size_t i = 0; i <= dim; ++i)
        if (combos[r][i] != 0) combo[i] -= f * combos[r][i];
    }
    std::size_t piv = 0;
    while (piv < dim && v[piv] == 0) ++piv;
    if (piv == dim) {
      const Rational lead = combo[k];
      out.minpoly.assign(combo.begin(), combo.begin() + static_cast<long>(k) + 1);
      for (auto& c : out.minpoly) c /= lead;
      return out;
    }
    const Rational p = v[piv];
    for (auto& c : v) c /= p;
    for (auto& c : combo) c /= p;
    out.rows.push_back(std::move(v));
    out.pivots.push_back(piv);
    combos.push_back(std::move(combo));
    power = ar.mul(power, g);
  }
  throw Error(ErrorCode::not_algebraic, "power sequence did not become dependent");
}

}  // namespace tsurf::detail
