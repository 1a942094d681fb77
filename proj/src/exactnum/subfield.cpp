#include "tsurf/exactnum/subfield.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arith.hpp"

namespace tsurf {

using detail::Arith;
using detail::Poly;
using detail::Value;

// ---------------------------------------------------------------- QSpan

void QSpan::reduce(std::vector<Rational>& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational f = v[pivots_[r]];
    if (f == 0) continue;
    for (std::size_t i = 0; i < dim_; ++i)
      if (rows_[r][i] != 0) v[i] -= f * rows_[r][i];
  }
}

bool QSpan::add(std::vector<Rational> v) {
  v.resize(dim_);
  reduce(v);
  std::size_t piv = 0;
  while (piv < dim_ && v[piv] == 0) ++piv;
  if (piv == dim_) return false;
  const Rational p = v[piv];
  for (auto& c : v) c /= p;
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool QSpan::contains(std::vector<Rational> v) const {
  if (v.size() > dim_) {
    for (std::size_t i = dim_; i < v.size(); ++i)
      if (v[i] != 0) return false;
  }
  v.resize(dim_);
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

// ---------------------------------------------------------------- helpers

namespace {

int algebraic_height(const TowerPtr& t) { return t ? t->algebraic_height() : 0; }

std::vector<Rational> coords(const TowerPtr& t, const Value& v) {
  if (!t) return {v.q};
  return Arith(*t).flatten(v, t->algebraic_height());
}

struct Generated {
  Value gen{Rational(1)};
  QPoly minpoly{Rational(-1), Rational(1)};
  std::shared_ptr<QSpan> span;
};

Generated power_field(const TowerPtr& t, const Value& g) {
  Generated out;
  out.gen = g;
  if (!t || g.level == 0) {
    out.minpoly = {Rational(-g.q), Rational(1)};
    out.span = std::make_shared<QSpan>(t ? t->algebraic_dimension() : 1);
    out.span->add(coords(t, Value(Rational(1))));
    return out;
  }
  Arith ar(*t);
  detail::PowerData pd = detail::power_data(ar, g, t->algebraic_height());
  out.minpoly = std::move(pd.minpoly);
  out.span = std::make_shared<QSpan>(t->algebraic_dimension());
  for (auto& row : pd.rows) out.span->add(std::move(row));
  return out;
}

void collect(const TowerPtr& t, const Value& v, std::set<Value, bool (*)(const Value&, const Value&)>& alg,
             std::set<int>& trans) {
  if (v.level == 0) return;
  if (v.level > t->algebraic_height()) {
    trans.insert(v.level);
    for (const auto& c : v.a) collect(t, c, alg, trans);
    for (const auto& c : v.b) collect(t, c, alg, trans);
    return;
  }
  alg.insert(v);
}

bool value_less(const Value& a, const Value& b) { return detail::structural_compare(a, b) < 0; }

bool member_value(const TowerPtr& t, const Value& v, const SubfieldDesc& f) {
  if (v.level == 0) return true;
  if (v.level > t->algebraic_height()) {
    if (std::find(f.transcendence_levels.begin(), f.transcendence_levels.end(), v.level) ==
        f.transcendence_levels.end())
      return false;
    for (const auto& c : v.a)
      if (!member_value(t, c, f)) return false;
    for (const auto& c : v.b)
      if (!member_value(t, c, f)) return false;
    return true;
  }
  return f.span && f.span->contains(coords(t, v));
}

}  // namespace

// ---------------------------------------------------------------- SubfieldDesc

std::optional<std::size_t> SubfieldDesc::degree() const {
  if (!is_algebraic()) return std::nullopt;
  return algebraic_degree();
}

std::optional<FieldElem> SubfieldDesc::primitive_element() const {
  if (!is_algebraic()) return std::nullopt;
  return algebraic_generator;
}

std::vector<std::string> SubfieldDesc::transcendence_names() const {
  std::vector<std::string> out;
  for (int l : transcendence_levels) out.push_back(tower->level(l).name);
  return out;
}

std::string SubfieldDesc::describe() const {
  std::string out = "Q";
  if (algebraic_degree() > 1) {
    out += "(" + algebraic_generator.to_string() + ")";
  }
  if (!transcendence_levels.empty()) {
    out += "(";
    auto names = transcendence_names();
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    out += ")";
  }
  return out;
}

std::vector<Rational> algebraic_coordinates(const FieldElem& a) {
  if (a.level() > algebraic_height(a.tower()))
    throw Error(ErrorCode::not_algebraic, "element " + a.to_string() + " involves a transcendental");
  return coords(a.tower(), a.value());
}

QPoly minimal_polynomial(const FieldElem& a) {
  if (a.is_rational()) return {Rational(-a.rational()), Rational(1)};
  if (a.level() > algebraic_height(a.tower()))
    throw Error(ErrorCode::not_algebraic, "element " + a.to_string() + " involves a transcendental");
  Arith ar(*a.tower());
  return detail::power_data(ar, a.value(), a.tower()->algebraic_height()).minpoly;
}

std::string poly_to_string(const QPoly& p, const std::string& var) {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    const bool neg = p[i] < 0;
    const Rational mag = neg ? Rational(-p[i]) : p[i];
    std::string term;
    if (i == 0)
      term = mag.str();
    else {
      std::string mono = i == 1 ? var : var + "^" + std::to_string(i);
      term = mag == 1 ? mono : mag.str() + "*" + mono;
    }
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

SubfieldDesc rational_subfield(TowerPtr tower) {
  SubfieldDesc out;
  out.tower = tower;
  Generated g = power_field(tower, Value(Rational(1)));
  out.span = g.span;
  return out;
}

SubfieldDesc subfield_generated(const std::vector<FieldElem>& gens, TowerPtr tower) {
  for (const auto& g : gens) tower = common_tower(tower, g.tower());
  SubfieldDesc out = rational_subfield(tower);
  out.generators = gens;
  if (!tower) return out;

  std::set<Value, bool (*)(const Value&, const Value&)> alg(value_less);
  std::set<int> trans;
  for (const auto& g : gens) collect(tower, g.value(), alg, trans);
  out.transcendence_levels.assign(trans.begin(), trans.end());

  Generated cur = power_field(tower, Value(Rational(1)));
  bool have = false;
  Arith ar(*tower);
  for (const Value& g : alg) {
    if (cur.span->contains(coords(tower, g))) continue;
    if (!have) {
      cur = power_field(tower, g);
      have = true;
      continue;
    }
    for (long c = 1;; ++c) {
      Value cand = ar.add(cur.gen, ar.mul(Value(Rational(c)), g));
      Generated next = power_field(tower, cand);
      if (next.span->contains(coords(tower, cur.gen)) && next.span->contains(coords(tower, g))) {
        cur = std::move(next);
        break;
      }
      if (c > 1000) throw Error(ErrorCode::constraint_violation, "primitive element search did not terminate");
    }
  }
  out.algebraic_generator = tower->element(cur.gen);
  if (out.algebraic_generator.is_rational()) out.algebraic_generator = FieldElem(Rational(1));
  out.algebraic_minpoly = cur.minpoly;
  out.span = cur.span;
  return out;
}

bool is_member(const FieldElem& a, const SubfieldDesc& f) {
  if (a.is_rational()) return true;
  TowerPtr t = common_tower(a.tower(), f.tower);
  if (!f.tower) return false;
  return member_value(t, a.value(), f);
}

bool is_subfield(const SubfieldDesc& a, const SubfieldDesc& b) {
  if (!is_member(a.algebraic_generator, b)) return false;
  for (int l : a.transcendence_levels)
    if (std::find(b.transcendence_levels.begin(), b.transcendence_levels.end(), l) == b.transcendence_levels.end())
      return false;
  return true;
}

bool same_field(const SubfieldDesc& a, const SubfieldDesc& b) { return is_subfield(a, b) && is_subfield(b, a); }

// ---------------------------------------------------------------- embedding

namespace {

std::vector<std::vector<Rational>> embed(const TowerPtr& t, const std::vector<Value>& xs, int level) {
  std::vector<std::vector<Rational>> out;
  if (!t || level <= t->algebraic_height()) {
    for (const auto& x : xs) out.push_back(coords(t, x));
    return out;
  }
  Arith ar(*t);
  std::vector<Poly> nums, dens;
  Poly common{Value(Rational(1))};
  for (const auto& x : xs) {
    if (x.level == level) {
      nums.push_back(x.a);
      dens.push_back(x.b);
    } else {
      nums.push_back(x.is_zero() ? Poly{} : Poly{x});
      dens.push_back(Poly{Value(Rational(1))});
    }
    const Poly g = ar.pgcd(common, dens.back());
    common = ar.pmul(common, ar.pquo(dens.back(), g));
  }
  std::size_t width = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    nums[i] = ar.pmul(nums[i], ar.pquo(common, dens[i]));
    width = std::max(width, nums[i].size());
  }
  std::vector<Value> flat;
  for (const auto& n : nums)
    for (std::size_t j = 0; j < width; ++j) flat.push_back(j < n.size() ? n[j] : Value());
  const auto sub = embed(t, flat, level - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < width; ++j) {
      const auto& part = sub[i * width + j];
      row.insert(row.end(), part.begin(), part.end());
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::vector<std::vector<Rational>> rational_embedding(const std::vector<FieldElem>& xs) {
  TowerPtr t;
  int level = 0;
  std::vector<Value> vals;
  for (const auto& x : xs) {
    t = common_tower(t, x.tower());
    level = std::max(level, x.level());
    vals.push_back(x.value());
  }
  return embed(t, vals, level);
}

}  // namespace tsurf
