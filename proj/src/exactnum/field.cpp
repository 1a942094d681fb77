#include "tsurf/exactnum/field.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "arith.hpp"

namespace tsurf {

using detail::Arith;
using detail::Poly;
using detail::Value;

std::string_view to_string(Constant c) {
  switch (c) {
    case Constant::pi: return "pi";
    case Constant::e: return "e";
    case Constant::ln2: return "ln2";
    case Constant::euler_gamma: return "euler_gamma";
    case Constant::decimal: return "decimal";
  }
  return "decimal";
}

std::optional<Constant> constant_from_string(std::string_view name) {
  for (Constant c : {Constant::pi, Constant::e, Constant::ln2, Constant::euler_gamma, Constant::decimal})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

Embedding Embedding::named(Constant c) {
  static const char* const hints[] = {"3.14159265358979323846", "2.71828182845904523536",
                                      "0.69314718055994530942", "0.57721566490153286061"};
  Embedding e;
  e.constant = c;
  if (c != Constant::decimal) e.hint = hints[static_cast<int>(c)];
  return e;
}

Embedding Embedding::decimal(std::string text) {
  parse_rational(text);
  Embedding e;
  e.constant = Constant::decimal;
  e.hint = std::move(text);
  return e;
}

mpfr_prec_t default_precision() {
  static const mpfr_prec_t prec = [] {
    if (const char* env = std::getenv("TSURF_PRECISION")) {
      long v = std::strtol(env, nullptr, 10);
      if (v >= 16 && v <= 1 << 16) return static_cast<mpfr_prec_t>(v);
    }
    return static_cast<mpfr_prec_t>(64);
  }();
  return prec;
}

// ---------------------------------------------------------------- tower

std::optional<int> FieldTower::find(std::string_view name) const {
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (levels_[i].name == name) return static_cast<int>(i) + 1;
  return std::nullopt;
}

FieldElem FieldTower::gen(std::string_view name) const {
  auto idx = find(name);
  if (!idx) throw Error(ErrorCode::parse_error, "unknown generator '" + std::string(name) + "'");
  return gen(*idx);
}

FieldElem FieldTower::gen(int level) const {
  const Level& lv = this->level(level);
  Value v;
  v.level = level;
  if (lv.kind == LevelKind::algebraic) {
    v.a.resize(lv.degree());
    v.a[1] = Value(Rational(1));
  } else {
    v.a = {Value(), Value(Rational(1))};
    v.b = {Value(Rational(1))};
  }
  return element(std::move(v));
}

FieldElem FieldTower::element(Value v) const { return FieldElem(shared_from_this(), std::move(v)); }

std::size_t FieldTower::dimension_up_to(int level) const {
  std::size_t d = 1;
  for (int i = 1; i <= level; ++i) d *= levels_[i - 1].degree();
  return d;
}

Interval FieldTower::generator_enclosure(int idx, mpfr_prec_t prec) const {
  const Level& lv = level(idx);
  if (lv.kind == LevelKind::transcendental) {
    Interval out(prec + 8);
    switch (lv.embedding.constant) {
      case Constant::pi:
        mpfr_const_pi(out.lo(), MPFR_RNDD);
        mpfr_const_pi(out.hi(), MPFR_RNDU);
        break;
      case Constant::ln2:
        mpfr_const_log2(out.lo(), MPFR_RNDD);
        mpfr_const_log2(out.hi(), MPFR_RNDU);
        break;
      case Constant::euler_gamma:
        mpfr_const_euler(out.lo(), MPFR_RNDD);
        mpfr_const_euler(out.hi(), MPFR_RNDU);
        break;
      case Constant::e:
        mpfr_set_ui(out.lo(), 1, MPFR_RNDN);
        mpfr_exp(out.lo(), out.lo(), MPFR_RNDD);
        mpfr_set_ui(out.hi(), 1, MPFR_RNDN);
        mpfr_exp(out.hi(), out.hi(), MPFR_RNDU);
        break;
      case Constant::decimal:
        return Interval::point(parse_rational(lv.embedding.hint), prec + 8);
    }
    return out;
  }
  RootState& st = *roots_[idx - 1];
  std::lock_guard<std::mutex> lock(st.mutex);
  const Rational width = Rational(Integer(1), Integer(1) << static_cast<unsigned>(prec));
  Arith ar(*this);
  while (st.hi - st.lo > width) {
    const Rational mid = (st.lo + st.hi) / 2;
    const Value v = ar.peval(lv.minpoly, Value(mid));
    const int s = v.is_zero() ? 0 : ar.sign(v);
    if (s == 0) {
      st.lo = st.hi = mid;
    } else if (s == st.sign_lo) {
      st.lo = mid;
    } else {
      st.hi = mid;
    }
  }
  return Interval::hull(st.lo, st.hi, prec + 8);
}

namespace {

int sign_variations(const Arith& ar, const std::vector<Poly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    const Value v = ar.peval(p, Value(x));
    const int s = v.is_zero() ? 0 : ar.sign(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

void FieldTower::push_algebraic(std::string name, std::vector<std::string> coeffs, Rational lo, Rational hi) {
  if (find(name)) throw Error(ErrorCode::parse_error, "duplicate generator name '" + name + "'");
  auto self = shared_from_this();
  Poly m;
  for (const auto& text : coeffs) m.push_back(parse_element(self, text).value());
  Arith::trim(m);
  if (m.size() < 3)
    throw Error(ErrorCode::reducible_polynomial, "minimal polynomial of '" + name + "' has degree below 2");
  Arith ar(*this);
  m = ar.pmonic(m);
  if (!(lo < hi)) throw Error(ErrorCode::bad_isolating_interval, "empty isolating interval for '" + name + "'");
  const Value at_lo = ar.peval(m, Value(lo)), at_hi = ar.peval(m, Value(hi));
  if (at_lo.is_zero() || at_hi.is_zero())
    throw Error(ErrorCode::bad_isolating_interval, "isolating interval endpoint is a root for '" + name + "'");
  std::vector<Poly> sturm{m, ar.pderiv(m)};
  while (true) {
    Poly r = ar.prem(sturm[sturm.size() - 2], sturm.back());
    if (r.empty()) break;
    for (auto& c : r) c = ar.neg(c);
    sturm.push_back(std::move(r));
  }
  if (sign_variations(ar, sturm, lo) - sign_variations(ar, sturm, hi) != 1)
    throw Error(ErrorCode::bad_isolating_interval,
                "isolating interval of '" + name + "' does not contain exactly one root");

  Level lv;
  lv.kind = LevelKind::algebraic;
  lv.name = std::move(name);
  lv.minpoly = std::move(m);
  lv.minpoly_text = std::move(coeffs);
  lv.lo = lo;
  lv.hi = hi;
  auto state = std::make_unique<RootState>();
  state->lo = lo;
  state->hi = hi;
  state->sign_lo = ar.sign(at_lo);
  levels_.push_back(std::move(lv));
  roots_.push_back(std::move(state));
  ++algebraic_height_;

  // The tower so far is a field iff the flattened Q-algebra is. Find an
  // element whose powers span it and test its characteristic polynomial.
  const int top = algebraic_height_;
  const std::size_t dim = dimension_up_to(top);
  Arith full(*this);
  for (long c = 1; c <= 64; ++c) {
    Value g;
    Value coef(Rational(1));
    for (int i = 1; i <= top; ++i) {
      g = full.add(g, full.mul(coef, gen(i).value()));
      coef = Value(coef.q * c);
    }
    const detail::PowerData pd = detail::power_data(full, g, top);
    if (pd.minpoly.size() - 1 != dim) continue;
    if (detail::is_irreducible_over_q(pd.minpoly)) return;
    break;
  }
  const std::string bad = levels_.back().name;
  levels_.pop_back();
  roots_.pop_back();
  --algebraic_height_;
  throw Error(ErrorCode::reducible_polynomial, "minimal polynomial of '" + bad + "' is reducible over the tower below");
}

void FieldTower::push_transcendental(std::string name, Embedding embedding) {
  if (find(name)) throw Error(ErrorCode::parse_error, "duplicate generator name '" + name + "'");
  Level lv;
  lv.kind = LevelKind::transcendental;
  lv.name = std::move(name);
  lv.embedding = std::move(embedding);
  levels_.push_back(std::move(lv));
  roots_.push_back(nullptr);
}

TowerBuilder& TowerBuilder::extension(std::string name, std::vector<std::string> minpoly_coeffs, Rational lo,
                                      Rational hi) {
  extensions_.push_back({std::move(name), std::move(minpoly_coeffs), std::move(lo), std::move(hi)});
  return *this;
}

TowerBuilder& TowerBuilder::transcendental(std::string name, Embedding embedding) {
  transcendentals_.push_back({std::move(name), std::move(embedding)});
  return *this;
}

TowerPtr TowerBuilder::build() const {
  std::shared_ptr<FieldTower> tower(new FieldTower());
  for (const auto& e : extensions_) tower->push_algebraic(e.name, e.coeffs, e.lo, e.hi);
  for (const auto& t : transcendentals_) tower->push_transcendental(t.name, t.embedding);
  return tower;
}

TowerPtr quadratic_tower(const std::vector<int>& radicands) {
  TowerBuilder b;
  for (int r : radicands) {
    if (r <= 0) throw Error(ErrorCode::constraint_violation, "radicand must be positive");
    b.extension("sqrt" + std::to_string(r), {std::to_string(-r), "0", "1"}, Rational(0), Rational(r + 1));
  }
  return b.build();
}

TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  throw Error(ErrorCode::tower_mismatch, "elements belong to different towers");
}

// ---------------------------------------------------------------- elements

FieldElem::FieldElem(TowerPtr tower, Value v) : tower_(std::move(tower)), value_(std::move(v)) {
  if (value_.level > 0 && !tower_) throw Error(ErrorCode::tower_mismatch, "non-rational element without tower");
}

const Rational& FieldElem::rational() const {
  if (value_.level != 0) throw Error(ErrorCode::not_algebraic, "element " + to_string() + " is not rational");
  return value_.q;
}

namespace {

template <class Op>
FieldElem combine(const FieldElem& a, const FieldElem& b, Op op) {
  TowerPtr t = common_tower(a.tower(), b.tower());
  if (!t) return FieldElem(nullptr, op(nullptr, a.value(), b.value()));
  Arith ar(*t);
  Value v = op(&ar, a.value(), b.value());
  if (v.level == 0) return FieldElem(v.q);
  return FieldElem(std::move(t), std::move(v));
}

}  // namespace

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  return combine(a, b, [](const Arith* ar, const Value& x, const Value& y) {
    return ar ? ar->add(x, y) : Value(x.q + y.q);
  });
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  return combine(a, b, [](const Arith* ar, const Value& x, const Value& y) {
    return ar ? ar->sub(x, y) : Value(x.q - y.q);
  });
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  return combine(a, b, [](const Arith* ar, const Value& x, const Value& y) {
    return ar ? ar->mul(x, y) : Value(x.q * y.q);
  });
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  return combine(a, b, [](const Arith* ar, const Value& x, const Value& y) {
    if (y.is_zero()) throw Error(ErrorCode::division_by_zero, "division by zero");
    return ar ? ar->div(x, y) : Value(x.q / y.q);
  });
}

FieldElem operator-(const FieldElem& a) {
  if (a.is_rational()) return FieldElem(Rational(-a.value().q));
  return FieldElem(a.tower(), Arith(*a.tower()).neg(a.value()));
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.tower() && b.tower() && a.tower() != b.tower())
    throw Error(ErrorCode::tower_mismatch, "elements belong to different towers");
  return detail::structural_compare(a.value(), b.value()) == 0;
}

std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b) {
  const int c = compare(a, b);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

FieldElem FieldElem::inverse() const { return FieldElem(1) / *this; }

FieldElem FieldElem::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  FieldElem result(1), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

int FieldElem::sign() const {
  if (value_.level == 0) return value_.q < 0 ? -1 : (value_.q > 0 ? 1 : 0);
  return Arith(*tower_).sign(value_);
}

Interval FieldElem::enclosure(mpfr_prec_t prec) const {
  if (value_.level == 0) return Interval::point(value_.q, prec);
  return Arith(*tower_).enclose(value_, prec);
}

double FieldElem::to_double() const {
  if (value_.level == 0) return value_.q.convert_to<double>();
  return enclosure(96).midpoint();
}

int compare(const FieldElem& a, const FieldElem& b) {
  if (a.is_rational() && b.is_rational()) return a.value().q < b.value().q ? -1 : (b.value().q < a.value().q ? 1 : 0);
  return (a - b).sign();
}

FieldElem abs(const FieldElem& a) { return a.sign() < 0 ? -a : a; }

Integer floor(const FieldElem& a) {
  if (a.is_rational()) return floor(a.rational());
  // a is irrational, so refinement eventually places it strictly between integers.
  for (mpfr_prec_t prec = default_precision();; prec *= 2) {
    Interval iv = a.enclosure(prec);
    mpfr_t flo, fhi;
    mpfr_init2(flo, prec + 64);
    mpfr_init2(fhi, prec + 64);
    mpfr_floor(flo, iv.lo());
    mpfr_floor(fhi, iv.hi());
    const bool same = mpfr_equal_p(flo, fhi) && mpfr_number_p(flo);
    Integer out;
    if (same) {
      mpz_t z;
      mpz_init(z);
      mpfr_get_z(z, flo, MPFR_RNDN);
      out = Integer(z);
      mpz_clear(z);
    }
    mpfr_clear(flo);
    mpfr_clear(fhi);
    if (same) return out;
    if (prec > 1 << 16) throw Error(ErrorCode::undecidable_comparison, "floor not decided");
  }
}

Integer round_nearest(const FieldElem& a) { return floor(a + FieldElem(Rational(1, 2))); }

// ---------------------------------------------------------------- printing

namespace {

std::string value_string(const FieldTower* t, const Value& v);

std::string poly_string(const FieldTower* t, const Poly& p, const std::string& var) {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    std::string c = value_string(t, p[i]);
    bool negative = false;
    if (p[i].level == 0 && p[i].q < 0) {
      negative = true;
      c = Rational(-p[i].q).str();
    }
    std::string term;
    if (i == 0) {
      term = p[i].level == 0 ? c : "(" + c + ")";
    } else {
      std::string mono = i == 1 ? var : var + "^" + std::to_string(i);
      if (p[i].level == 0 && (negative ? -p[i].q : p[i].q) == 1)
        term = mono;
      else
        term = (p[i].level == 0 ? c : "(" + c + ")") + "*" + mono;
    }
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += negative ? " - " + term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

std::string value_string(const FieldTower* t, const Value& v) {
  if (v.level == 0) return v.q.str();
  const auto& lv = t->level(v.level);
  if (lv.kind == LevelKind::algebraic) return poly_string(t, v.a, lv.name);
  std::string num = poly_string(t, v.a, lv.name);
  if (v.b.size() == 1) return num;
  return "(" + num + ")/(" + poly_string(t, v.b, lv.name) + ")";
}

}  // namespace

std::string FieldElem::to_string() const { return value_string(tower_.get(), value_); }

std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.to_string(); }

}  // namespace tsurf
