#pragma once

#include <vector>

#include "tsurf/exactnum/field.hpp"

namespace tsurf::detail {

using Poly = std::vector<Value>;  // constant term first, no trailing zeros after trim

// Recursive arithmetic on canonical values of one tower.
class Arith {
 public:
  explicit Arith(const FieldTower& tower) : t_(tower) {}

  Value add(const Value& x, const Value& y) const;
  Value sub(const Value& x, const Value& y) const { return add(x, neg(y)); }
  Value neg(const Value& x) const;
  Value mul(const Value& x, const Value& y) const;
  Value inv(const Value& x) const;
  Value div(const Value& x, const Value& y) const { return mul(x, inv(y)); }

  static void trim(Poly& p);
  Poly padd(const Poly& p, const Poly& q) const;
  Poly psub(const Poly& p, const Poly& q) const;
  Poly pmul(const Poly& p, const Poly& q) const;
  Poly pscale(const Poly& p, const Value& c) const;
  void pdivmod(const Poly& a, const Poly& b, Poly* quot, Poly* rem) const;
  Poly pquo(const Poly& a, const Poly& b) const;
  Poly prem(const Poly& a, const Poly& b) const;
  Poly pgcd(Poly a, Poly b) const;  // monic
  Poly pmonic(const Poly& p) const;
  Poly pderiv(const Poly& p) const;
  Value peval(const Poly& p, const Value& x) const;

  int sign(const Value& x) const;
  Interval enclose(const Value& x, mpfr_prec_t prec) const;

  // Coordinates of x over the power basis of levels 1..level (all algebraic).
  std::vector<Rational> flatten(const Value& x, int level) const;
  Value unflatten(const std::vector<Rational>& coords, int level) const;

  const FieldTower& tower() const { return t_; }

 private:
  Value alg_make(int level, Poly c) const;
  Value trans_make(int level, Poly num, Poly den) const;
  Value trans_reduce(int level, Poly num, Poly den) const;
  Poly alg_inverse(const Poly& p, const Poly& m) const;
  void flatten_into(const Value& x, int level, std::vector<Rational>& out) const;
  Value unflatten_at(const std::vector<Rational>& coords, int level, std::size_t offset) const;

  const FieldTower& t_;
};

// Minimal polynomial over Q of an element of the algebraic part, together
// with an echelon basis of the Q-span of its powers (flattened coordinates of
// levels 1..level).
struct PowerData {
  QPoly minpoly;
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> pivots;
};
PowerData power_data(const Arith& ar, const Value& g, int level);

bool is_irreducible_over_q(const QPoly& f);

}  // namespace tsurf::detail
