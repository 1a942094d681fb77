#pragma once

#include <compare>
#include <concepts>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsurf/error.hpp"
#include "tsurf/exactnum/interval.hpp"
#include "tsurf/exactnum/rational.hpp"

namespace tsurf {

class FieldTower;
class FieldElem;
using TowerPtr = std::shared_ptr<const FieldTower>;
using QPoly = std::vector<Rational>;  // constant term first

namespace detail {

// Canonical representation of an element living at `level` of a tower.
// Level 0 is Q and uses `q`. An algebraic level stores the coefficients of
// the generator powers in `a` (exactly `degree` entries, each one level down
// or lower). A transcendental level stores numerator `a` and monic
// denominator `b` as polynomials in the generator, coprime.
// Every value sits at the lowest level that can hold it, so equal elements
// have identical trees.
struct Value {
  int level = 0;
  Rational q;
  std::vector<Value> a;
  std::vector<Value> b;

  Value() = default;
  explicit Value(Rational r) : q(std::move(r)) {}

  bool is_zero() const { return level == 0 && q == 0; }
};

int structural_compare(const Value& x, const Value& y);
inline bool operator==(const Value& x, const Value& y) { return structural_compare(x, y) == 0; }

}  // namespace detail

enum class LevelKind { algebraic, transcendental };
enum class Constant { pi, e, ln2, euler_gamma, decimal };

// Numeric embedding of a transcendental generator. Named constants are
// evaluated by MPFR; `decimal` embeds the exact decimal number in `hint`.
struct Embedding {
  Constant constant = Constant::decimal;
  std::string hint;

  static Embedding named(Constant c);
  static Embedding decimal(std::string text);
};

std::string_view to_string(Constant c);
std::optional<Constant> constant_from_string(std::string_view name);

class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  struct Level {
    LevelKind kind = LevelKind::algebraic;
    std::string name;
    std::vector<detail::Value> minpoly;  // monic, constant term first
    std::vector<std::string> minpoly_text;
    Rational lo, hi;
    Embedding embedding;

    std::size_t degree() const { return minpoly.size() - 1; }
  };

  int height() const { return static_cast<int>(levels_.size()); }
  int algebraic_height() const { return algebraic_height_; }
  const Level& level(int i) const { return levels_.at(i - 1); }
  std::optional<int> find(std::string_view name) const;

  FieldElem gen(std::string_view name) const;
  FieldElem gen(int level) const;
  FieldElem element(detail::Value v) const;

  // Q-dimension of the algebraic levels 1..level (product of degrees).
  std::size_t dimension_up_to(int level) const;
  std::size_t algebraic_dimension() const { return dimension_up_to(algebraic_height_); }

  // Outward-rounded enclosure of the generator of `level`, width below 2^-prec.
  Interval generator_enclosure(int level, mpfr_prec_t prec) const;

 private:
  friend class TowerBuilder;
  FieldTower() = default;

  struct RootState {
    std::mutex mutex;
    Rational lo, hi;
    int sign_lo = 0;
  };

  void push_algebraic(std::string name, std::vector<std::string> coeffs, Rational lo, Rational hi);
  void push_transcendental(std::string name, Embedding embedding);

  std::vector<Level> levels_;
  int algebraic_height_ = 0;
  mutable std::vector<std::unique_ptr<RootState>> roots_;
};

class TowerBuilder {
 public:
  // Extension by a root of sum coeffs[i] x^i; coefficients are expressions in
  // the generators declared before (see parse_element).
  TowerBuilder& extension(std::string name, std::vector<std::string> minpoly_coeffs,
                          Rational lo, Rational hi);
  TowerBuilder& transcendental(std::string name, Embedding embedding);
  TowerPtr build() const;

 private:
  struct Ext {
    std::string name;
    std::vector<std::string> coeffs;
    Rational lo, hi;
  };
  struct Trans {
    std::string name;
    Embedding embedding;
  };
  std::vector<Ext> extensions_;
  std::vector<Trans> transcendentals_;
};

// Q(sqrt r1)(sqrt r2)... with generators named "sqrt<r>".
TowerPtr quadratic_tower(const std::vector<int>& radicands);

class FieldElem {
 public:
  FieldElem() = default;
  template <std::integral I>
  FieldElem(I v) : value_(Rational(v)) {}
  FieldElem(const Rational& r) : value_(r) {}
  FieldElem(TowerPtr tower, detail::Value v);

  const TowerPtr& tower() const { return tower_; }
  const detail::Value& value() const { return value_; }
  int level() const { return value_.level; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_rational() const { return value_.level == 0; }
  const Rational& rational() const;

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a);

  // Exact equality of canonical forms.
  friend bool operator==(const FieldElem& a, const FieldElem& b);
  // Order of the real embedding.
  friend std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b);

  FieldElem inverse() const;
  FieldElem pow(long k) const;
  int sign() const;
  Interval enclosure(mpfr_prec_t prec) const;
  double to_double() const;
  std::string to_string() const;

 private:
  TowerPtr tower_;
  detail::Value value_;
};

int compare(const FieldElem& a, const FieldElem& b);
std::ostream& operator<<(std::ostream& os, const FieldElem& a);
FieldElem abs(const FieldElem& a);
Integer floor(const FieldElem& a);
Integer round_nearest(const FieldElem& a);

// Structural total order, for ordered containers; unrelated to the real order.
struct CanonicalLess {
  bool operator()(const FieldElem& a, const FieldElem& b) const {
    return detail::structural_compare(a.value(), b.value()) < 0;
  }
};

// Tower shared by the arguments (null when all of them are rational).
TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b);

// Parses expressions such as "1/2 + 3*sqrt2", "t/(t+1)", "-2^3" over the
// generator names of `tower` (which may be null for rational input).
FieldElem parse_element(const TowerPtr& tower, std::string_view text);

// Start precision of enclosure refinement, from TSURF_PRECISION or 64 bits.
mpfr_prec_t default_precision();

}  // namespace tsurf
