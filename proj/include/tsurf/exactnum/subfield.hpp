#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsurf/exactnum/field.hpp"
#include "tsurf/exactnum/linalg.hpp"

namespace tsurf {

// A subfield F(T) of a tower: F is the number field generated by an element
// `algebraic_generator` of the algebraic levels, T a set of transcendental
// levels. Membership is exact.
struct SubfieldDesc {
  TowerPtr tower;
  std::vector<FieldElem> generators;
  FieldElem algebraic_generator{1};
  QPoly algebraic_minpoly{Rational(-1), Rational(1)};
  std::vector<int> transcendence_levels;
  std::shared_ptr<const QSpan> span;  // Q-span of the powers of algebraic_generator

  bool is_algebraic() const { return transcendence_levels.empty(); }
  std::size_t algebraic_degree() const { return algebraic_minpoly.size() - 1; }
  // nullopt means infinite degree.
  std::optional<std::size_t> degree() const;
  std::optional<FieldElem> primitive_element() const;
  std::vector<std::string> transcendence_names() const;
  bool is_rationals() const { return is_algebraic() && algebraic_degree() == 1; }
  std::string describe() const;
};

// Flattened rational coordinates of an element of the algebraic part.
std::vector<Rational> algebraic_coordinates(const FieldElem& a);

QPoly minimal_polynomial(const FieldElem& a);
std::string poly_to_string(const QPoly& p, const std::string& var = "x");

SubfieldDesc rational_subfield(TowerPtr tower = nullptr);
SubfieldDesc subfield_generated(const std::vector<FieldElem>& gens, TowerPtr tower = nullptr);
bool is_member(const FieldElem& a, const SubfieldDesc& f);
// a is contained in b.
bool is_subfield(const SubfieldDesc& a, const SubfieldDesc& b);
bool same_field(const SubfieldDesc& a, const SubfieldDesc& b);

// Injective Q-linear coordinates for the Q-span of `xs`: row i is the image
// of xs[i]; all rows have the same length.
std::vector<std::vector<Rational>> rational_embedding(const std::vector<FieldElem>& xs);

}  // namespace tsurf
