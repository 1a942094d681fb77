#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tsurf/geometry.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

// Images of 0..n-1.
using Permutation = std::vector<int>;

// Apply a first, then b.
Permutation then(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
std::vector<std::vector<int>> cycles(const Permutation& p);
bool is_permutation(const Permutation& p);
// 1-based cycle notation "(1 2)(3)" or one-line notation "2 1 3" / "[2,1,3]".
Permutation parse_permutation(std::string_view text, int n);
std::string cycle_string(const Permutation& p);

class Origami {
 public:
  // sigma_h: right neighbour, sigma_v: top neighbour. Checks well-formedness
  // and transitivity.
  Origami(Permutation sigma_h, Permutation sigma_v);

  int size() const { return static_cast<int>(h_.size()); }
  const Permutation& h() const { return h_; }
  const Permutation& v() const { return v_; }

  friend bool operator==(const Origami&, const Origami&) = default;
  friend auto operator<=>(const Origami&, const Origami&) = default;

 private:
  Permutation h_, v_;
};

// Minimal encoding over the BFS relabelings from every base square.
Origami canonical_form(const Origami& o);
// Relabels squares: square i becomes relabel[i].
Origami relabeled(const Origami& o, const Permutation& relabel);

struct StratumDesc {
  std::vector<int> cone_points;  // cycle lengths >= 2, decreasing; angle 2 pi l
  int genus = 0;
  int marked_regular_points = 0;
  std::vector<int> cycle_lengths;  // all vertex cycles, decreasing
};
Permutation commutator(const Origami& o);
StratumDesc stratum(const Origami& o);

// Words in the free group on x, y: letters 1 = x, -1 = x^-1, 2 = y, -2 = y^-1.
using FreeWord = std::vector<int>;

struct FreeAutomorphism {
  FreeWord x_image, y_image;
};

FreeWord reduce(FreeWord w);
FreeWord free_inverse(const FreeWord& w);
IntMat2 abelianization(const FreeAutomorphism& phi);
// Composition with the inner automorphism u -> w u w^-1.
FreeAutomorphism conjugated(const FreeAutomorphism& phi, const FreeWord& w);
// Monodromy of the word (letters applied left to right).
Permutation monodromy(const Origami& o, const FreeWord& w);
// The origami with monodromy rho o phi, canonicalized.
Origami pullback(const Origami& o, const FreeAutomorphism& phi);

// Generators S, T and inverses s, t.
enum class Generator { S, T, S_inv, T_inv };
Generator generator_from_letter(char c);
char letter(Generator g);
const FreeAutomorphism& standard_lift(Generator g);
IntMat2 generator_matrix(Generator g);

Origami sl2z_act(Generator g, const Origami& o);
// Letters applied left to right.
Origami sl2z_act(std::string_view word, const Origami& o);
IntMat2 word_matrix(std::string_view word);
std::string inverse_word(std::string_view word);
std::string reduce_word(std::string_view word);

struct VeechGroupDesc {
  std::size_t orbit_size = 0;
  std::vector<std::pair<std::string, IntMat2>> generators;
  std::vector<std::string> coset_representatives;  // word reaching each orbit element
  std::vector<Origami> orbit;                      // canonical forms, aligned with the representatives
  bool contains_minus_identity = false;
};

VeechGroupDesc veech_group(const Origami& o, std::size_t orbit_cap);

// Unit squares glued by sigma_h, sigma_v; every corner is marked.
PolygonComplex to_surface(const Origami& o);

}  // namespace tsurf
