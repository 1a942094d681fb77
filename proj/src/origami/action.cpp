#include <cctype>
#include <map>

#include "tsurf/origami.hpp"

namespace tsurf {

FreeWord reduce(FreeWord w) {
  FreeWord out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

FreeWord free_inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

IntMat2 abelianization(const FreeAutomorphism& phi) {
  IntMat2 m = IntMat2::Zero();
  for (int col = 0; col < 2; ++col) {
    for (int l : col == 0 ? phi.x_image : phi.y_image) {
      const int row = (l > 0 ? l : -l) - 1;
      m(row, col) += l > 0 ? 1 : -1;
    }
  }
  return m;
}

FreeAutomorphism conjugated(const FreeAutomorphism& phi, const FreeWord& w) {
  auto wrap = [&](const FreeWord& u) {
    FreeWord out = w;
    out.insert(out.end(), u.begin(), u.end());
    const FreeWord wi = free_inverse(w);
    out.insert(out.end(), wi.begin(), wi.end());
    return reduce(out);
  };
  return {wrap(phi.x_image), wrap(phi.y_image)};
}

Permutation monodromy(const Origami& o, const FreeWord& w) {
  const Permutation hi = inverse(o.h()), vi = inverse(o.v());
  Permutation out(o.size());
  for (int i = 0; i < o.size(); ++i) {
    int s = i;
    for (int l : w) {
      switch (l) {
        case 1: s = o.h()[s]; break;
        case -1: s = hi[s]; break;
        case 2: s = o.v()[s]; break;
        case -2: s = vi[s]; break;
        default: throw Error(ErrorCode::constraint_violation, "bad free group letter");
      }
    }
    out[i] = s;
  }
  return out;
}

Origami pullback(const Origami& o, const FreeAutomorphism& phi) {
  return canonical_form(Origami(monodromy(o, phi.x_image), monodromy(o, phi.y_image)));
}

Generator generator_from_letter(char c) {
  switch (c) {
    case 'S': return Generator::S;
    case 'T': return Generator::T;
    case 's': return Generator::S_inv;
    case 't': return Generator::T_inv;
  }
  throw Error(ErrorCode::parse_error, std::string("unknown generator letter '") + c + "'");
}

char letter(Generator g) {
  switch (g) {
    case Generator::S: return 'S';
    case Generator::T: return 'T';
    case Generator::S_inv: return 's';
    case Generator::T_inv: return 't';
  }
  return '?';
}

const FreeAutomorphism& standard_lift(Generator g) {
  // T: x -> x, y -> yx.  S: x -> y^-1, y -> x.  Inverses accordingly.
  static const FreeAutomorphism lifts[4] = {
      {{-2}, {1}},
      {{1}, {2, 1}},
      {{2}, {-1}},
      {{1}, {2, -1}},
  };
  return lifts[static_cast<int>(g)];
}

IntMat2 generator_matrix(Generator g) { return abelianization(standard_lift(g)); }

Origami sl2z_act(Generator g, const Origami& o) { return pullback(o, standard_lift(g)); }

Origami sl2z_act(std::string_view word, const Origami& o) {
  Origami cur = canonical_form(o);
  for (char c : word) cur = sl2z_act(generator_from_letter(c), cur);
  return cur;
}

IntMat2 word_matrix(std::string_view word) {
  IntMat2 m = IntMat2::Identity();
  for (char c : word) m = (m * generator_matrix(generator_from_letter(c))).eval();
  return m;
}

std::string inverse_word(std::string_view word) {
  std::string out(word.rbegin(), word.rend());
  for (auto& c : out) {
    generator_from_letter(c);
    const auto u = static_cast<unsigned char>(c);
    c = static_cast<char>(std::isupper(u) ? std::tolower(u) : std::toupper(u));
  }
  return out;
}

std::string reduce_word(std::string_view word) {
  std::string out;
  for (char c : word) {
    if (!out.empty() && out.back() != c &&
        std::tolower(static_cast<unsigned char>(out.back())) == std::tolower(static_cast<unsigned char>(c)))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

namespace {

std::string matrix_key(const IntMat2& m) {
  return m(0, 0).str() + "," + m(0, 1).str() + "," + m(1, 0).str() + "," + m(1, 1).str();
}

}  // namespace

VeechGroupDesc veech_group(const Origami& o, std::size_t orbit_cap) {
  VeechGroupDesc out;
  std::map<Origami, std::size_t> index;
  out.orbit.push_back(canonical_form(o));
  out.coset_representatives.push_back("");
  index.emplace(out.orbit.front(), 0);
  std::map<std::string, std::size_t> seen_matrix;
  const IntMat2 id = IntMat2::Identity();
  for (std::size_t i = 0; i < out.orbit.size(); ++i) {
    for (Generator g : {Generator::S, Generator::T}) {
      Origami img = sl2z_act(g, out.orbit[i]);
      const std::string w = out.coset_representatives[i] + letter(g);
      auto it = index.find(img);
      if (it == index.end()) {
        if (out.orbit.size() >= orbit_cap)
          throw Error(ErrorCode::orbit_cap_exceeded,
                      "SL(2,Z)-orbit exceeds the cap of " + std::to_string(orbit_cap) + " origamis");
        index.emplace(img, out.orbit.size());
        out.orbit.push_back(std::move(img));
        out.coset_representatives.push_back(w);
        continue;
      }
      const std::string word = reduce_word(w + inverse_word(out.coset_representatives[it->second]));
      if (word.empty()) continue;
      const IntMat2 m = word_matrix(word);
      if (m == id) continue;
      if (seen_matrix.emplace(matrix_key(m), out.generators.size()).second) out.generators.emplace_back(word, m);
    }
  }
  out.orbit_size = out.orbit.size();
  out.contains_minus_identity = sl2z_act("SS", out.orbit.front()) == out.orbit.front();
  return out;
}

}  // namespace tsurf
