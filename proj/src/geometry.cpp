#include "tsurf/geometry.hpp"

namespace tsurf {

int direction_half(const Vec2& v) {
  const int sy = v(1).sign();
  if (sy > 0) return 0;
  if (sy < 0) return 1;
  return v(0).sign() > 0 ? 0 : 1;
}

int compare_direction(const Vec2& a, const Vec2& b) {
  const int ha = direction_half(a), hb = direction_half(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  return -cross(a, b).sign();
}

FieldElem squared_distance_to_segment(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const Vec2 w = x - a;
  const FieldElem t = dot(w, d);
  if (t.sign() <= 0) return squared_norm(w);
  const FieldElem dd = squared_norm(d);
  if (compare(t, dd) >= 0) return squared_norm((x - b).eval());
  return squared_norm(w) - t * t / dd;
}

int compare_lex(const Vec2& a, const Vec2& b) {
  if (int c = compare(a(0), b(0))) return c;
  return compare(a(1), b(1));
}

TowerPtr tower_of(const Vec2& v) { return common_tower(v(0).tower(), v(1).tower()); }

std::string to_string(const Vec2& v) { return "(" + v(0).to_string() + ", " + v(1).to_string() + ")"; }

}  // namespace tsurf
