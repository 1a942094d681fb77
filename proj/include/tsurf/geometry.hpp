#pragma once

#include <string>

#include <Eigen/Core>

#include "tsurf/exactnum/linalg.hpp"

namespace tsurf {

using Vec2 = Eigen::Matrix<FieldElem, 2, 1>;
using Mat2 = Eigen::Matrix<FieldElem, 2, 2>;
using IntMat2 = Eigen::Matrix<Integer, 2, 2>;

template <class A, class B>
typename A::Scalar cross(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a(0) * b(1) - a(1) * b(0);
}

template <class A, class B>
typename A::Scalar dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a(0) * b(0) + a(1) * b(1);
}

template <class A>
typename A::Scalar squared_norm(const Eigen::MatrixBase<A>& a) {
  return dot(a, a);
}

inline bool is_zero(const Vec2& v) { return v(0).is_zero() && v(1).is_zero(); }
inline bool equal(const Vec2& a, const Vec2& b) { return a(0) == b(0) && a(1) == b(1); }
inline bool parallel(const Vec2& a, const Vec2& b) { return cross(a, b).is_zero(); }

// Counterclockwise order of directions starting at the positive x-axis.
// Returns -1, 0, 1; both vectors must be nonzero.
int compare_direction(const Vec2& a, const Vec2& b);
// 0 for angles in [0, pi), 1 for [pi, 2 pi).
int direction_half(const Vec2& v);

// Points strictly on the left of the directed line through p with direction u.
inline int side(const Vec2& u, const Vec2& p, const Vec2& x) { return cross(u, (x - p).eval()).sign(); }

FieldElem squared_distance_to_segment(const Vec2& x, const Vec2& a, const Vec2& b);

// Structural order on vectors for ordered containers.
struct VecLess {
  bool operator()(const Vec2& a, const Vec2& b) const {
    if (int c = detail::structural_compare(a(0).value(), b(0).value())) return c < 0;
    return detail::structural_compare(a(1).value(), b(1).value()) < 0;
  }
};

// Real lexicographic order (x first, then y).
int compare_lex(const Vec2& a, const Vec2& b);

TowerPtr tower_of(const Vec2& v);
std::string to_string(const Vec2& v);

}  // namespace tsurf
