#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include "tsurf/exactnum/field.hpp"

namespace Eigen {

template <>
struct NumTraits<tsurf::FieldElem> : GenericNumTraits<tsurf::FieldElem> {
  using Real = tsurf::FieldElem;
  using NonInteger = tsurf::FieldElem;
  using Nested = tsurf::FieldElem;
  using Literal = tsurf::FieldElem;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace tsurf {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const FieldElem& x) { return x.is_zero(); }

// In-place reduced row echelon form over an exact field; returns the pivot
// columns (one per nonzero row).
template <class Scalar>
std::vector<Eigen::Index> row_reduce(DenseMatrix<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) = m(row, j) * inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Scalar f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Scalar>
Eigen::Index rank(DenseMatrix<Scalar> m) {
  return static_cast<Eigen::Index>(row_reduce(m).size());
}

// Exact solution of a x = b, if one exists (any solution when not unique).
template <class Scalar>
std::optional<DenseVector<Scalar>> solve(const DenseMatrix<Scalar>& a, const DenseVector<Scalar>& b) {
  DenseMatrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  DenseVector<Scalar> x = DenseVector<Scalar>::Constant(a.cols(), Scalar(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = aug(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

// Incrementally built Q-subspace of Q^n with exact membership.
class QSpan {
 public:
  QSpan() = default;
  explicit QSpan(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  // Adds v; returns false when v was already in the span.
  bool add(std::vector<Rational> v);
  bool contains(std::vector<Rational> v) const;

 private:
  void reduce(std::vector<Rational>& v) const;

  std::size_t dim_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace tsurf
