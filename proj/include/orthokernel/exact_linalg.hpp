#pragma once

// Exact linear algebra over an ordered field. Everything here is templated on
// the scalar so that any exact field type usable as an Eigen scalar works;
// the rest of the library instantiates it with orthokernel::Rational.

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orthokernel/errors.hpp"

namespace orthokernel {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
inline bool is_zero(const Scalar& x) {
  return x == Scalar(0);
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero<Scalar>(m(i, j))) return false;
  return true;
}

/// Brings `m` to reduced row-echelon form in place, choosing pivots only among
/// the first `pivot_cols` columns (all columns when negative). Returns the
/// pivot column of each nonzero row, in order.
template <typename Derived>
std::vector<Index> rref_in_place(Eigen::MatrixBase<Derived>& m, Index pivot_cols = -1) {
  using Scalar = typename Derived::Scalar;
  if (pivot_cols < 0 || pivot_cols > m.cols()) pivot_cols = m.cols();
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < pivot_cols && row < m.rows(); ++col) {
    Index found = row;
    while (found < m.rows() && is_zero<Scalar>(m(found, col))) ++found;
    if (found == m.rows()) continue;
    if (found != row) m.row(found).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero<Scalar>(m(i, col))) continue;
      const Scalar factor = m(i, col);
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// A linear subspace of Scalar^n, stored as its unique RREF basis. Two
/// subspaces are equal exactly when their bases are.
template <typename Scalar>
class LinearSubspace {
 public:
  LinearSubspace() = default;

  /// The zero subspace of Scalar^ambient_dim.
  explicit LinearSubspace(Index ambient_dim) : basis_(0, ambient_dim) {}

  /// Span of the rows of `rows`.
  static LinearSubspace row_span(Matrix<Scalar> rows) {
    LinearSubspace out;
    out.pivots_ = rref_in_place(rows);
    out.basis_ = rows.topRows(static_cast<Index>(out.pivots_.size()));
    return out;
  }

  /// The whole space Scalar^n.
  static LinearSubspace full(Index n) {
    LinearSubspace out;
    out.basis_ = Matrix<Scalar>::Identity(n, n);
    out.pivots_.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) out.pivots_[static_cast<std::size_t>(i)] = i;
    return out;
  }

  Index ambient_dim() const { return basis_.cols(); }
  Index rank() const { return basis_.rows(); }
  const Matrix<Scalar>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// Subtracts multiples of the basis rows so that every pivot coordinate of
  /// the result is zero. The result is zero iff `v` lies in the subspace.
  Vector<Scalar> reduce(Vector<Scalar> v) const {
    check_length(v);
    for (Index i = 0; i < rank(); ++i) {
      const Index p = pivots_[static_cast<std::size_t>(i)];
      if (is_zero<Scalar>(v(p))) continue;
      const Scalar factor = v(p);
      for (Index j = p; j < ambient_dim(); ++j) v(j) -= factor * basis_(i, j);
    }
    return v;
  }

  bool contains(const Vector<Scalar>& v) const { return is_zero_matrix(reduce(v)); }

  bool is_subspace_of(const LinearSubspace& other) const {
    if (other.ambient_dim() != ambient_dim())
      throw InputError("subspaces live in different ambient spaces");
    if (rank() > other.rank()) return false;
    for (Index i = 0; i < rank(); ++i)
      if (!other.contains(basis_.row(i).transpose())) return false;
    return true;
  }

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
    return a.ambient_dim() == b.ambient_dim() && a.rank() == b.rank() && a.basis_ == b.basis_;
  }

 private:
  void check_length(const Vector<Scalar>& v) const {
    if (v.size() != ambient_dim())
      throw InputError("vector of length " + std::to_string(v.size()) +
                       " used in ambient dimension " + std::to_string(ambient_dim()));
  }

  Matrix<Scalar> basis_;
  std::vector<Index> pivots_;
};

template <typename Scalar>
Matrix<Scalar> stack_rows(std::span<const Vector<Scalar>> vectors, Index ambient_dim) {
  Matrix<Scalar> rows(static_cast<Index>(vectors.size()), ambient_dim);
  for (Index i = 0; i < rows.rows(); ++i) {
    const auto& v = vectors[static_cast<std::size_t>(i)];
    if (v.size() != ambient_dim)
      throw InputError("vector of length " + std::to_string(v.size()) +
                       " in ambient dimension " + std::to_string(ambient_dim));
    rows.row(i) = v.transpose();
  }
  return rows;
}

template <typename Scalar>
LinearSubspace<Scalar> rref_basis(std::span<const Vector<Scalar>> vectors, Index ambient_dim) {
  return LinearSubspace<Scalar>::row_span(stack_rows(vectors, ambient_dim));
}

template <typename Scalar>
LinearSubspace<Scalar> rref_basis(const std::vector<Vector<Scalar>>& vectors, Index ambient_dim) {
  return rref_basis(std::span<const Vector<Scalar>>(vectors), ambient_dim);
}

namespace detail {

// Null space basis read off an RREF matrix whose pivot columns are known.
template <typename Scalar>
Matrix<Scalar> null_space_rows(const Matrix<Scalar>& r, const std::vector<Index>& pivots,
                               Index cols) {
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<Scalar> out(cols - static_cast<Index>(pivots.size()), cols);
  out.setZero();
  Index k = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    out(k, f) = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      out(k, pivots[i]) = -r(static_cast<Index>(i), f);
    ++k;
  }
  return out;
}

}  // namespace detail

/// {x : A x = 0}.
template <typename Scalar>
LinearSubspace<Scalar> kernel(Matrix<Scalar> a) {
  const Index cols = a.cols();
  const auto pivots = rref_in_place(a);
  return LinearSubspace<Scalar>::row_span(detail::null_space_rows(a, pivots, cols));
}

/// Vectors annihilated by every basis vector of `u` under the standard dot
/// product. The rows of its basis are linear equations cutting out `u`.
template <typename Scalar>
LinearSubspace<Scalar> annihilator(const LinearSubspace<Scalar>& u) {
  if (u.rank() == 0) return LinearSubspace<Scalar>::full(u.ambient_dim());
  return kernel<Scalar>(u.basis());
}

template <typename Scalar>
LinearSubspace<Scalar> sum(const LinearSubspace<Scalar>& u, const LinearSubspace<Scalar>& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw InputError("ambient dimension mismatch");
  Matrix<Scalar> rows(u.rank() + w.rank(), u.ambient_dim());
  rows << u.basis(), w.basis();
  return LinearSubspace<Scalar>::row_span(std::move(rows));
}

template <typename Scalar>
LinearSubspace<Scalar> intersection(const LinearSubspace<Scalar>& u,
                                    const LinearSubspace<Scalar>& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw InputError("ambient dimension mismatch");
  if (u.rank() == 0 || w.rank() == 0) return LinearSubspace<Scalar>(u.ambient_dim());
  if (u.is_subspace_of(w)) return u;
  if (w.is_subspace_of(u)) return w;
  const auto nu = annihilator(u);
  const auto nw = annihilator(w);
  Matrix<Scalar> equations(nu.rank() + nw.rank(), u.ambient_dim());
  equations << nu.basis(), nw.basis();
  return kernel<Scalar>(std::move(equations));
}

/// Solution set of A x = b: one particular solution plus the kernel of A.
template <typename Scalar>
struct AffineSolutionSet {
  Vector<Scalar> point;
  LinearSubspace<Scalar> kernel;
};

template <typename Scalar>
std::optional<AffineSolutionSet<Scalar>> solve_affine(const Matrix<Scalar>& a,
                                                      const Vector<Scalar>& b) {
  if (a.rows() != b.size())
    throw InputError("system has " + std::to_string(a.rows()) + " rows but right-hand side has " +
                     std::to_string(b.size()) + " entries");
  const Index cols = a.cols();
  Matrix<Scalar> aug(a.rows(), cols + 1);
  aug << a, b;
  const auto pivots = rref_in_place(aug, cols);
  for (Index i = static_cast<Index>(pivots.size()); i < aug.rows(); ++i)
    if (!is_zero<Scalar>(aug(i, cols))) return std::nullopt;

  Vector<Scalar> point = Vector<Scalar>::Zero(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    point(pivots[i]) = aug(static_cast<Index>(i), cols);
  Matrix<Scalar> reduced = aug.leftCols(cols);
  return AffineSolutionSet<Scalar>{
      std::move(point),
      LinearSubspace<Scalar>::row_span(detail::null_space_rows(reduced, pivots, cols))};
}

/// Gauss-Jordan inverse. Throws PreconditionError for singular input.
template <typename Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw InputError("inverse of a non-square matrix");
  const Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug << a, Matrix<Scalar>::Identity(n, n);
  const auto pivots = rref_in_place(aug, n);
  if (static_cast<Index>(pivots.size()) != n) throw PreconditionError("matrix is singular");
  return aug.rightCols(n);
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

/// Sylvester's criterion. Gaussian elimination without pivoting keeps the
/// k-th leading principal minor equal to the product of the first k pivots,
/// so all minors are positive iff every pivot is.
template <typename Scalar>
bool is_positive_definite(Matrix<Scalar> form) {
  if (!is_symmetric(form)) throw InputError("form is not a symmetric square matrix");
  const Index n = form.rows();
  for (Index k = 0; k < n; ++k) {
    if (!(form(k, k) > Scalar(0))) return false;
    for (Index i = k + 1; i < n; ++i) {
      if (is_zero<Scalar>(form(i, k))) continue;
      const Scalar factor = form(i, k) / form(k, k);
      for (Index j = k; j < n; ++j) form(i, j) -= factor * form(k, j);
    }
  }
  return true;
}

/// Scalar^n together with a symmetric positive-definite bilinear form.
template <typename Scalar>
class QuadraticSpace {
 public:
  explicit QuadraticSpace(Matrix<Scalar> form) : form_(std::move(form)) {
    if (form_.rows() == 0) throw InputError("quadratic space must have positive dimension");
    if (!is_positive_definite(form_)) throw InputError("form is not positive definite");
  }

  static QuadraticSpace euclidean(Index n) {
    return QuadraticSpace(Matrix<Scalar>::Identity(n, n));
  }

  Index dim() const { return form_.rows(); }
  const Matrix<Scalar>& form() const { return form_; }

  friend bool operator==(const QuadraticSpace& a, const QuadraticSpace& b) {
    return a.dim() == b.dim() && a.form_ == b.form_;
  }

 private:
  Matrix<Scalar> form_;
};

template <typename Scalar, typename DerivedU, typename DerivedV>
Scalar bilinear_eval(const QuadraticSpace<Scalar>& space, const Eigen::MatrixBase<DerivedU>& u,
                     const Eigen::MatrixBase<DerivedV>& v) {
  if (u.size() != space.dim() || v.size() != space.dim())
    throw InputError("vector length does not match the quadratic space");
  const Index n = space.dim();
  Scalar total(0);
  for (Index i = 0; i < n; ++i) {
    if (is_zero<Scalar>(u(i))) continue;
    Scalar row(0);
    for (Index j = 0; j < n; ++j)
      if (!is_zero<Scalar>(v(j)) && !is_zero<Scalar>(space.form()(i, j)))
        row += space.form()(i, j) * v(j);
    total += u(i) * row;
  }
  return total;
}

/// Matrix of form values between the rows of `a` and the rows of `b`.
template <typename Scalar>
Matrix<Scalar> cross_gram(const QuadraticSpace<Scalar>& space, const Matrix<Scalar>& a,
                          const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows(), b.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.rows(); ++j)
      out(i, j) = bilinear_eval(space, a.row(i), b.row(j));
  return out;
}

/// Vectors of `w` that are form-orthogonal to all of `d`. Requires d ⊆ w.
template <typename Scalar>
LinearSubspace<Scalar> xi_complement(const QuadraticSpace<Scalar>& space,
                                     const LinearSubspace<Scalar>& d,
                                     const LinearSubspace<Scalar>& w) {
  if (d.ambient_dim() != space.dim() || w.ambient_dim() != space.dim())
    throw InputError("subspace does not live in the quadratic space");
  if (!d.is_subspace_of(w)) throw PreconditionError("xi_complement: D is not contained in W");
  if (d.rank() == 0) return w;
  if (d.rank() == w.rank()) return LinearSubspace<Scalar>(space.dim());
  // w = c^T W  is orthogonal to D iff (D G W^T) c = 0.
  const auto coefficients = kernel<Scalar>(cross_gram(space, d.basis(), w.basis()));
  return LinearSubspace<Scalar>::row_span(coefficients.basis() * w.basis());
}

/// Form-orthogonal complement of `d` in the whole space.
template <typename Scalar>
LinearSubspace<Scalar> xi_complement(const QuadraticSpace<Scalar>& space,
                                     const LinearSubspace<Scalar>& d) {
  return xi_complement(space, d, LinearSubspace<Scalar>::full(space.dim()));
}

}  // namespace orthokernel
