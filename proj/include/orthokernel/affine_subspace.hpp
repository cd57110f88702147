#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthokernel/exact_linalg.hpp"

namespace orthokernel {

/// A nonempty flat p + D of a quadratic space. The direction D is kept in
/// RREF and the base point has every pivot coordinate of D zeroed, so two
/// flats are equal iff their members are.
template <typename Scalar>
class AffineSubspace {
 public:
  using Space = QuadraticSpace<Scalar>;
  using SpacePtr = std::shared_ptr<const Space>;

  AffineSubspace(SpacePtr space, Vector<Scalar> point, LinearSubspace<Scalar> direction)
      : space_(std::move(space)), direction_(std::move(direction)) {
    if (!space_) throw InputError("flat without a quadratic space");
    if (point.size() != space_->dim())
      throw InputError("base point of length " + std::to_string(point.size()) +
                       " in a space of dimension " + std::to_string(space_->dim()));
    if (direction_.ambient_dim() != space_->dim())
      throw InputError("direction space does not match the quadratic space");
    point_ = direction_.reduce(std::move(point));
  }

  static AffineSubspace point_flat(SpacePtr space, Vector<Scalar> p) {
    const Index n = space ? space->dim() : 0;
    return AffineSubspace(std::move(space), std::move(p), LinearSubspace<Scalar>(n));
  }

  static AffineSubspace spanned(SpacePtr space, Vector<Scalar> p,
                                const std::vector<Vector<Scalar>>& directions) {
    const Index n = space ? space->dim() : 0;
    return AffineSubspace(std::move(space), std::move(p), rref_basis(directions, n));
  }

  static AffineSubspace whole(SpacePtr space) {
    const Index n = space ? space->dim() : 0;
    return AffineSubspace(std::move(space), Vector<Scalar>::Zero(n),
                          LinearSubspace<Scalar>::full(n));
  }

  const Space& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  Index ambient_dim() const { return space_->dim(); }
  const Vector<Scalar>& point() const { return point_; }
  const LinearSubspace<Scalar>& direction() const { return direction_; }
  Index dim() const { return direction_.rank(); }

  bool contains(const Vector<Scalar>& p) const {
    if (p.size() != ambient_dim()) throw InputError("point does not live in the ambient space");
    return direction_.contains(p - point_);
  }

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
    return (a.space_ == b.space_ || *a.space_ == *b.space_) && a.direction_ == b.direction_ &&
           a.point_ == b.point_;
  }

 private:
  SpacePtr space_;
  Vector<Scalar> point_;
  LinearSubspace<Scalar> direction_;
};

template <typename Scalar>
void require_same_space(const AffineSubspace<Scalar>& a, const AffineSubspace<Scalar>& b) {
  if (a.space_ptr() != b.space_ptr() && !(a.space() == b.space()))
    throw InputError("flats belong to different quadratic spaces");
}

template <typename Scalar>
bool contains(const AffineSubspace<Scalar>& x, const Vector<Scalar>& p) {
  return x.contains(p);
}

/// inner ⊆ outer.
template <typename Scalar>
bool is_subflat(const AffineSubspace<Scalar>& inner, const AffineSubspace<Scalar>& outer) {
  require_same_space(inner, outer);
  return inner.dim() <= outer.dim() && outer.contains(inner.point()) &&
         inner.direction().is_subspace_of(outer.direction());
}

/// X1 ∩ X2, or nothing when the flats are disjoint.
template <typename Scalar>
std::optional<AffineSubspace<Scalar>> meet(const AffineSubspace<Scalar>& x1,
                                           const AffineSubspace<Scalar>& x2) {
  require_same_space(x1, x2);
  if (is_subflat(x1, x2)) return x1;
  if (is_subflat(x2, x1)) return x2;
  // Each flat is cut out by N x = N p with N spanning the annihilator of its
  // direction; stacking both systems gives the intersection.
  const auto n1 = annihilator(x1.direction());
  const auto n2 = annihilator(x2.direction());
  Matrix<Scalar> a(n1.rank() + n2.rank(), x1.ambient_dim());
  a << n1.basis(), n2.basis();
  Vector<Scalar> b(a.rows());
  b << n1.basis() * x1.point(), n2.basis() * x2.point();
  auto solution = solve_affine(a, b);
  if (!solution) return std::nullopt;
  return AffineSubspace<Scalar>(x1.space_ptr(), std::move(solution->point),
                                std::move(solution->kernel));
}

/// X1 ⊔ X2, the least flat containing both.
template <typename Scalar>
AffineSubspace<Scalar> join(const AffineSubspace<Scalar>& x1, const AffineSubspace<Scalar>& x2) {
  require_same_space(x1, x2);
  const auto& d1 = x1.direction();
  const auto& d2 = x2.direction();
  Matrix<Scalar> rows(d1.rank() + d2.rank() + 1, x1.ambient_dim());
  rows << d1.basis(), d2.basis(), (x2.point() - x1.point()).transpose();
  return AffineSubspace<Scalar>(x1.space_ptr(), x1.point(),
                                LinearSubspace<Scalar>::row_span(std::move(rows)));
}

/// Equal direction spaces; flats of different dimension are never parallel.
template <typename Scalar>
bool parallel(const AffineSubspace<Scalar>& x1, const AffineSubspace<Scalar>& x2) {
  require_same_space(x1, x2);
  return x1.direction() == x2.direction();
}

template <typename Scalar>
AffineSubspace<Scalar> translate_through(const AffineSubspace<Scalar>& x, Vector<Scalar> q) {
  if (q.size() != x.ambient_dim()) throw InputError("point does not live in the ambient space");
  return AffineSubspace<Scalar>(x.space_ptr(), std::move(q), x.direction());
}

}  // namespace orthokernel
