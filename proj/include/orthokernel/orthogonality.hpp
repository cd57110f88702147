#pragma once

// Orthogonality relations between flats of a Euclidean rational space:
//
//   perp_points      a,b ⊥ c,d for point pairs
//   perp_subspaces   every direction of X orthogonal to every direction of Y
//   perp_x           perp_subspaces plus a common point
//   perp_go          the two flats meet in M and the orthocomplement of M in
//                    one flat is orthogonal to the other (equivalently, the
//                    two reflections commute); holds under inclusion
//   perp_g           perp_go without inclusion either way
//   perp_m           perp_g with prescribed dimensions of X1, X2, X1 ∩ X2
//
// plus reflections, orthocomplements and the witness constructors used by the
// property harness.

#include <optional>
#include <string>
#include <utility>

#include "orthokernel/affine_subspace.hpp"
#include "orthokernel/random.hpp"

namespace orthokernel {

template <typename Scalar>
bool perp_points(const QuadraticSpace<Scalar>& space, const Vector<Scalar>& a,
                 const Vector<Scalar>& b, const Vector<Scalar>& c, const Vector<Scalar>& d) {
  return is_zero(bilinear_eval(space, b - a, d - c));
}

template <typename Scalar>
bool perp_subspaces(const AffineSubspace<Scalar>& x, const AffineSubspace<Scalar>& y) {
  require_same_space(x, y);
  if (x.dim() == 0 || y.dim() == 0) return true;
  return is_zero_matrix(cross_gram(x.space(), x.direction().basis(), y.direction().basis()));
}

template <typename Scalar>
bool perp_x(const AffineSubspace<Scalar>& x, const AffineSubspace<Scalar>& y) {
  return perp_subspaces(x, y) && meet(x, y).has_value();
}

/// The largest flat through q inside V that is ⊥× to X and joins X to V.
template <typename Scalar>
AffineSubspace<Scalar> orthocomplement_in(const AffineSubspace<Scalar>& x,
                                          const AffineSubspace<Scalar>& v,
                                          const Vector<Scalar>& q) {
  if (!is_subflat(x, v)) throw PreconditionError("orthocomplement_in: X is not contained in V");
  if (!x.contains(q)) throw PreconditionError("orthocomplement_in: q is not a point of X");
  return AffineSubspace<Scalar>(x.space_ptr(), q,
                                xi_complement(x.space(), x.direction(), v.direction()));
}

/// perp_go decided from a chosen point q of X1 ∩ X2 and a chosen side: the
/// orthocomplement of the meet inside X_side must be orthogonal to the other
/// flat. Any valid witness equals that orthocomplement, so no search is needed.
template <typename Scalar>
bool perp_go_via(const AffineSubspace<Scalar>& x1, const AffineSubspace<Scalar>& x2,
                 const Vector<Scalar>& q, int side) {
  if (side != 1 && side != 2) throw InputError("side must be 1 or 2");
  const auto m = meet(x1, x2);
  if (!m) return false;
  const auto& own = side == 1 ? x1 : x2;
  const auto& other = side == 1 ? x2 : x1;
  return perp_subspaces(orthocomplement_in(*m, own, q), other);
}

template <typename Scalar>
bool perp_go(const AffineSubspace<Scalar>& x1, const AffineSubspace<Scalar>& x2) {
  const auto m = meet(x1, x2);
  if (!m) return false;
  return perp_subspaces(orthocomplement_in(*m, x1, m->point()), x2);
}

template <typename Scalar>
bool perp_g(const AffineSubspace<Scalar>& x1, const AffineSubspace<Scalar>& x2) {
  return !is_subflat(x1, x2) && !is_subflat(x2, x1) && perp_go(x1, x2);
}

/// Dimensions (m, k1, k2) of the typed relation X1 ⊥^m_{k1,k2} X2.
struct TypedPerpParams {
  int m = 0;
  int k1 = 1;
  int k2 = 1;

  /// Neither flat may be inside the other, so m sits strictly below both.
  void validate() const {
    if (m < 0 || k1 <= m || k2 <= m)
      throw InputError("typed orthogonality needs 0 <= m < k1 and m < k2, got (m,k1,k2)=(" +
                       std::to_string(m) + "," + std::to_string(k1) + "," + std::to_string(k2) +
                       ")");
  }

  /// Some pair satisfies the relation in dimension n iff k1 + k2 - m <= n.
  bool satisfiable_in(Index n) const { return k1 + k2 - m <= n; }

  friend bool operator==(const TypedPerpParams&, const TypedPerpParams&) = default;
};

template <typename Scalar>
bool perp_m(const AffineSubspace<Scalar>& x1, const AffineSubspace<Scalar>& x2,
            const TypedPerpParams& params) {
  require_same_space(x1, x2);
  if (x1.dim() != params.k1 || x2.dim() != params.k2) return false;
  const auto m = meet(x1, x2);
  if (!m || m->dim() != params.m) return false;
  return perp_g(x1, x2);
}

/// Orthoadjacency of k-flats: perp_m with (k-1, k, k).
template <typename Scalar>
bool orthoadjacent(const AffineSubspace<Scalar>& x1, const AffineSubspace<Scalar>& x2, int k) {
  if (k < 1) throw InputError("orthoadjacency needs k >= 1");
  return perp_m(x1, x2, TypedPerpParams{k - 1, k, k});
}

/// p ↦ A p + t, an affine map of the quadratic space.
template <typename Scalar>
class AffineIsometry {
 public:
  using SpacePtr = std::shared_ptr<const QuadraticSpace<Scalar>>;

  AffineIsometry(SpacePtr space, Matrix<Scalar> matrix, Vector<Scalar> translation)
      : space_(std::move(space)), matrix_(std::move(matrix)), translation_(std::move(translation)) {
    const Index n = space_->dim();
    if (matrix_.rows() != n || matrix_.cols() != n || translation_.size() != n)
      throw InputError("isometry shape does not match the quadratic space");
  }

  static AffineIsometry identity(SpacePtr space) {
    const Index n = space->dim();
    return AffineIsometry(std::move(space), Matrix<Scalar>::Identity(n, n),
                          Vector<Scalar>::Zero(n));
  }

  const QuadraticSpace<Scalar>& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Matrix<Scalar>& matrix() const { return matrix_; }
  const Vector<Scalar>& translation() const { return translation_; }

  Vector<Scalar> operator()(const Vector<Scalar>& p) const { return matrix_ * p + translation_; }

  /// Aᵀ G A = G.
  bool preserves_form() const {
    return Matrix<Scalar>(matrix_.transpose() * space_->form() * matrix_) == space_->form();
  }

  friend bool operator==(const AffineIsometry& f, const AffineIsometry& g) {
    return f.matrix_ == g.matrix_ && f.translation_ == g.translation_;
  }

 private:
  SpacePtr space_;
  Matrix<Scalar> matrix_;
  Vector<Scalar> translation_;
};

/// f ∘ g: apply g, then f.
template <typename Scalar>
AffineIsometry<Scalar> isometry_compose(const AffineIsometry<Scalar>& f,
                                        const AffineIsometry<Scalar>& g) {
  if (f.space_ptr() != g.space_ptr() && !(f.space() == g.space()))
    throw InputError("isometries act on different quadratic spaces");
  return AffineIsometry<Scalar>(f.space_ptr(), f.matrix() * g.matrix(),
                                f.matrix() * g.translation() + f.translation());
}

template <typename Scalar>
bool isometry_equal(const AffineIsometry<Scalar>& f, const AffineIsometry<Scalar>& g) {
  if (f.space_ptr() != g.space_ptr() && !(f.space() == g.space()))
    throw InputError("isometries act on different quadratic spaces");
  return f == g;
}

/// Reflection σ_X: identity on the direction of X, minus identity on its form
/// complement, conjugated by a translation to a point of X.
template <typename Scalar>
AffineIsometry<Scalar> reflection(const AffineSubspace<Scalar>& x) {
  const Index n = x.ambient_dim();
  const auto& fixed = x.direction();
  const auto flipped = xi_complement(x.space(), fixed);
  // Columns of `frame` are a basis adapted to fixed ⊕ flipped.
  Matrix<Scalar> frame(n, n);
  frame << fixed.basis().transpose(), flipped.basis().transpose();
  Matrix<Scalar> image(n, n);
  image << fixed.basis().transpose(), -flipped.basis().transpose();
  Matrix<Scalar> a = image * inverse(frame);
  Vector<Scalar> t = x.point() - a * x.point();
  return AffineIsometry<Scalar>(x.space_ptr(), std::move(a), std::move(t));
}

/// Random X1 ⊥^m_{k1,k2} X2: a common m-flat M through a random point,
/// extended by mutually orthogonal blocks Z1 ⊥ M and Z2 ⊥ M + Z1. Returns
/// nothing exactly when k1 + k2 - m exceeds the dimension of the space.
template <typename Scalar>
std::optional<std::pair<AffineSubspace<Scalar>, AffineSubspace<Scalar>>> make_perp_pair(
    std::shared_ptr<const QuadraticSpace<Scalar>> space, const TypedPerpParams& params, Rng& rng,
    const DrawBounds& bounds = {}) {
  params.validate();
  const Index n = space->dim();
  if (!params.satisfiable_in(n)) return std::nullopt;

  const auto full = LinearSubspace<Scalar>::full(n);
  const auto shared = random_subspace_of(rng, full, params.m, bounds);
  const auto z1 = random_subspace_of(rng, xi_complement(*space, shared), params.k1 - params.m,
                                     bounds);
  const auto z2 = random_subspace_of(rng, xi_complement(*space, sum(shared, z1)),
                                     params.k2 - params.m, bounds);
  const Vector<Scalar> q = random_vector<Scalar>(rng, n, bounds);

  AffineSubspace<Scalar> x1(space, q, sum(shared, z1));
  AffineSubspace<Scalar> x2(space, q, sum(shared, z2));
  if (!perp_m(x1, x2, params)) throw InvariantError("make_perp_pair produced a non-orthogonal pair");
  return std::pair{std::move(x1), std::move(x2)};
}

/// For ∅ ≠ A ⊊ B ⊊ C, the unique B' with B ∩ B' = A, B ⊥g B' and B ⊔ B' = C.
template <typename Scalar>
AffineSubspace<Scalar> unique_complement(const AffineSubspace<Scalar>& a,
                                         const AffineSubspace<Scalar>& b,
                                         const AffineSubspace<Scalar>& c) {
  if (!is_subflat(a, b) || a.dim() >= b.dim() || !is_subflat(b, c) || b.dim() >= c.dim())
    throw PreconditionError("unique_complement needs A ⊊ B ⊊ C");
  return join(a, orthocomplement_in(b, c, a.point()));
}

}  // namespace orthokernel
