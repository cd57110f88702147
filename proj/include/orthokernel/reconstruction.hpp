#pragma once

// Recovering line orthogonality from a black-box typed orthogonality
// predicate X1 ⊥^m_{k1,k2} X2 (k1 <= k2).
//
// Stage 1 lowers the oracle to a predicate on (k1-m)-flats Y1 and k2-flats X2
// meeting in a point: Y1 ⊥× X2 holds iff the oracle accepts every k1-flat
// X1 ⊇ Y1 meeting X2 in an m-flat. WITNESS mode asks about one specific X1,
// the one built from the orthocomplement of Y1 inside Y1 ⊔ X2, for which
// acceptance already forces Y1 ⊥× X2. SAMPLED mode only uses incidence: it
// draws K admissible X1 at random and takes the conjunction, so a false
// answer is always right and a true answer is probabilistic.
//
// Stage 2 embeds two lines L1, L2 into flats X1 ⊇ L1, X2 ⊇ L2 of dimensions
// (k1-m, k2) that touch at the foot of the common perpendicular. The pair is
// ⊥× exactly when the lines are orthogonal, which stage 1 then decides.

#include <cstdint>
#include <functional>
#include <utility>

#include "orthokernel/orthogonality.hpp"

namespace orthokernel {

template <typename Scalar>
struct PerpOracle {
  using Flat = AffineSubspace<Scalar>;

  TypedPerpParams params;
  std::function<bool(const Flat&, const Flat&)> query;
};

/// The oracle backed by the kernel's own perp_m.
template <typename Scalar>
PerpOracle<Scalar> ground_truth_oracle(const TypedPerpParams& params) {
  params.validate();
  return {params, [params](const AffineSubspace<Scalar>& a, const AffineSubspace<Scalar>& b) {
            return perp_m(a, b, params);
          }};
}

/// Same relation with the argument order (and k1, k2) exchanged.
template <typename Scalar>
PerpOracle<Scalar> swapped(PerpOracle<Scalar> oracle) {
  const TypedPerpParams p{oracle.params.m, oracle.params.k2, oracle.params.k1};
  return {p, [q = std::move(oracle.query)](const AffineSubspace<Scalar>& a,
                                           const AffineSubspace<Scalar>& b) { return q(b, a); }};
}

struct ReconstructionMode {
  enum class Kind { witness, sampled };

  Kind kind = Kind::witness;
  int samples = 20;
  std::uint64_t seed = 0;
  DrawBounds bounds{};

  static ReconstructionMode witness() { return {}; }
  static ReconstructionMode sampled(int samples, std::uint64_t seed, DrawBounds bounds = {}) {
    if (samples < 1) throw InputError("sampled mode needs at least one sample");
    return {Kind::sampled, samples, seed, bounds};
  }
};

namespace detail {

template <typename Scalar>
Vector<Scalar> single_point(const AffineSubspace<Scalar>& y1, const AffineSubspace<Scalar>& x2,
                            const char* who) {
  const auto q = meet(y1, x2);
  if (!q || q->dim() != 0)
    throw PreconditionError(std::string(who) + ": flats must meet in exactly one point");
  return q->point();
}

template <typename Scalar>
void check_lemma1_dims(const AffineSubspace<Scalar>& y1, const AffineSubspace<Scalar>& x2, int m) {
  const Index k1 = y1.dim() + m;
  const Index k2 = x2.dim();
  if (m < 0 || y1.dim() < 1) throw PreconditionError("lemma1: need m >= 0 and dim(Y1) >= 1");
  if (k1 > k2) throw PreconditionError("lemma1: need dim(Y1) + m <= dim(X2)");
  if (k1 + k2 - m > y1.ambient_dim())
    throw PreconditionError("lemma1: need k1 + k2 - m <= dimension of the space");
}

template <typename Scalar>
AffineSubspace<Scalar> checked_extension(const AffineSubspace<Scalar>& y1,
                                         const AffineSubspace<Scalar>& x2,
                                         const AffineSubspace<Scalar>& t) {
  auto x1 = join(t, y1);
  const auto m = meet(x1, x2);
  if (!m || m->dim() != t.dim() || x1.dim() != y1.dim() + t.dim())
    throw InvariantError("lemma1 extension has the wrong dimensions");
  return x1;
}

/// (s, t) with q = p1 + s d1, p2 = P2 + t d2 and p2 - q form-orthogonal to
/// both directions. Defined for any pair of non-parallel lines.
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> perpendicular_feet(const AffineSubspace<Scalar>& l1,
                                                             const AffineSubspace<Scalar>& l2) {
  const auto& space = l1.space();
  const Vector<Scalar> d1 = l1.direction().basis().row(0).transpose();
  const Vector<Scalar> d2 = l2.direction().basis().row(0).transpose();
  const Vector<Scalar> delta = l2.point() - l1.point();
  const Scalar g11 = bilinear_eval(space, d1, d1);
  const Scalar g12 = bilinear_eval(space, d1, d2);
  const Scalar g22 = bilinear_eval(space, d2, d2);
  const Scalar r1 = bilinear_eval(space, delta, d1);
  const Scalar r2 = bilinear_eval(space, delta, d2);
  // g11 s - g12 t = r1,  g12 s - g22 t = r2.
  const Scalar det = g12 * g12 - g11 * g22;
  if (is_zero(det)) throw PreconditionError("perpendicular feet of parallel lines are not unique");
  const Scalar s = (g12 * r2 - g22 * r1) / det;
  const Scalar t = (g11 * r2 - g12 * r1) / det;
  return {l1.point() + s * d1, l2.point() + t * d2};
}

template <typename Scalar>
LinearSubspace<Scalar> leading_rows(const LinearSubspace<Scalar>& host, Index count) {
  if (count > host.rank()) throw InvariantError("not enough room for the requested directions");
  return LinearSubspace<Scalar>::row_span(host.basis().topRows(count));
}

/// Flats X1 ⊇ L1, X2 ⊇ L2 of dimensions (k1p, k2) through the feet of the
/// common perpendicular. For orthogonal lines the result is a ⊥× pair.
template <typename Scalar>
std::pair<AffineSubspace<Scalar>, AffineSubspace<Scalar>> lemma2_construction(
    const AffineSubspace<Scalar>& l1, const AffineSubspace<Scalar>& l2, int k1p, int k2) {
  const auto& space = l1.space();
  const Index n = space.dim();
  const auto [q, p2] = perpendicular_feet(l1, l2);
  const Vector<Scalar> w = p2 - q;

  const auto d1 = l1.direction();
  const auto lines = sum(d1, l2.direction());
  const auto base2 = sum(l2.direction(), rref_basis(std::vector<Vector<Scalar>>{w}, n));
  const auto room2 = xi_complement(space, sum(lines, base2));
  const auto dir2 = sum(base2, leading_rows(room2, k2 - base2.rank()));

  const auto room1 = xi_complement(space, sum(dir2, d1));
  const auto dir1 = sum(d1, leading_rows(room1, k1p - 1));

  return {AffineSubspace<Scalar>(l1.space_ptr(), q, dir1),
          AffineSubspace<Scalar>(l1.space_ptr(), p2, dir2)};
}

}  // namespace detail

/// The proof's witness: with V = Y1 ⊔ X2 and W the orthocomplement of Y1 in V
/// through q = Y1 ∩ X2, take an m-flat T ⊆ W ∩ X2 through q and return T ⊔ Y1.
template <typename Scalar>
AffineSubspace<Scalar> lemma1_witness(const AffineSubspace<Scalar>& y1,
                                      const AffineSubspace<Scalar>& x2, int m) {
  require_same_space(y1, x2);
  const auto q = detail::single_point(y1, x2, "lemma1_witness");
  detail::check_lemma1_dims(y1, x2, m);
  const auto v = join(y1, x2);
  const auto w = orthocomplement_in(y1, v, q);
  const auto room = meet(w, x2);
  if (!room || room->dim() < m)
    throw InvariantError("lemma1_witness: W ∩ X2 is smaller than m");
  const AffineSubspace<Scalar> t(y1.space_ptr(), q, detail::leading_rows(room->direction(), m));
  return detail::checked_extension(y1, x2, t);
}

/// A uniformly drawn admissible X1 ⊇ Y1: Y1 ⊔ T for a random m-flat T ⊆ X2
/// through the common point. Uses incidence only.
template <typename Scalar>
AffineSubspace<Scalar> lemma1_candidate(const AffineSubspace<Scalar>& y1,
                                        const AffineSubspace<Scalar>& x2, int m, Rng& rng,
                                        const DrawBounds& bounds = {}) {
  require_same_space(y1, x2);
  const auto q = detail::single_point(y1, x2, "lemma1_candidate");
  detail::check_lemma1_dims(y1, x2, m);
  const AffineSubspace<Scalar> t(y1.space_ptr(), q,
                                 random_subspace_of(rng, x2.direction(), m, bounds));
  return detail::checked_extension(y1, x2, t);
}

/// Y1 ⊥× X2 for a (k1-m)-flat Y1 and a k2-flat X2 meeting in a point,
/// computed from an oracle for ⊥^m_{k1,k2}.
template <typename Scalar>
bool decide_perp0(const AffineSubspace<Scalar>& y1, const AffineSubspace<Scalar>& x2,
                  const PerpOracle<Scalar>& oracle, const ReconstructionMode& mode) {
  require_same_space(y1, x2);
  const auto& p = oracle.params;
  if (y1.dim() != p.k1 - p.m || x2.dim() != p.k2)
    throw PreconditionError("decide_perp0: flat dimensions do not match the oracle");
  detail::single_point(y1, x2, "decide_perp0");
  if (mode.kind == ReconstructionMode::Kind::witness)
    return oracle.query(lemma1_witness(y1, x2, p.m), x2);

  Rng rng(mode.seed);
  for (int i = 0; i < mode.samples; ++i)
    if (!oracle.query(lemma1_candidate(y1, x2, p.m, rng, mode.bounds), x2)) return false;
  return true;
}

/// Points q ∈ L1, p2 ∈ L2 with p2 - q orthogonal to both lines.
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> common_perpendicular_feet(
    const AffineSubspace<Scalar>& l1, const AffineSubspace<Scalar>& l2) {
  require_same_space(l1, l2);
  if (l1.dim() != 1 || l2.dim() != 1)
    throw PreconditionError("common_perpendicular_feet expects two lines");
  if (!perp_subspaces(l1, l2))
    throw PreconditionError("common_perpendicular_feet expects orthogonal lines");
  return detail::perpendicular_feet(l1, l2);
}

/// X1 ∈ H_{k1p}, X2 ∈ H_{k2} with X1 ⊥× X2 and L_i ⊆ X_i, for orthogonal
/// lines L1, L2 (possibly skew).
template <typename Scalar>
std::pair<AffineSubspace<Scalar>, AffineSubspace<Scalar>> lemma2_witness(
    const AffineSubspace<Scalar>& l1, const AffineSubspace<Scalar>& l2, int k1p, int k2) {
  require_same_space(l1, l2);
  if (l1.dim() != 1 || l2.dim() != 1) throw PreconditionError("lemma2_witness expects two lines");
  if (k1p < 1 || k2 <= 1) throw PreconditionError("lemma2_witness needs 1 <= k1 and 1 < k2");
  if (!perp_subspaces(l1, l2)) throw PreconditionError("lemma2_witness expects orthogonal lines");
  if (k1p + k2 > l1.ambient_dim())
    throw GenerationError("lemma2_witness: no room for flats of dimensions " +
                          std::to_string(k1p) + " and " + std::to_string(k2));
  auto out = detail::lemma2_construction(l1, l2, k1p, k2);
  if (!is_subflat(l1, out.first) || !is_subflat(l2, out.second) || out.first.dim() != k1p ||
      out.second.dim() != k2 || !perp_x(out.first, out.second))
    throw InvariantError("lemma2_witness construction failed its postconditions");
  return out;
}

/// Line orthogonality L1 ⊥ L2 recovered from an oracle for ⊥^m_{k1,k2}.
template <typename Scalar>
bool reconstruct_line_perp(const AffineSubspace<Scalar>& l1, const AffineSubspace<Scalar>& l2,
                           const PerpOracle<Scalar>& oracle, const ReconstructionMode& mode) {
  require_same_space(l1, l2);
  const auto& p = oracle.params;
  p.validate();
  if (l1.dim() != 1 || l2.dim() != 1) throw InputError("reconstruct_line_perp expects two lines");
  if (!p.satisfiable_in(l1.ambient_dim()))
    throw InputError("reconstruct_line_perp needs k1 + k2 - m <= dimension of the space");
  if (p.k1 > p.k2) return reconstruct_line_perp(l1, l2, swapped(oracle), mode);

  // Parallel lines are never orthogonal; parallelism is an affine notion.
  if (parallel(l1, l2)) return false;

  const int k1p = p.k1 - p.m;
  if (k1p == 1 && p.k2 == 1)
    return decide_perp0(l1, translate_through(l2, l1.point()), oracle, mode);

  const auto [x1, x2] = detail::lemma2_construction(l1, l2, k1p, p.k2);
  const auto touch = meet(x1, x2);
  if (!touch || touch->dim() != 0) return false;
  return decide_perp0(x1, x2, oracle, mode);
}

}  // namespace orthokernel
