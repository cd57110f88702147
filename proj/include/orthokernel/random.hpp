#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "orthokernel/exact_linalg.hpp"

namespace orthokernel {

using Rng = std::mt19937_64;

/// Random scalars are p/q with |p| <= numerator and 1 <= q <= denominator.
struct DrawBounds {
  std::int64_t numerator = 3;
  std::int64_t denominator = 2;
  int retries = 64;
};

template <typename Scalar>
Scalar random_scalar(Rng& rng, const DrawBounds& bounds) {
  std::uniform_int_distribution<std::int64_t> num(-bounds.numerator, bounds.numerator);
  std::uniform_int_distribution<std::int64_t> den(1, bounds.denominator);
  const auto p = num(rng);
  const auto q = den(rng);
  return Scalar(p) / Scalar(q);
}

template <typename Scalar>
Vector<Scalar> random_vector(Rng& rng, Index n, const DrawBounds& bounds) {
  Vector<Scalar> v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_scalar<Scalar>(rng, bounds);
  return v;
}

/// A uniformly drawn member of `host` (random combination of its basis).
template <typename Scalar>
Vector<Scalar> random_member(Rng& rng, const LinearSubspace<Scalar>& host,
                             const DrawBounds& bounds) {
  Vector<Scalar> v = Vector<Scalar>::Zero(host.ambient_dim());
  for (Index i = 0; i < host.rank(); ++i)
    v += random_scalar<Scalar>(rng, bounds) * host.basis().row(i).transpose();
  return v;
}

/// A random k-dimensional subspace of `host`. Draws that come out rank
/// deficient are redrawn up to bounds.retries times.
template <typename Scalar>
LinearSubspace<Scalar> random_subspace_of(Rng& rng, const LinearSubspace<Scalar>& host, Index k,
                                          const DrawBounds& bounds) {
  if (k < 0 || k > host.rank())
    throw InputError("cannot draw a " + std::to_string(k) + "-dimensional subspace of a " +
                     std::to_string(host.rank()) + "-dimensional one");
  if (k == host.rank()) return host;
  if (k == 0) return LinearSubspace<Scalar>(host.ambient_dim());
  for (int attempt = 0; attempt < bounds.retries; ++attempt) {
    std::vector<Vector<Scalar>> vs;
    vs.reserve(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) vs.push_back(random_member(rng, host, bounds));
    auto out = rref_basis(vs, host.ambient_dim());
    if (out.rank() == k) return out;
  }
  throw GenerationError("random subspace draw stayed rank deficient after " +
                        std::to_string(bounds.retries) + " attempts");
}

}  // namespace orthokernel
