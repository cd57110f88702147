#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "orthokernel/io.hpp"

namespace orthokernel::test {

inline Rational q(const char* text) { return parse_rational(text); }

inline RVector vec(std::initializer_list<Rational> entries) {
  RVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const auto& e : entries) v(i++) = e;
  return v;
}

inline RVector unit(Index n, Index i) {
  RVector v = RVector::Zero(n);
  v(i) = 1;
  return v;
}

inline RMatrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  RMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

inline SpacePtr euclid(Index n) { return std::make_shared<const Space>(Space::euclidean(n)); }

inline SpacePtr form_space(RMatrix form) { return std::make_shared<const Space>(std::move(form)); }

inline Flat flat(const SpacePtr& s, RVector p, std::vector<RVector> dirs) {
  return Flat::spanned(s, std::move(p), dirs);
}

inline Flat through_origin(const SpacePtr& s, std::vector<RVector> dirs) {
  return flat(s, RVector::Zero(s->dim()), std::move(dirs));
}

inline LinearSubspace<Rational> span(Index n, std::vector<RVector> vs) {
  return rref_basis(vs, n);
}

}  // namespace orthokernel::test
