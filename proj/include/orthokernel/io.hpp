#pragma once

// JSON wire formats. Rationals travel as strings "p/q" (q omitted when 1);
// vectors and matrices are arrays of such strings.
//
//   flat:  {"point": ["0", "1/2"], "basis": [["1", "0"]]}
//   space: {"dim": 2, "form": [["1", "0"], ["0", "1"]]}

#include <memory>

#include <nlohmann/json.hpp>

#include "orthokernel/affine_subspace.hpp"
#include "orthokernel/rational.hpp"

namespace orthokernel {

using Space = QuadraticSpace<Rational>;
using SpacePtr = std::shared_ptr<const Space>;
using Flat = AffineSubspace<Rational>;
using RVector = Vector<Rational>;
using RMatrix = Matrix<Rational>;

nlohmann::json vector_to_json(const RVector& v);
RVector vector_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const RMatrix& m);
/// Rows of equal length; `expected_cols` < 0 accepts any width.
RMatrix matrix_from_json(const nlohmann::json& j, Index expected_cols = -1);

nlohmann::json flat_to_json(const Flat& x);
/// Lengths are validated against `space`; the basis need not be reduced or
/// independent.
Flat flat_from_json(const nlohmann::json& j, const SpacePtr& space);

nlohmann::json space_to_json(const Space& space);
SpacePtr space_from_json(const nlohmann::json& j);

}  // namespace orthokernel
