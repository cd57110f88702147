#include "orthokernel/io.hpp"

#include <string>
#include <vector>

namespace orthokernel {

using nlohmann::json;

json vector_to_json(const RVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

RVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals");
  RVector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    const auto& e = j[static_cast<std::size_t>(i)];
    if (e.is_string())
      v(i) = parse_rational(e.get<std::string>());
    else if (e.is_number_integer())
      v(i) = Rational(e.get<long long>());
    else
      throw InputError("rationals must be strings like \"-3/7\"");
  }
  return v;
}

json matrix_to_json(const RMatrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

RMatrix matrix_from_json(const json& j, Index expected_cols) {
  if (!j.is_array()) throw InputError("expected an array of rows");
  std::vector<RVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  const Index cols = expected_cols >= 0 ? expected_cols
                     : rows.empty()     ? 0
                                        : rows.front().size();
  return stack_rows<Rational>(rows, cols);
}

json flat_to_json(const Flat& x) {
  return json{{"point", vector_to_json(x.point())},
              {"basis", matrix_to_json(x.direction().basis())}};
}

Flat flat_from_json(const json& j, const SpacePtr& space) {
  if (!j.is_object() || !j.contains("point"))
    throw InputError("flat must be an object with a \"point\" entry");
  auto point = vector_from_json(j.at("point"));
  if (point.size() != space->dim())
    throw InputError("flat point has length " + std::to_string(point.size()) +
                     " but the space has dimension " + std::to_string(space->dim()));
  const RMatrix basis = j.contains("basis") ? matrix_from_json(j.at("basis"), space->dim())
                                            : RMatrix(0, space->dim());
  return Flat(space, std::move(point), LinearSubspace<Rational>::row_span(basis));
}

json space_to_json(const Space& space) {
  return json{{"dim", space.dim()}, {"form", matrix_to_json(space.form())}};
}

SpacePtr space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("form"))
    throw InputError("space must be an object with a \"form\" entry");
  RMatrix form = matrix_from_json(j.at("form"));
  if (j.contains("dim") &&
      (!j.at("dim").is_number_integer() || j.at("dim").get<Index>() != form.rows()))
    throw InputError("space \"dim\" disagrees with the form size");
  return std::make_shared<const Space>(std::move(form));
}

}  // namespace orthokernel
