#include <algorithm>

#include "orthokernel/harness.hpp"

namespace orthokernel::harness {

using nlohmann::json;

bool LabeledInstance::verified() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const auto& c) { return c.expected == c.actual; });
}

json LabeledInstance::to_json() const {
  json fl = json::object();
  for (const auto& [name, f] : flats) fl[name] = flat_to_json(f);
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}});
  return json{{"label", label}, {"flats", fl}, {"checks", cs}, {"verified", verified()}};
}

namespace {

RVector vec(std::initializer_list<int> entries) {
  RVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (int e : entries) v(i++) = e;
  return v;
}

}  // namespace

std::vector<LabeledInstance> emit_counterexamples() {
  const auto space = identity_form(3).space;
  const RVector origin = RVector::Zero(3);
  auto through_origin = [&](std::vector<RVector> dirs) {
    return Flat::spanned(space, origin, dirs);
  };
  const RVector e1 = vec({1, 0, 0}), e2 = vec({0, 1, 0}), e3 = vec({0, 0, 1});

  std::vector<LabeledInstance> out;
  {
    // Lines A, B and a plane C ⊃ B.
    const Flat a = through_origin({e2});
    const Flat b = through_origin({e1});
    const Flat c = through_origin({e1, RVector(e2 + e3)});
    out.push_back({"A perp_g B, B inside C, dim C = dim B + 1, yet not A perp_g C",
                   {{"A", a}, {"B", b}, {"C", c}},
                   {{"A perp_g B", true, perp_g(a, b)},
                    {"B subset C", true, is_subflat(b, c)},
                    {"dim C = dim B + 1", true, c.dim() == b.dim() + 1},
                    {"A perp_g C", false, perp_g(a, c)}}});
  }
  {
    // Planes A, B and a line C ⊂ B.
    const Flat a = through_origin({e1, e2});
    const Flat b = through_origin({e1, e3});
    const Flat c = through_origin({RVector(e1 + e3)});
    out.push_back({"A perp_g B, C inside B, A meets C, dim C = dim B - 1, yet not A perp_g C",
                   {{"A", a}, {"B", b}, {"C", c}},
                   {{"A perp_g B", true, perp_g(a, b)},
                    {"C subset B", true, is_subflat(c, b)},
                    {"A meets C", true, meet(a, c).has_value()},
                    {"dim C = dim B - 1", true, c.dim() == b.dim() - 1},
                    {"A perp_g C", false, perp_g(a, c)}}});
  }
  for (const auto& inst : out)
    if (!inst.verified()) throw InvariantError("counterexample \"" + inst.label + "\" failed");
  return out;
}

}  // namespace orthokernel::harness
