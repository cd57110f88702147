#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "orthokernel/harness.hpp"
#include "orthokernel/reconstruction.hpp"

namespace orthokernel::harness {

namespace {

using nlohmann::json;
/// Trials whose premises do not hold are vacuous; the report counts the
/// exercised ones separately so an always-vacuous property is visible.
struct Outcome {
  enum class Kind { vacuous, held, violated };
  Kind kind = Kind::held;
  json instance;
};

Outcome vacuous() { return {Outcome::Kind::vacuous, {}}; }
Outcome held() { return {Outcome::Kind::held, {}}; }
Outcome violated(json instance) { return {Outcome::Kind::violated, std::move(instance)}; }
using Sub = LinearSubspace<Rational>;

constexpr int kSamples = 20;

/// Random draws for one trial. Every draw goes through `rng`, which is
/// seeded from the trial seed alone.
class Trial {
 public:
  Trial(const GenConfig& cfg, const Relations& rel, std::uint64_t seed)
      : cfg(cfg), rel(rel), rng(seed), space(cfg.space()), n(cfg.dim()), bounds(cfg.bounds()) {}

  const GenConfig& cfg;
  const Relations& rel;
  Rng rng;
  SpacePtr space;
  Index n;
  DrawBounds bounds;

  Index uniform(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(rng);
  }
  bool chance(int numerator, int denominator) { return uniform(1, denominator) <= numerator; }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<Index>(items.size()) - 1))];
  }

  RVector point() { return random_vector<Rational>(rng, n, bounds); }
  RVector point_in(const Flat& x) { return x.point() + random_member(rng, x.direction(), bounds); }
  RVector nonzero_in(const Sub& host) {
    for (int i = 0; i < bounds.retries; ++i) {
      RVector v = random_member(rng, host, bounds);
      if (!is_zero_matrix(v)) return v;
    }
    throw GenerationError("could not draw a nonzero vector");
  }

  Sub sub(const Sub& host, Index k) { return random_subspace_of(rng, host, k, bounds); }
  Sub full() const { return Sub::full(n); }
  Sub complement(const Sub& d) const { return xi_complement(*space, d); }

  Flat flat(Index k) { return gen_subspace(cfg, k, rng); }
  Flat flat_through(const RVector& q, Index k) { return Flat(space, q, sub(full(), k)); }
  Flat sub_flat(const Flat& x, Index k) { return Flat(space, point_in(x), sub(x.direction(), k)); }
  Flat sub_flat_through(const Flat& x, const RVector& q, Index k) {
    return Flat(space, q, sub(x.direction(), k));
  }
  Flat super_flat(const Flat& x, Index k) {
    for (int i = 0; i < bounds.retries; ++i) {
      std::vector<RVector> extra;
      for (Index j = x.dim(); j < k; ++j) extra.push_back(point());
      Sub d = sum(x.direction(), rref_basis(extra, n));
      if (d.rank() == k) return Flat(space, x.point(), std::move(d));
    }
    throw GenerationError("could not extend a flat");
  }

  Flat line_through(const RVector& p, const RVector& d) { return Flat::spanned(space, p, {d}); }
  Flat line() { return line_through(point(), nonzero_in(full())); }

  std::vector<TypedPerpParams> params_list(bool ordered) const {
    std::vector<TypedPerpParams> out;
    for (int k1 = 1; k1 <= n; ++k1)
      for (int k2 = ordered ? k1 : 1; k2 <= n; ++k2)
        for (int m = 0; m < std::min(k1, k2); ++m)
          if (k1 + k2 - m <= n) out.push_back({m, k1, k2});
    return out;
  }

  std::optional<std::pair<Flat, Flat>> perp_pair() {
    const auto all = params_list(false);
    if (all.empty()) return std::nullopt;
    return make_perp_pair(space, pick(all), rng, bounds);
  }

  std::pair<Flat, Flat> meeting_pair() {
    const Index k1 = uniform(0, n);
    const Index k2 = uniform(0, n);
    const Index m = uniform(std::max<Index>(0, k1 + k2 - n), std::min(k1, k2));
    return gen_pair_with_meet_dim(cfg, k1, k2, m, rng);
  }

  std::pair<Flat, Flat> inclusion_pair() {
    Flat outer = flat(uniform(0, n));
    Flat inner = sub_flat(outer, uniform(0, outer.dim()));
    if (chance(1, 2)) return {inner, outer};
    return {outer, inner};
  }

  /// B with A ⊥g B through q ∈ A: B = q + (M ⊕ Z), M ⊊ dir A, 0 ≠ Z ⊥ dir A.
  /// Partners drawn with the same `pool` tend to share directions.
  struct PartnerPool {
    Sub meet_dirs;
    Sub perp_dirs;
  };

  std::optional<PartnerPool> pool_for(const Flat& a) {
    if (a.dim() < 1 || a.dim() >= n) return std::nullopt;
    const Sub perp = complement(a.direction());
    return PartnerPool{sub(a.direction(), uniform(0, a.dim() - 1)),
                       sub(perp, uniform(1, perp.rank()))};
  }

  Flat perp_partner(const Flat& a, const RVector& q, const PartnerPool& pool) {
    const Sub perp = complement(a.direction());
    Sub m = chance(1, 2) ? pool.meet_dirs : sub(a.direction(), uniform(0, a.dim() - 1));
    Sub z = chance(1, 2) ? sum(sub(pool.perp_dirs, uniform(1, pool.perp_dirs.rank())),
                               sub(perp, uniform(0, 1)))
                         : sub(perp, uniform(1, perp.rank()));
    return Flat(space, q, sum(m, z));
  }

  /// Some B with A ⊥g° B passing through q: an orthogonal partner, a
  /// sub-flat of A, or a super-flat of A.
  Flat go_partner(const Flat& a, const RVector& q, const std::optional<PartnerPool>& pool,
                  bool through_q) {
    const Index kind = uniform(0, 3);
    if (kind <= 1 && pool) return perp_partner(a, q, *pool);
    if (kind == 2) {
      const Index k = uniform(0, a.dim());
      return through_q ? sub_flat_through(a, q, k) : sub_flat(a, k);
    }
    return super_flat(a, uniform(a.dim(), n));
  }

  /// A pair that is ⊥g° (orthogonal or nested) most of the time.
  std::pair<Flat, Flat> go_pair() {
    switch (uniform(0, 3)) {
      case 0:
      case 1:
        if (auto p = perp_pair()) return *p;
        [[fallthrough]];
      case 2:
        return inclusion_pair();
      default:
        return meeting_pair();
    }
  }

  /// Orthogonal, nested, generic meeting and (optionally) generic pairs.
  std::pair<Flat, Flat> mixed_pair(bool allow_disjoint) {
    switch (uniform(0, allow_disjoint ? 4 : 3)) {
      case 0:
        if (auto p = perp_pair()) return *p;
        [[fallthrough]];
      case 1:
        return inclusion_pair();
      case 2:
      case 3:
        return meeting_pair();
      default:
        return {flat(uniform(0, n)), flat(uniform(0, n))};
    }
  }

  std::pair<Flat, Flat> perp_g_pair() {
    if (chance(1, 2)) {
      if (auto p = perp_pair()) return *p;
    }
    Flat a = flat(uniform(1, std::max<Index>(1, n - 1)));
    const auto pool = pool_for(a);
    if (!pool) return meeting_pair();
    const RVector q = point_in(a);
    return {a, perp_partner(a, q, *pool)};
  }
};

bool incl(const Flat& a, const Flat& b) { return is_subflat(a, b); }

Outcome fail_with(std::initializer_list<std::pair<const char*, const Flat*>> flats, json extra) {
  json out = std::move(extra);
  for (const auto& [name, f] : flats) out[name] = flat_to_json(*f);
  return violated(std::move(out));
}

Outcome fail(std::initializer_list<std::pair<const char*, const Flat*>> flats) {
  return fail_with(flats, json::object());
}

bool reflections_commute(const Flat& a, const Flat& b) {
  const auto ra = reflection(a);
  const auto rb = reflection(b);
  return isometry_compose(ra, rb) == isometry_compose(rb, ra);
}

bool ground_truth_line_perp(const Flat& l1, const Flat& l2) {
  const RVector d1 = l1.direction().basis().row(0).transpose();
  const RVector d2 = l2.direction().basis().row(0).transpose();
  return perp_points(l1.space(), l1.point(), RVector(l1.point() + d1), l2.point(),
                     RVector(l2.point() + d2));
}

// ---------------------------------------------------------------------------
// Orthogonality ⊥g and ⊥g°.

Outcome p_sym(Trial& t) {
  const auto [a, b] = t.mixed_pair(true);
  if (t.rel.perp_g(a, b) != t.rel.perp_g(b, a) || t.rel.perp_go(a, b) != t.rel.perp_go(b, a))
    return fail({{"A", &a}, {"B", &b}});
  return held();
}

Outcome p_meet_nonempty(Trial& t) {
  const auto [a, b] = t.mixed_pair(true);
  if (!t.rel.perp_g(a, b)) return vacuous();
  if (!meet(a, b)) return fail({{"A", &a}, {"B", &b}});
  return held();
}

Flat parallel_copy(Trial& t, const Flat& a, const Flat& b) {
  return translate_through(b, t.chance(3, 4) ? t.point_in(a) : t.point());
}

Outcome p_par(Trial& t) {
  const auto [a, b] = t.chance(3, 4) ? t.perp_g_pair() : t.mixed_pair(false);
  const Flat c = parallel_copy(t, a, b);
  if (!t.rel.perp_g(a, b) || !parallel(b, c) || !meet(a, c)) return vacuous();
  if (!t.rel.perp_g(a, c)) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

Outcome p_noinc(Trial& t) {
  const Flat d2 = t.flat(t.uniform(1, t.n));
  const Flat d1 = t.sub_flat(d2, t.uniform(1, d2.dim()));
  if (t.rel.perp_g(d1, d2) || t.rel.perp_g(d2, d1)) return fail({{"D1", &d1}, {"D2", &d2}});
  return held();
}

/// Checks that B' = unique_complement(A, B, C) satisfies B ∩ B' = A,
/// B rel B', B ⊔ B' = C, and that every sampled alternative doing so equals B'.
template <typename Rel>
Outcome uniqueness(Trial& t, Rel&& rel) {
  if (t.n < 2) return vacuous();
  const Flat c = t.flat(t.uniform(2, t.n));
  const Flat b = t.sub_flat(c, t.uniform(1, c.dim() - 1));
  const Flat a = t.sub_flat(b, t.uniform(0, b.dim() - 1));
  const Flat b1 = unique_complement(a, b, c);

  auto clauses = [&](const Flat& x) {
    const auto m = meet(b, x);
    return m && *m == a && rel(b, x) && join(b, x) == c;
  };
  if (!clauses(b1)) return fail_with({{"A", &a}, {"B", &b}, {"C", &c}, {"B'", &b1}},
                                     json{{"reason", "complement fails its clauses"}});

  const Flat comp = orthocomplement_in(b, c, a.point());
  for (int i = 0; i < 4; ++i) {
    Sub dirs;
    if (t.chance(1, 4)) {
      dirs = t.sub(c.direction(), comp.dim());
    } else {
      // Shear each complement direction by a member of A or of B.
      const Sub& shear = t.chance(1, 2) ? a.direction() : b.direction();
      RMatrix rows = comp.direction().basis();
      for (Index r = 0; r < rows.rows(); ++r)
        rows.row(r) += random_member(t.rng, shear, t.bounds).transpose();
      dirs = Sub::row_span(rows);
    }
    const Flat alt = join(a, Flat(t.space, a.point(), dirs));
    if (clauses(alt) && !(alt == b1))
      return fail({{"A", &a}, {"B", &b}, {"C", &c}, {"B'", &b1}, {"B''", &alt}});
  }
  return held();
}

Outcome p_uniq(Trial& t) { return uniqueness(t, t.rel.perp_g); }

Outcome p_pointmeet(Trial& t) {
  if (t.n < 2) return vacuous();
  const Index k1 = t.uniform(1, t.n - 1);
  const Index k2 = t.uniform(1, t.n - k1);
  auto pair = t.chance(1, 2)
                  ? make_perp_pair(t.space, TypedPerpParams{0, static_cast<int>(k1),
                                                            static_cast<int>(k2)},
                                   t.rng, t.bounds)
                  : std::optional(gen_pair_with_meet_dim(t.cfg, k1, k2, 0, t.rng));
  const auto& [a, b] = *pair;
  const auto m = meet(a, b);
  if (!m || m->dim() != 0) return vacuous();
  if (t.rel.perp_g(a, b) != perp_x(a, b)) return fail({{"X1", &a}, {"X2", &b}});
  return held();
}

Outcome p_perpxsup(Trial& t) {
  if (t.n < 2) return vacuous();
  const RVector q = t.point();
  const Flat y = t.flat_through(q, t.uniform(1, t.n - 1));
  const Sub perp = t.complement(y.direction());
  auto side = [&] {
    return t.chance(3, 4) ? Flat(t.space, q, t.sub(perp, t.uniform(0, perp.rank())))
                          : t.flat_through(q, t.uniform(0, t.n));
  };
  const Flat x1 = side();
  const Flat x2 = side();
  if (!perp_x(x1, y) || !perp_x(x2, y)) return vacuous();
  if (!perp_x(y, join(x1, x2))) return fail({{"X1", &x1}, {"X2", &x2}, {"Y", &y}});
  return held();
}

Outcome p_refl(Trial& t) {
  const auto [a, b] = t.chance(1, 2) ? t.go_pair() : t.mixed_pair(false);
  if (!meet(a, b)) return vacuous();
  const bool commute = reflections_commute(a, b);
  if (commute != t.rel.perp_go(a, b))
    return fail_with({{"X1", &a}, {"X2", &b}}, json{{"commute", commute}});
  return held();
}

Outcome p_iso(Trial& t) {
  const Flat outer = t.flat(t.uniform(0, t.n));
  const Flat inner = t.sub_flat(outer, t.uniform(0, outer.dim()));
  if (!t.rel.perp_go(inner, outer)) return fail({{"X1", &inner}, {"X2", &outer}});
  return held();
}

Outcome p_ggo(Trial& t) {
  const auto [a, b] = t.mixed_pair(true);
  if (t.rel.perp_go(a, b) != (t.rel.perp_g(a, b) || incl(a, b) || incl(b, a)))
    return fail({{"X1", &a}, {"X2", &b}});
  return held();
}

Outcome p_go_q_indep(Trial& t) {
  const auto [a, b] = t.chance(1, 2) ? t.go_pair() : t.mixed_pair(false);
  const auto m = meet(a, b);
  if (!m) return vacuous();
  const RVector q = t.point_in(*m);
  const bool base = perp_go(a, b);
  if (perp_go_via(a, b, q, 1) != base || perp_go_via(a, b, q, 2) != base ||
      perp_go_via(a, b, m->point(), 2) != base)
    return fail_with({{"X1", &a}, {"X2", &b}}, json{{"q", vector_to_json(q)}});
  return held();
}

/// A with two orthogonal partners B, C (sometimes an unrelated C).
struct Triple {
  Flat a, b, c;
};

std::optional<Triple> partner_triple(Trial& t, bool shared_point) {
  if (t.n < 2) return std::nullopt;
  const Flat a = t.flat(t.uniform(1, t.n - 1));
  const auto pool = t.pool_for(a);
  const RVector q = t.point_in(a);
  const Flat b = t.perp_partner(a, q, *pool);
  if (t.chance(1, 8)) return Triple{a, b, t.flat(t.uniform(0, t.n))};
  const RVector qc = shared_point || t.chance(1, 2) ? q : t.point_in(a);
  return Triple{a, b, t.perp_partner(a, qc, *pool)};
}

Outcome p_sqcup(Trial& t) {
  const auto tr = partner_triple(t, false);
  if (!tr) return vacuous();
  const auto& [a, b, c] = *tr;
  if (!t.rel.perp_g(a, b) || !t.rel.perp_g(a, c)) return vacuous();
  const Flat bc = join(b, c);
  if (!t.rel.perp_g(a, bc) && !incl(a, bc)) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

Outcome p_cosik2(Trial& t) {
  const auto [a, b] = t.perp_g_pair();
  const auto m = meet(a, b);
  if (!m || m->dim() >= b.dim()) return vacuous();
  const Flat c = join(*m, t.sub_flat_through(b, m->point(), t.uniform(1, b.dim() - m->dim())));
  const bool antecedent = t.rel.perp_g(a, b) && incl(*m, c) && !(*m == c) && incl(c, b);
  if (!antecedent) return vacuous();
  if (!t.rel.perp_g(a, c)) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

Outcome p_cosik(Trial& t) {
  const auto [a, b] = t.perp_g_pair();
  const auto m = meet(a, b);
  if (!m || m->dim() >= a.dim()) return vacuous();
  const Flat c =
      join(*m, t.sub_flat_through(a, m->point(), t.uniform(0, a.dim() - m->dim() - 1)));
  const bool antecedent = t.rel.perp_g(a, b) && incl(*m, c) && incl(c, a) && !(c == a);
  if (!antecedent) return vacuous();
  if (!t.rel.perp_g(a, join(b, c))) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

Outcome p_meetprop(Trial& t) {
  const auto tr = partner_triple(t, true);
  if (!tr) return vacuous();
  const auto& [a, b, c] = *tr;
  if (!t.rel.perp_g(a, b) || !t.rel.perp_g(a, c)) return vacuous();
  const auto bc = meet(b, c);
  if (!bc || !meet(a, *bc)) return vacuous();
  if (!t.rel.perp_g(a, *bc) && !incl(*bc, a)) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

// ---------------------------------------------------------------------------
// The ⊥g° versions.

Outcome p_axo_a(Trial& t) {
  const auto [a, b] = t.chance(1, 2) ? t.go_pair() : t.mixed_pair(true);
  if (t.rel.perp_go(a, b) != t.rel.perp_go(b, a)) return fail({{"A", &a}, {"B", &b}});
  return held();
}

Outcome p_axo_b(Trial& t) {
  const auto [a, b] = t.chance(1, 2) ? t.go_pair() : t.mixed_pair(true);
  if (!t.rel.perp_go(a, b)) return vacuous();
  if (!meet(a, b)) return fail({{"A", &a}, {"B", &b}});
  return held();
}

Outcome p_axo_c(Trial& t) {
  const auto [a, b] = t.chance(3, 4) ? t.go_pair() : t.mixed_pair(false);
  const Flat c = parallel_copy(t, a, b);
  if (!t.rel.perp_go(a, b) || !parallel(b, c) || !meet(a, c)) return vacuous();
  if (!t.rel.perp_go(a, c)) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

Outcome p_axo_d(Trial& t) { return uniqueness(t, t.rel.perp_go); }

/// A together with two ⊥g° partners of mixed kinds.
std::optional<Triple> go_triple(Trial& t, bool through_q) {
  const Flat a = t.flat(t.uniform(0, t.n));
  const auto pool = t.pool_for(a);
  const RVector q = t.point_in(a);
  const Flat b = t.go_partner(a, q, pool, through_q);
  const RVector qc = through_q || t.chance(1, 2) ? q : t.point_in(a);
  const Flat c = t.chance(1, 8) ? t.flat(t.uniform(0, t.n)) : t.go_partner(a, qc, pool, through_q);
  return Triple{a, b, c};
}

Outcome p_axo_e(Trial& t) {
  const auto [a, b, c] = *go_triple(t, false);
  if (!t.rel.perp_go(a, b) || !t.rel.perp_go(a, c)) return vacuous();
  if (!t.rel.perp_go(a, join(b, c))) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

Outcome p_axo_f(Trial& t) {
  const auto [a, b] = t.go_pair();
  const auto m = meet(a, b);
  if (!m) return vacuous();
  const Flat c = join(*m, t.sub_flat_through(b, m->point(), t.uniform(0, b.dim())));
  if (!t.rel.perp_go(a, b) || !incl(*m, c) || !incl(c, b)) return vacuous();
  if (!t.rel.perp_go(a, c)) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

Outcome p_axo_g(Trial& t) {
  const auto [a, b] = t.go_pair();
  const auto m = meet(a, b);
  if (!m) return vacuous();
  const Flat c = join(*m, t.sub_flat_through(a, m->point(), t.uniform(0, a.dim())));
  if (!t.rel.perp_go(a, b) || !incl(*m, c) || !incl(c, a)) return vacuous();
  if (!t.rel.perp_go(a, join(b, c))) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

Outcome p_axo_h(Trial& t) {
  const auto [a, b, c] = *go_triple(t, true);
  if (!t.rel.perp_go(a, b) || !t.rel.perp_go(a, c)) return vacuous();
  const auto bc = meet(b, c);
  if (!bc || !meet(a, *bc)) return vacuous();
  if (!t.rel.perp_go(a, *bc)) return fail({{"A", &a}, {"B", &b}, {"C", &c}});
  return held();
}

// ---------------------------------------------------------------------------
// Typed relation and reconstruction.

Outcome p_nontriv(Trial& t) {
  const int k2 = static_cast<int>(t.uniform(1, t.n + 1));
  const int k1 = static_cast<int>(t.uniform(1, k2));
  const int m = static_cast<int>(t.uniform(0, k1 - 1));
  const TypedPerpParams p{m, k1, k2};
  const auto pair = make_perp_pair(t.space, p, t.rng, t.bounds);
  const json params{{"m", m}, {"k1", k1}, {"k2", k2}};
  if (pair.has_value() != p.satisfiable_in(t.n))
    return violated(json{{"params", params}, {"generated", pair.has_value()}});
  if (pair && (!perp_m(pair->first, pair->second, p) ||
               join(pair->first, pair->second).dim() != k1 + k2 - m))
    return fail_with({{"X1", &pair->first}, {"X2", &pair->second}}, json{{"params", params}});
  return held();
}

json params_json(const TypedPerpParams& p) { return {{"m", p.m}, {"k1", p.k1}, {"k2", p.k2}}; }

Outcome p_lem1_fwd(Trial& t) {
  const auto all = t.params_list(true);
  if (all.empty()) return vacuous();
  const auto p = t.pick(all);
  const auto pair = make_perp_pair(t.space, TypedPerpParams{0, p.k1 - p.m, p.k2}, t.rng, t.bounds);
  const auto& [y1, x2] = *pair;
  const auto oracle = ground_truth_oracle<Rational>(p);
  if (!oracle.query(lemma1_witness(y1, x2, p.m), x2))
    return fail_with({{"Y1", &y1}, {"X2", &x2}}, json{{"params", params_json(p)}});
  for (int i = 0; i < kSamples; ++i) {
    const Flat x1 = lemma1_candidate(y1, x2, p.m, t.rng, t.bounds);
    if (!oracle.query(x1, x2))
      return fail_with({{"Y1", &y1}, {"X2", &x2}, {"X1", &x1}}, json{{"params", params_json(p)}});
  }
  return held();
}

Outcome p_lem1_bwd(Trial& t) {
  const auto all = t.params_list(true);
  if (all.empty()) return vacuous();
  const auto p = t.pick(all);
  std::pair<Flat, Flat> pair =
      *make_perp_pair(t.space, TypedPerpParams{0, p.k1 - p.m, p.k2}, t.rng, t.bounds);
  if (t.chance(1, 2)) {
    pair = gen_pair_with_meet_dim(t.cfg, p.k1 - p.m, p.k2, 0, t.rng);
  } else {
    // Tilt one direction of Y1 towards X2, keeping the meet a single point.
    RMatrix rows = pair.first.direction().basis();
    rows.row(0) += t.nonzero_in(pair.second.direction()).transpose();
    Flat tilted(t.space, pair.first.point(), Sub::row_span(rows));
    const auto m = meet(tilted, pair.second);
    if (!m || m->dim() != 0) return vacuous();
    pair.first = std::move(tilted);
  }
  const auto& [y1, x2] = pair;
  if (perp_x(y1, x2)) return vacuous();
  const auto oracle = ground_truth_oracle<Rational>(p);
  const Flat x1 = lemma1_witness(y1, x2, p.m);
  if (oracle.query(x1, x2))
    return fail_with({{"Y1", &y1}, {"X2", &x2}, {"X1", &x1}}, json{{"params", params_json(p)}});
  return held();
}

/// Two lines, orthogonal (and usually skew) half of the time.
std::pair<Flat, Flat> line_pair(Trial& t) {
  const Flat l1 = t.line();
  if (t.chance(1, 2)) return {l1, t.line()};
  const Sub perp = t.complement(l1.direction());
  return {l1, t.line_through(t.point(), t.nonzero_in(perp))};
}

Outcome p_lem2(Trial& t) {
  std::vector<std::pair<int, int>> dims;
  for (int k2 = 2; k2 < t.n; ++k2)
    for (int k1p = 1; k1p + k2 <= t.n; ++k1p) dims.emplace_back(k1p, k2);
  if (dims.empty()) return vacuous();
  const auto [k1p, k2] = t.pick(dims);
  const auto [l1, l2] = line_pair(t);
  const json extra{{"k1", k1p}, {"k2", k2}};
  if (perp_subspaces(l1, l2)) {
    const auto [x1, x2] = lemma2_witness(l1, l2, k1p, k2);
    if (!incl(l1, x1) || !incl(l2, x2) || !perp_x(x1, x2) || x1.dim() != k1p || x2.dim() != k2)
      return fail_with({{"L1", &l1}, {"L2", &l2}, {"X1", &x1}, {"X2", &x2}}, extra);
    return held();
  }
  for (int i = 0; i < kSamples; ++i) {
    const Flat x1 = t.super_flat(l1, k1p);
    const Flat x2 = t.super_flat(l2, k2);
    if (perp_x(x1, x2))
      return fail_with({{"L1", &l1}, {"L2", &l2}, {"X1", &x1}, {"X2", &x2}}, extra);
  }
  return held();
}

Outcome p_recon(Trial& t) {
  const auto all = t.params_list(false);
  if (all.empty()) return vacuous();
  const auto p = t.pick(all);
  const auto [l1, l2] = line_pair(t);
  const bool truth = ground_truth_line_perp(l1, l2);
  const bool got = reconstruct_line_perp(l1, l2, ground_truth_oracle<Rational>(p),
                                         ReconstructionMode::witness());
  if (got != truth)
    return fail_with({{"L1", &l1}, {"L2", &l2}},
                     json{{"params", params_json(p)}, {"truth", truth}, {"witness", got}});
  return held();
}

Outcome p_mode_consist(Trial& t) {
  const auto all = t.params_list(false);
  if (all.empty()) return vacuous();
  const auto p = t.pick(all);
  const auto [l1, l2] = line_pair(t);
  const auto oracle = ground_truth_oracle<Rational>(p);
  if (!reconstruct_line_perp(l1, l2, oracle, ReconstructionMode::witness())) return vacuous();
  const auto mode = ReconstructionMode::sampled(kSamples, t.rng(), t.bounds);
  if (!reconstruct_line_perp(l1, l2, oracle, mode))
    return fail_with({{"L1", &l1}, {"L2", &l2}}, json{{"params", params_json(p)}});
  return held();
}

using Body = Outcome (*)(Trial&);

const std::map<std::string, Body, std::less<>>& registry() {
  static const std::map<std::string, Body, std::less<>> bodies{
      {"P-AXO-A", p_axo_a},
      {"P-AXO-B", p_axo_b},
      {"P-AXO-C", p_axo_c},
      {"P-AXO-D", p_axo_d},
      {"P-AXO-E", p_axo_e},
      {"P-AXO-F", p_axo_f},
      {"P-AXO-G", p_axo_g},
      {"P-AXO-H", p_axo_h},
      {"P-COSIK", p_cosik},
      {"P-COSIK2", p_cosik2},
      {"P-GGO", p_ggo},
      {"P-GO-Q-INDEP", p_go_q_indep},
      {"P-ISO", p_iso},
      {"P-LEM1-BWD", p_lem1_bwd},
      {"P-LEM1-FWD", p_lem1_fwd},
      {"P-LEM2", p_lem2},
      {"P-MEET-NONEMPTY", p_meet_nonempty},
      {"P-MEETPROP", p_meetprop},
      {"P-MODE-CONSIST", p_mode_consist},
      {"P-NOINC", p_noinc},
      {"P-NONTRIV", p_nontriv},
      {"P-PAR", p_par},
      {"P-PERPXSUP", p_perpxsup},
      {"P-POINTMEET", p_pointmeet},
      {"P-RECON", p_recon},
      {"P-REFL", p_refl},
      {"P-SQCUP", p_sqcup},
      {"P-SYM", p_sym},
      {"P-UNIQ", p_uniq},
  };
  return bodies;
}

struct Tally {
  std::uint64_t exercised = 0;
  std::uint64_t violations = 0;
  std::optional<std::uint64_t> first_index;
  std::optional<json> first;

  void record(std::uint64_t index, json instance) {
    ++violations;
    if (!first_index || index < *first_index) {
      first_index = index;
      first = std::move(instance);
    }
  }
};

void run_range(Body body, std::string_view id, const GenConfig& cfg, const Relations& rel,
               std::uint64_t begin, std::uint64_t end, std::uint64_t stride, Tally& tally) {
  for (std::uint64_t i = begin; i < end; i += stride) {
    const std::uint64_t seed = trial_seed(cfg.seed, id, i);
    Outcome outcome = vacuous();
    try {
      Trial trial(cfg, rel, seed);
      outcome = body(trial);
    } catch (const std::exception& e) {
      outcome = violated(json{{"error", e.what()}});
    }
    if (outcome.kind == Outcome::Kind::vacuous) continue;
    ++tally.exercised;
    if (outcome.kind == Outcome::Kind::violated) {
      outcome.instance["trial"] = i;
      outcome.instance["seed"] = seed;
      tally.record(i, std::move(outcome.instance));
    }
  }
}

}  // namespace

Relations Relations::kernel() {
  return {[](const Flat& a, const Flat& b) { return orthokernel::perp_g(a, b); },
          [](const Flat& a, const Flat& b) { return orthokernel::perp_go(a, b); }};
}

const std::vector<std::string>& property_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, body] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

bool is_property_id(std::string_view id) { return registry().contains(id); }

PropertyReport run_property(std::string_view property_id, const GenConfig& cfg,
                            std::uint64_t trials, const Relations& relations, unsigned jobs) {
  cfg.validate();
  const auto it = registry().find(property_id);
  if (it == registry().end())
    throw InputError("unknown property id \"" + std::string(property_id) + "\"");
  const Body body = it->second;
  const auto start = std::chrono::steady_clock::now();

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(1, trials))));
  std::vector<Tally> tallies(jobs);
  if (jobs == 1) {
    run_range(body, property_id, cfg, relations, 0, trials, 1, tallies[0]);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned j = 0; j < jobs; ++j)
      workers.emplace_back([&, j] {
        run_range(body, property_id, cfg, relations, j, trials, jobs, tallies[j]);
      });
  }

  Tally total;
  for (auto& tally : tallies) {
    total.exercised += tally.exercised;
    total.violations += tally.violations;
    if (tally.first_index && (!total.first_index || *tally.first_index < *total.first_index)) {
      total.first_index = tally.first_index;
      total.first = std::move(tally.first);
    }
  }

  PropertyReport report;
  report.property_id = std::string(property_id);
  report.trials = trials;
  report.exercised = total.exercised;
  report.violations = total.violations;
  if (total.first) {
    (*total.first)["form"] = cfg.form.label;
    (*total.first)["dim"] = cfg.dim();
    report.first_counterexample = std::move(total.first);
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace orthokernel::harness
