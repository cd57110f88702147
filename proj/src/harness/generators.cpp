#include <string>
#include <vector>

#include "orthokernel/harness.hpp"

namespace orthokernel::harness {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::string_view property_id, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ fnv1a(property_id)) + index);
}

FormChoice identity_form(Index n) {
  return {"identity", std::make_shared<const Space>(RMatrix::Identity(n, n))};
}

FormChoice diagonal_form(Index n) {
  std::vector<Rational> entries;
  for (Index i = 1; i <= n; ++i) entries.emplace_back(i);
  auto out = diagonal_form(entries);
  out.label = "diagonal";
  return out;
}

FormChoice diagonal_form(const std::vector<Rational>& entries) {
  const auto n = static_cast<Index>(entries.size());
  RMatrix form = RMatrix::Zero(n, n);
  std::string label = "diag(";
  for (Index i = 0; i < n; ++i) {
    form(i, i) = entries[static_cast<std::size_t>(i)];
    label += (i ? "," : "") + to_string(form(i, i));
  }
  return {label + ")", std::make_shared<const Space>(std::move(form))};
}

FormChoice tridiagonal_form(Index n) {
  RMatrix form = RMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    form(i, i) = 2;
    if (i + 1 < n) form(i, i + 1) = form(i + 1, i) = 1;
  }
  return {"tridiagonal", std::make_shared<const Space>(std::move(form))};
}

FormChoice explicit_form(std::string label, RMatrix form) {
  return {std::move(label), std::make_shared<const Space>(std::move(form))};
}

std::vector<FormChoice> default_forms(Index n) {
  return {identity_form(n), diagonal_form(n), tridiagonal_form(n)};
}

void GenConfig::validate() const {
  if (!form.space) throw InputError("generator configuration has no form");
  if (numerator_bound < 1 || denominator_bound < 1)
    throw InputError("numerator and denominator bounds must be at least 1");
  if (retries < 1) throw InputError("retry budget must be at least 1");
}

Flat gen_subspace(const GenConfig& cfg, Index k, Rng& rng) {
  const Index n = cfg.dim();
  if (k < 0 || k > n)
    throw InputError("cannot draw a " + std::to_string(k) + "-flat in dimension " +
                     std::to_string(n));
  const auto bounds = cfg.bounds();
  auto direction = random_subspace_of(rng, LinearSubspace<Rational>::full(n), k, bounds);
  return Flat(cfg.space(), random_vector<Rational>(rng, n, bounds), std::move(direction));
}

std::pair<Flat, Flat> gen_pair_with_meet_dim(const GenConfig& cfg, Index k1, Index k2, Index m,
                                             Rng& rng) {
  const Index n = cfg.dim();
  if (k1 < 0 || k2 < 0 || k1 > n || k2 > n || m < std::max<Index>(0, k1 + k2 - n) ||
      m > std::min(k1, k2))
    throw InputError("no pair of flats with dimensions (" + std::to_string(k1) + "," +
                     std::to_string(k2) + ") meets in dimension " + std::to_string(m) +
                     " inside dimension " + std::to_string(n));
  const auto bounds = cfg.bounds();
  const auto full = LinearSubspace<Rational>::full(n);
  for (int attempt = 0; attempt < cfg.retries; ++attempt) {
    const auto shared = random_subspace_of(rng, full, m, bounds);
    std::vector<RVector> extra1, extra2;
    for (Index i = m; i < k1; ++i) extra1.push_back(random_vector<Rational>(rng, n, bounds));
    for (Index i = m; i < k2; ++i) extra2.push_back(random_vector<Rational>(rng, n, bounds));
    const auto d1 = sum(shared, rref_basis(extra1, n));
    const auto d2 = sum(shared, rref_basis(extra2, n));
    if (d1.rank() != k1 || d2.rank() != k2 || sum(d1, d2).rank() != k1 + k2 - m) continue;
    const RVector q = random_vector<Rational>(rng, n, bounds);
    return {Flat(cfg.space(), q, d1), Flat(cfg.space(), q, d2)};
  }
  throw GenerationError("gen_pair_with_meet_dim: degenerate draws exhausted the retry budget");
}

}  // namespace orthokernel::harness
