#pragma once

// Seeded random instances, the property suite and its JSON report.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "orthokernel/io.hpp"
#include "orthokernel/orthogonality.hpp"

namespace orthokernel::harness {

/// A named positive-definite form.
struct FormChoice {
  std::string label;
  SpacePtr space;
};

FormChoice identity_form(Index n);
/// diag(1, 2, ..., n).
FormChoice diagonal_form(Index n);
FormChoice diagonal_form(const std::vector<Rational>& entries);
/// 2 on the diagonal, 1 on the first off-diagonals.
FormChoice tridiagonal_form(Index n);
FormChoice explicit_form(std::string label, RMatrix form);

/// identity, diag(1..n) and the tridiagonal form.
std::vector<FormChoice> default_forms(Index n);

struct GenConfig {
  FormChoice form;
  std::int64_t numerator_bound = 3;
  std::int64_t denominator_bound = 2;
  std::uint64_t seed = 0;
  int retries = 64;

  Index dim() const { return form.space->dim(); }
  const SpacePtr& space() const { return form.space; }
  DrawBounds bounds() const { return {numerator_bound, denominator_bound, retries}; }
  /// Throws InputError for bounds below 1.
  void validate() const;
};

/// Seed of one trial, a function of (master seed, property id, trial index)
/// only, so results do not depend on execution order.
std::uint64_t trial_seed(std::uint64_t master, std::string_view property_id, std::uint64_t index);

Flat gen_subspace(const GenConfig& cfg, Index k, Rng& rng);

/// dim X1 = k1, dim X2 = k2, dim(X1 ∩ X2) = m. Requires
/// max(0, k1 + k2 - n) <= m <= min(k1, k2).
std::pair<Flat, Flat> gen_pair_with_meet_dim(const GenConfig& cfg, Index k1, Index k2, Index m,
                                             Rng& rng);

/// A random line pair; with `orthogonal` the second direction is drawn from
/// the form complement of the first and the lines are usually skew.
std::pair<Flat, Flat> gen_line_pair(const GenConfig& cfg, bool orthogonal, Rng& rng);

/// Relations the property bodies evaluate. Swappable so the harness can be
/// checked against a deliberately broken kernel.
struct Relations {
  std::function<bool(const Flat&, const Flat&)> perp_g;
  std::function<bool(const Flat&, const Flat&)> perp_go;

  static Relations kernel();
};

struct PropertyReport {
  std::string property_id;
  std::uint64_t trials = 0;
  /// Trials whose premises held, i.e. that could have been violations.
  std::uint64_t exercised = 0;
  std::uint64_t violations = 0;
  std::optional<nlohmann::json> first_counterexample;
  std::int64_t elapsed_ms = 0;
};

/// Every property id, sorted.
const std::vector<std::string>& property_ids();
bool is_property_id(std::string_view id);

/// Runs `trials` seeded instances. The first violation (lowest trial index)
/// is kept verbatim. `jobs` > 1 splits trials across threads without
/// changing the result.
PropertyReport run_property(std::string_view property_id, const GenConfig& cfg,
                            std::uint64_t trials, const Relations& relations = Relations::kernel(),
                            unsigned jobs = 1);

/// Sums reports of the same property (e.g. one per form); keeps the first
/// counterexample in argument order.
PropertyReport merge_reports(const std::vector<PropertyReport>& parts);

nlohmann::json report_to_json(const PropertyReport& report, bool with_timing);

/// {"schema": 1, "config": ..., "reports": [...]}, reports sorted by id.
nlohmann::json suite_to_json(const nlohmann::json& config, std::vector<PropertyReport> reports,
                             bool with_timing);

/// Outcome of running the line-orthogonality reconstruction against the
/// ground-truth oracle on `pairs` line pairs, the first half constructed
/// orthogonal and the rest random.
struct ReconstructionSummary {
  TypedPerpParams params;
  std::uint64_t pairs = 0;
  std::uint64_t orthogonal = 0;
  std::uint64_t witness_agreements = 0;
  /// SAMPLED said false where WITNESS said true.
  std::uint64_t sampled_contradictions = 0;
  std::optional<nlohmann::json> first_failure;

  bool passed() const { return witness_agreements == pairs && sampled_contradictions == 0; }
  nlohmann::json to_json() const;
};

/// `samples` = 0 skips SAMPLED mode.
ReconstructionSummary run_reconstruction(const GenConfig& cfg, const TypedPerpParams& params,
                                         std::uint64_t pairs, int samples);

/// Lemma 1 checked on `instances` seeded instances: for Y1 ⊥× X2 the proof
/// witness and `samples` random admissible extensions all satisfy the
/// oracle; for a pair meeting in a point that is not ⊥× the witness fails it.
struct Lemma1Summary {
  TypedPerpParams params;
  std::uint64_t instances = 0;
  std::uint64_t forward_violations = 0;
  std::uint64_t backward_exercised = 0;
  std::uint64_t backward_violations = 0;
  std::optional<nlohmann::json> first_failure;

  bool passed() const { return forward_violations == 0 && backward_violations == 0; }
  nlohmann::json to_json() const;
};

Lemma1Summary run_lemma1(const GenConfig& cfg, const TypedPerpParams& params,
                         std::uint64_t instances, int samples);

struct CounterexampleCheck {
  std::string name;
  bool expected;
  bool actual;
};

struct LabeledInstance {
  std::string label;
  std::vector<std::pair<std::string, Flat>> flats;
  std::vector<CounterexampleCheck> checks;

  bool verified() const;
  nlohmann::json to_json() const;
};

/// The two non-transitivity configurations in Q^3 with the identity form.
/// Throws InvariantError if the kernel disagrees with any listed value.
std::vector<LabeledInstance> emit_counterexamples();

}  // namespace orthokernel::harness
