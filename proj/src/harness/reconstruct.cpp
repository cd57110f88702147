#include "orthokernel/harness.hpp"
#include "orthokernel/reconstruction.hpp"

namespace orthokernel::harness {

using nlohmann::json;

namespace {

RVector nonzero_member(Rng& rng, const LinearSubspace<Rational>& host, const DrawBounds& bounds) {
  for (int i = 0; i < bounds.retries; ++i) {
    RVector v = random_member(rng, host, bounds);
    if (!is_zero_matrix(v)) return v;
  }
  throw GenerationError("could not draw a nonzero direction");
}

}  // namespace

std::pair<Flat, Flat> gen_line_pair(const GenConfig& cfg, bool orthogonal, Rng& rng) {
  const auto bounds = cfg.bounds();
  const Index n = cfg.dim();
  const auto full = LinearSubspace<Rational>::full(n);
  Flat l1 = Flat::spanned(cfg.space(), random_vector<Rational>(rng, n, bounds),
                          {nonzero_member(rng, full, bounds)});
  const auto host = orthogonal ? xi_complement(*cfg.space(), l1.direction()) : full;
  if (host.rank() == 0) throw InputError("no room for an orthogonal line in dimension 1");
  Flat l2 = Flat::spanned(cfg.space(), random_vector<Rational>(rng, n, bounds),
                          {nonzero_member(rng, host, bounds)});
  return {std::move(l1), std::move(l2)};
}

json ReconstructionSummary::to_json() const {
  return json{{"params", {{"m", params.m}, {"k1", params.k1}, {"k2", params.k2}}},
              {"pairs", pairs},
              {"orthogonal", orthogonal},
              {"witness_agreements", witness_agreements},
              {"sampled_contradictions", sampled_contradictions},
              {"first_failure", first_failure.value_or(json(nullptr))},
              {"passed", passed()}};
}

ReconstructionSummary run_reconstruction(const GenConfig& cfg, const TypedPerpParams& params,
                                         std::uint64_t pairs, int samples) {
  cfg.validate();
  params.validate();
  if (!params.satisfiable_in(cfg.dim()))
    throw InputError("k1 + k2 - m exceeds the dimension of the space");
  const auto oracle = ground_truth_oracle<Rational>(params);

  ReconstructionSummary out;
  out.params = params;
  out.pairs = pairs;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const std::uint64_t seed = trial_seed(cfg.seed, "reconstruct", i);
    Rng rng(seed);
    const auto [l1, l2] = gen_line_pair(cfg, i < pairs / 2, rng);
    const RVector d1 = l1.direction().basis().row(0).transpose();
    const RVector d2 = l2.direction().basis().row(0).transpose();
    const bool truth = perp_points(l1.space(), l1.point(), RVector(l1.point() + d1), l2.point(),
                                   RVector(l2.point() + d2));
    out.orthogonal += truth;
    const bool witness =
        reconstruct_line_perp(l1, l2, oracle, ReconstructionMode::witness());
    const bool agree = witness == truth;
    out.witness_agreements += agree;
    bool contradiction = false;
    if (samples > 0 && witness) {
      const auto mode = ReconstructionMode::sampled(samples, rng(), cfg.bounds());
      contradiction = !reconstruct_line_perp(l1, l2, oracle, mode);
      out.sampled_contradictions += contradiction;
    }
    if ((!agree || contradiction) && !out.first_failure)
      out.first_failure = json{{"pair", i},
                               {"seed", seed},
                               {"L1", flat_to_json(l1)},
                               {"L2", flat_to_json(l2)},
                               {"truth", truth},
                               {"witness", witness}};
  }
  return out;
}

json Lemma1Summary::to_json() const {
  return json{{"params", {{"m", params.m}, {"k1", params.k1}, {"k2", params.k2}}},
              {"instances", instances},
              {"forward_violations", forward_violations},
              {"backward_exercised", backward_exercised},
              {"backward_violations", backward_violations},
              {"first_failure", first_failure.value_or(json(nullptr))},
              {"passed", passed()}};
}

Lemma1Summary run_lemma1(const GenConfig& cfg, const TypedPerpParams& params,
                         std::uint64_t instances, int samples) {
  cfg.validate();
  params.validate();
  if (params.k1 > params.k2) throw InputError("lemma 1 instances need k1 <= k2");
  if (!params.satisfiable_in(cfg.dim()))
    throw InputError("k1 + k2 - m exceeds the dimension of the space");
  const auto oracle = ground_truth_oracle<Rational>(params);
  const TypedPerpParams reduced{0, params.k1 - params.m, params.k2};

  Lemma1Summary out;
  out.params = params;
  out.instances = instances;
  auto note = [&](const char* what, std::uint64_t i, std::uint64_t seed, const Flat& y1,
                  const Flat& x2) {
    if (!out.first_failure)
      out.first_failure = json{{"check", what},
                               {"instance", i},
                               {"seed", seed},
                               {"Y1", flat_to_json(y1)},
                               {"X2", flat_to_json(x2)}};
  };
  for (std::uint64_t i = 0; i < instances; ++i) {
    const std::uint64_t seed = trial_seed(cfg.seed, "lemma1", i);
    Rng rng(seed);

    // Forward: Y1 ⊥× X2, so every admissible extension must satisfy the oracle.
    const auto [y1, x2] = *make_perp_pair(cfg.space(), reduced, rng, cfg.bounds());
    bool forward_ok = oracle.query(lemma1_witness(y1, x2, params.m), x2);
    for (int s = 0; forward_ok && s < samples; ++s)
      forward_ok = oracle.query(lemma1_candidate(y1, x2, params.m, rng, cfg.bounds()), x2);
    if (!forward_ok) {
      ++out.forward_violations;
      note("forward", i, seed, y1, x2);
    }

    // Backward: a generic pair meeting in a point is almost never ⊥×.
    const auto [z1, w2] = gen_pair_with_meet_dim(cfg, reduced.k1, reduced.k2, 0, rng);
    if (perp_x(z1, w2)) continue;
    ++out.backward_exercised;
    if (oracle.query(lemma1_witness(z1, w2, params.m), w2)) {
      ++out.backward_violations;
      note("backward", i, seed, z1, w2);
    }
  }
  return out;
}

}  // namespace orthokernel::harness
