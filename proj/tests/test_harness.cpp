#include <gtest/gtest.h>

#include "orthokernel/harness.hpp"
#include "support.hpp"

namespace orthokernel::harness {
namespace {

using nlohmann::json;

GenConfig config(Index n, std::uint64_t seed = 0) { return {identity_form(n), 3, 2, seed, 64}; }

TEST(GenSubspace, Dimensions) {
  const auto cfg = config(4);
  Rng rng(1);
  EXPECT_EQ(gen_subspace(cfg, 0, rng).dim(), 0);
  const Flat whole = gen_subspace(cfg, 4, rng);
  EXPECT_EQ(whole.direction().basis(), RMatrix::Identity(4, 4));
  for (Index k = 0; k <= 4; ++k) EXPECT_EQ(gen_subspace(cfg, k, rng).dim(), k);
  EXPECT_THROW(gen_subspace(cfg, 5, rng), InputError);
}

TEST(GenSubspace, DeterministicForASeed) {
  const auto cfg = config(4);
  Rng a(99), b(99);
  EXPECT_EQ(gen_subspace(cfg, 2, a), gen_subspace(cfg, 2, b));
  EXPECT_EQ(gen_subspace(cfg, 2, a), gen_subspace(cfg, 2, b));
}

TEST(GenSubspace, CoordinatesWithinBounds) {
  const GenConfig cfg{identity_form(3), 1, 1, 0, 64};
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Flat p = gen_subspace(cfg, 0, rng);
    for (Index j = 0; j < 3; ++j) EXPECT_LE(abs(p.point()(j)), 1);
  }
}

TEST(GenPairWithMeetDim, Examples) {
  const auto cfg = config(3);
  Rng rng(3);
  const auto [a, b] = gen_pair_with_meet_dim(cfg, 2, 2, 1, rng);
  EXPECT_EQ(a.dim(), 2);
  EXPECT_EQ(b.dim(), 2);
  ASSERT_TRUE(meet(a, b));
  EXPECT_EQ(meet(a, b)->dim(), 1);

  const auto [l1, l2] = gen_pair_with_meet_dim(cfg, 1, 1, 1, rng);
  EXPECT_EQ(l1, l2);

  EXPECT_THROW(gen_pair_with_meet_dim(cfg, 2, 2, 0, rng), InputError);
  EXPECT_THROW(gen_pair_with_meet_dim(cfg, 1, 2, 2, rng), InputError);
}

TEST(GenPairWithMeetDim, AllFeasibleTriples) {
  for (const auto& form : default_forms(5)) {
    const GenConfig cfg{form, 3, 2, 0, 64};
    Rng rng(4);
    for (Index k1 = 0; k1 <= 5; ++k1)
      for (Index k2 = 0; k2 <= 5; ++k2)
        for (Index m = std::max<Index>(0, k1 + k2 - 5); m <= std::min(k1, k2); ++m) {
          const auto [a, b] = gen_pair_with_meet_dim(cfg, k1, k2, m, rng);
          ASSERT_EQ(a.dim(), k1);
          ASSERT_EQ(b.dim(), k2);
          ASSERT_TRUE(meet(a, b));
          EXPECT_EQ(meet(a, b)->dim(), m);
        }
  }
}

TEST(GenLinePair, OrthogonalOption) {
  const GenConfig cfg{tridiagonal_form(3), 3, 2, 0, 64};
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto [l1, l2] = gen_line_pair(cfg, true, rng);
    EXPECT_TRUE(perp_subspaces(l1, l2));
  }
  EXPECT_THROW(gen_line_pair(config(1), true, rng), InputError);
}

TEST(GenConfig, Validation) {
  EXPECT_THROW((GenConfig{identity_form(2), 0, 1, 0, 64}.validate()), InputError);
  EXPECT_THROW((GenConfig{identity_form(2), 1, 0, 0, 64}.validate()), InputError);
  EXPECT_THROW((GenConfig{identity_form(2), 1, 1, 0, 0}.validate()), InputError);
}

TEST(TrialSeed, DependsOnEveryInput) {
  EXPECT_EQ(trial_seed(1, "P-SYM", 0), trial_seed(1, "P-SYM", 0));
  EXPECT_NE(trial_seed(1, "P-SYM", 0), trial_seed(2, "P-SYM", 0));
  EXPECT_NE(trial_seed(1, "P-SYM", 0), trial_seed(1, "P-ISO", 0));
  EXPECT_NE(trial_seed(1, "P-SYM", 0), trial_seed(1, "P-SYM", 1));
}

TEST(DefaultForms, ArePositiveDefinite) {
  for (Index n = 1; n <= 6; ++n) {
    const auto forms = default_forms(n);
    ASSERT_EQ(forms.size(), 3u);
    EXPECT_EQ(forms[0].label, "identity");
    EXPECT_EQ(forms[1].label, "diagonal");
    EXPECT_EQ(forms[2].label, "tridiagonal");
    for (const auto& f : forms) EXPECT_EQ(f.space->dim(), n);
  }
  EXPECT_EQ(diagonal_form(std::vector<Rational>{1, Rational(1) / 2}).label, "diag(1,1/2)");
  EXPECT_THROW(diagonal_form(std::vector<Rational>{1, -1}), InputError);
}

TEST(RunProperty, SymmetryAndInclusionHold) {
  const auto sym = run_property("P-SYM", config(4, 42), 300);
  EXPECT_EQ(sym.violations, 0u);
  EXPECT_FALSE(sym.first_counterexample);
  EXPECT_EQ(sym.trials, 300u);
  EXPECT_EQ(sym.exercised, 300u);
  const auto iso = run_property("P-ISO", GenConfig{tridiagonal_form(5), 3, 2, 1, 64}, 300);
  EXPECT_EQ(iso.violations, 0u);
}

TEST(RunProperty, UnknownIdIsInputError) {
  EXPECT_THROW(run_property("NO-SUCH", config(3), 10), InputError);
  EXPECT_FALSE(is_property_id("NO-SUCH"));
  EXPECT_TRUE(is_property_id("P-AXO-H"));
}

TEST(RunProperty, NegatedRelationIsCaught) {
  Relations broken = Relations::kernel();
  broken.perp_g = [](const Flat& a, const Flat& b) { return !orthokernel::perp_g(a, b); };
  const auto report = run_property("P-SYM", config(3, 7), 200, broken);
  // Negation keeps symmetry, so use a property whose conclusion it breaks.
  const auto noinc = run_property("P-NOINC", config(3, 7), 200, broken);
  EXPECT_EQ(report.violations, 0u);
  EXPECT_GT(noinc.violations, 0u);
  ASSERT_TRUE(noinc.first_counterexample);
  EXPECT_TRUE(noinc.first_counterexample->contains("seed"));
  EXPECT_TRUE(noinc.first_counterexample->contains("trial"));
  EXPECT_EQ(noinc.first_counterexample->at("form"), "identity");
}

TEST(RunProperty, PerpXInPlaceOfPerpGoIsCaught) {
  // ⊥× in place of ⊥g° ignores the meet; several clauses must notice.
  Relations broken = Relations::kernel();
  broken.perp_go = [](const Flat& a, const Flat& b) { return perp_x(a, b); };
  std::uint64_t total = 0;
  for (const char* id : {"P-AXO-A", "P-AXO-D", "P-AXO-G"})
    total += run_property(id, config(4, 3), 200, broken).violations;
  EXPECT_GT(total, 0u);
}

TEST(RunProperty, JobsDoNotChangeTheReport) {
  const auto cfg = config(4, 5);
  const auto one = run_property("P-COSIK", cfg, 120, Relations::kernel(), 1);
  const auto four = run_property("P-COSIK", cfg, 120, Relations::kernel(), 4);
  EXPECT_EQ(report_to_json(one, false), report_to_json(four, false));

  Relations broken = Relations::kernel();
  broken.perp_g = [](const Flat& a, const Flat& b) { return !orthokernel::perp_g(a, b); };
  const auto b1 = run_property("P-NOINC", cfg, 120, broken, 1);
  const auto b3 = run_property("P-NOINC", cfg, 120, broken, 3);
  EXPECT_EQ(report_to_json(b1, false), report_to_json(b3, false));
}

TEST(RunProperty, EveryPropertyRunsCleanlyAtSmallScale) {
  for (const auto& id : property_ids()) {
    const auto r = run_property(id, GenConfig{diagonal_form(3), 3, 2, 11, 64}, 40);
    EXPECT_EQ(r.violations, 0u) << id << " " << r.first_counterexample.value_or(json()).dump();
  }
}

TEST(Reports, MergeAndSerialize) {
  PropertyReport a{"P-SYM", 10, 8, 0, std::nullopt, 5};
  PropertyReport b{"P-SYM", 10, 9, 2, json{{"x", 1}}, 7};
  const auto m = merge_reports({a, b});
  EXPECT_EQ(m.trials, 20u);
  EXPECT_EQ(m.exercised, 17u);
  EXPECT_EQ(m.violations, 2u);
  EXPECT_EQ(*m.first_counterexample, (json{{"x", 1}}));
  EXPECT_FALSE(report_to_json(m, false).contains("elapsed_ms"));
  EXPECT_EQ(report_to_json(m, true).at("elapsed_ms"), 12);
  EXPECT_THROW(merge_reports({a, PropertyReport{"P-ISO"}}), InputError);

  const json suite = suite_to_json(json{{"dim", 3}}, {b, PropertyReport{"P-AXO-A"}}, false);
  EXPECT_EQ(suite.at("schema"), 1);
  EXPECT_EQ(suite.at("reports")[0].at("property_id"), "P-AXO-A");
  EXPECT_TRUE(suite.at("reports")[0].at("first_counterexample").is_null());
}

TEST(Counterexamples, BothInstancesVerify) {
  const auto instances = emit_counterexamples();
  ASSERT_EQ(instances.size(), 2u);
  for (const auto& inst : instances) EXPECT_TRUE(inst.verified()) << inst.label;
}

TEST(Counterexamples, IndependentRecheck) {
  // Recompute every listed predicate from the flats alone.
  const auto instances = emit_counterexamples();
  const auto get = [](const LabeledInstance& inst, const std::string& name) {
    for (const auto& [n, f] : inst.flats)
      if (n == name) return f;
    throw std::runtime_error("missing " + name);
  };
  const auto& first = instances[0];
  const Flat a1 = get(first, "A"), b1 = get(first, "B"), c1 = get(first, "C");
  EXPECT_TRUE(perp_g(a1, b1));
  EXPECT_TRUE(is_subflat(b1, c1));
  EXPECT_EQ(c1.dim(), b1.dim() + 1);
  EXPECT_FALSE(perp_g(a1, c1));

  const auto& second = instances[1];
  const Flat a2 = get(second, "A"), b2 = get(second, "B"), c2 = get(second, "C");
  EXPECT_TRUE(perp_g(a2, b2));
  EXPECT_TRUE(is_subflat(c2, b2));
  EXPECT_TRUE(meet(a2, c2));
  EXPECT_EQ(c2.dim(), b2.dim() - 1);
  EXPECT_FALSE(perp_g(a2, c2));
}

TEST(Counterexamples, JsonRoundTrip) {
  const auto space = identity_form(3).space;
  for (const auto& inst : emit_counterexamples()) {
    const json j = json::parse(inst.to_json().dump());
    EXPECT_TRUE(j.at("verified").get<bool>());
    for (const auto& [name, f] : inst.flats) EXPECT_EQ(flat_from_json(j.at("flats").at(name), space), f);
  }
}

TEST(Reconstruction, SmallRunAgrees) {
  const auto summary = run_reconstruction(config(4, 7), {1, 2, 2}, 40, 5);
  EXPECT_TRUE(summary.passed()) << summary.to_json().dump();
  EXPECT_GE(summary.orthogonal, 20u);
  EXPECT_THROW(run_reconstruction(config(3, 7), {0, 2, 2}, 4, 0), InputError);
}

}  // namespace
}  // namespace orthokernel::harness
