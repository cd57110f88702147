#include "orthokernel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "orthokernel/harness.hpp"
#include "orthokernel/reconstruction.hpp"

namespace orthokernel {

namespace {

using nlohmann::json;
namespace h = harness;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

/// identity | diagonal | tridiagonal | a space JSON file.
h::FormChoice resolve_form(const std::string& name, Index dim) {
  if (name == "identity") return h::identity_form(dim);
  if (name == "diagonal") return h::diagonal_form(dim);
  if (name == "tridiagonal") return h::tridiagonal_form(dim);
  auto space = space_from_json(read_json_file(name));
  if (space->dim() != dim)
    throw InputError("form file " + name + " has dimension " + std::to_string(space->dim()) +
                     " but --dim is " + std::to_string(dim));
  return {name, std::move(space)};
}

std::vector<std::string> split_props(const std::string& spec) {
  if (spec == "all") return h::property_ids();
  std::vector<std::string> out;
  std::stringstream ss(spec);
  for (std::string id; std::getline(ss, id, ',');) {
    if (!h::is_property_id(id)) throw InputError("unknown property id \"" + id + "\"");
    out.push_back(id);
  }
  if (out.empty()) throw InputError("--props is empty");
  return out;
}

struct CommonOptions {
  Index dim = 4;
  std::uint64_t seed = 0;
  std::string form = "identity";
  std::int64_t numerator_bound = 3;
  std::int64_t denominator_bound = 2;
  int retries = 64;

  void attach(CLI::App& app) {
    app.add_option("--dim", dim, "Ambient dimension n")->check(CLI::Range(1, 64));
    app.add_option("--seed", seed, "Master seed")->envname("ORTHOKERNEL_SEED");
    app.add_option("--numerator-bound", numerator_bound, "Largest |numerator| drawn");
    app.add_option("--denominator-bound", denominator_bound, "Largest denominator drawn");
    app.add_option("--retries", retries, "Retry budget for degenerate random draws");
  }

  h::GenConfig config(const h::FormChoice& f) const {
    h::GenConfig cfg{f, numerator_bound, denominator_bound, seed, retries};
    cfg.validate();
    return cfg;
  }
};

struct CheckCommand {
  CommonOptions common;
  std::uint64_t trials = 1000;
  std::string props = "all";
  std::string json_path;
  unsigned jobs = 1;
  bool timing = false;

  int run(std::ostream& out) {
    const auto ids = split_props(props);
    std::vector<h::FormChoice> forms = common.form == "default"
                                           ? h::default_forms(common.dim)
                                           : std::vector{resolve_form(common.form, common.dim)};
    json form_labels = json::array();
    for (const auto& f : forms) form_labels.push_back(f.label);

    std::vector<h::PropertyReport> reports;
    std::uint64_t violations = 0;
    for (const auto& id : ids) {
      std::vector<h::PropertyReport> parts;
      for (const auto& f : forms) parts.push_back(h::run_property(id, common.config(f), trials,
                                                                  h::Relations::kernel(), jobs));
      auto merged = h::merge_reports(parts);
      violations += merged.violations;
      out << (merged.violations == 0 ? "PASS " : "FAIL ") << merged.property_id
          << " trials=" << merged.trials << " exercised=" << merged.exercised << " violations=" << merged.violations;
      if (timing) out << " elapsed_ms=" << merged.elapsed_ms;
      out << '\n';
      reports.push_back(std::move(merged));
    }

    if (!json_path.empty()) {
      const json config{{"dim", common.dim},
                        {"forms", form_labels},
                        {"trials_per_form", trials},
                        {"seed", common.seed},
                        {"numerator_bound", common.numerator_bound},
                        {"denominator_bound", common.denominator_bound},
                        {"retries", common.retries},
                        {"props", ids}};
      write_json_file(json_path, h::suite_to_json(config, std::move(reports), timing));
    }
    return violations == 0 ? kExitOk : kExitViolation;
  }
};

struct WitnessCommand {
  CommonOptions common;
  std::string kind = "perp-pair";
  int m = 0, k1 = 1, k2 = 1;
  std::string space_path, first_path, second_path;

  int run(std::ostream& out) {
    SpacePtr space = space_path.empty() ? resolve_form(common.form, common.dim).space
                                        : space_from_json(read_json_file(space_path));
    auto load = [&](const std::string& path, const char* flag) {
      if (path.empty()) throw InputError(std::string(flag) + " is required for --kind " + kind);
      return flat_from_json(read_json_file(path), space);
    };
    json result{{"kind", kind}, {"space", space_to_json(*space)}};
    if (kind == "perp-pair") {
      const TypedPerpParams p{m, k1, k2};
      auto cfg = common.config({"", space});
      Rng rng(h::trial_seed(cfg.seed, "witness", 0));
      const auto pair = make_perp_pair(space, p, rng, cfg.bounds());
      if (!pair)
        throw InputError("no pair satisfies (m,k1,k2) = (" + std::to_string(m) + "," +
                         std::to_string(k1) + "," + std::to_string(k2) +
                         ") since k1 + k2 - m exceeds " + std::to_string(space->dim()));
      result["X1"] = flat_to_json(pair->first);
      result["X2"] = flat_to_json(pair->second);
    } else if (kind == "lemma1") {
      const Flat y1 = load(first_path, "--first");
      const Flat x2 = load(second_path, "--second");
      result["X1"] = flat_to_json(lemma1_witness(y1, x2, m));
    } else if (kind == "lemma2") {
      const Flat l1 = load(first_path, "--first");
      const Flat l2 = load(second_path, "--second");
      const auto [x1, x2] = lemma2_witness(l1, l2, k1, k2);
      const auto [q, p2] = common_perpendicular_feet(l1, l2);
      result["feet"] = {vector_to_json(q), vector_to_json(p2)};
      result["X1"] = flat_to_json(x1);
      result["X2"] = flat_to_json(x2);
    } else {
      throw InputError("unknown witness kind \"" + kind + "\"");
    }
    out << result.dump(2) << '\n';
    return kExitOk;
  }
};

struct ReconstructCommand {
  CommonOptions common;
  int m = 0, k1 = 1, k2 = 1;
  std::uint64_t pairs = 500;
  int samples = 20;
  std::string json_path;

  int run(std::ostream& out) {
    const auto cfg = common.config(resolve_form(common.form, common.dim));
    const auto summary = h::run_reconstruction(cfg, TypedPerpParams{m, k1, k2}, pairs, samples);
    out << "params (m,k1,k2)=(" << m << "," << k1 << "," << k2 << ") dim=" << common.dim
        << " form=" << cfg.form.label << '\n'
        << "witness agreement " << summary.witness_agreements << "/" << summary.pairs
        << " (ground truth orthogonal: " << summary.orthogonal << ")\n"
        << "sampled contradictions " << summary.sampled_contradictions << '\n';
    if (!json_path.empty()) write_json_file(json_path, summary.to_json());
    return summary.passed() ? kExitOk : kExitViolation;
  }
};

struct CounterexampleCommand {
  std::string json_path;

  int run(std::ostream& out) {
    const auto instances = h::emit_counterexamples();
    json list = json::array();
    bool all_verified = true;
    for (const auto& inst : instances) {
      all_verified = all_verified && inst.verified();
      out << (inst.verified() ? "VERIFIED " : "FAILED ") << inst.label << '\n';
      for (const auto& c : inst.checks)
        out << "  " << c.name << ": " << (c.actual ? "true" : "false") << '\n';
      list.push_back(inst.to_json());
    }
    if (!json_path.empty()) write_json_file(json_path, json{{"schema", 1}, {"instances", list}});
    return all_verified ? kExitOk : kExitViolation;
  }
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact orthogonality kernel for affine subspaces of rational Euclidean spaces"};
  app.require_subcommand(1);

  CheckCommand check;
  auto* check_cmd = app.add_subcommand("check", "Run the randomized property suite");
  check.common.form = "default";
  check.common.attach(*check_cmd);
  check_cmd->add_option("--form", check.common.form,
                        "default (identity, diagonal, tridiagonal) | identity | diagonal | "
                        "tridiagonal | space JSON file");
  check_cmd->add_option("--trials", check.trials, "Trials per property and form");
  check_cmd->add_option("--props", check.props, "all, or a comma-separated list of property ids");
  check_cmd->add_option("--json", check.json_path, "Write the JSON report here");
  check_cmd->add_option("--jobs", check.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  check_cmd->add_flag("--timing", check.timing, "Include elapsed_ms in output and report");

  WitnessCommand witness;
  auto* witness_cmd = app.add_subcommand("witness", "Print constructed witnesses as JSON");
  witness.common.attach(*witness_cmd);
  witness_cmd->add_option("--kind", witness.kind, "perp-pair | lemma1 | lemma2");
  witness_cmd->add_option("--form", witness.common.form,
                          "identity | diagonal | tridiagonal | space JSON file");
  witness_cmd->add_option("--space", witness.space_path, "Space JSON file (overrides --form)");
  witness_cmd->add_option("--m", witness.m, "Meet dimension");
  witness_cmd->add_option("--k1", witness.k1, "Dimension of the first flat");
  witness_cmd->add_option("--k2", witness.k2, "Dimension of the second flat");
  witness_cmd->add_option("--first", witness.first_path, "Y1 (lemma1) or L1 (lemma2) flat JSON");
  witness_cmd->add_option("--second", witness.second_path, "X2 (lemma1) or L2 (lemma2) flat JSON");

  ReconstructCommand reconstruct;
  auto* reconstruct_cmd =
      app.add_subcommand("reconstruct", "Compare recovered line orthogonality with ground truth");
  reconstruct.common.attach(*reconstruct_cmd);
  reconstruct_cmd->add_option("--form", reconstruct.common.form,
                              "identity | diagonal | tridiagonal | space JSON file");
  reconstruct_cmd->add_option("--m", reconstruct.m, "Meet dimension")->required();
  reconstruct_cmd->add_option("--k1", reconstruct.k1, "First oracle dimension")->required();
  reconstruct_cmd->add_option("--k2", reconstruct.k2, "Second oracle dimension")->required();
  reconstruct_cmd->add_option("--pairs", reconstruct.pairs, "Line pairs (half orthogonal)");
  reconstruct_cmd->add_option("--samples", reconstruct.samples,
                              "Candidates per query in sampled mode (0 disables it)");
  reconstruct_cmd->add_option("--json", reconstruct.json_path, "Write a JSON summary here");

  CounterexampleCommand counterexample;
  auto* cex_cmd =
      app.add_subcommand("counterexample", "Verify the two non-transitivity configurations");
  cex_cmd->add_option("--json", counterexample.json_path, "Write the instances here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check_cmd) return check.run(out);
    if (*witness_cmd) return witness.run(out);
    if (*reconstruct_cmd) return reconstruct.run(out);
    if (*cex_cmd) return counterexample.run(out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitInput;
}

}  // namespace orthokernel
