#include <algorithm>

#include "orthokernel/harness.hpp"

namespace orthokernel::harness {

using nlohmann::json;

PropertyReport merge_reports(const std::vector<PropertyReport>& parts) {
  if (parts.empty()) throw InputError("nothing to merge");
  PropertyReport out;
  out.property_id = parts.front().property_id;
  for (const auto& p : parts) {
    if (p.property_id != out.property_id) throw InputError("merging reports of different properties");
    out.trials += p.trials;
    out.exercised += p.exercised;
    out.violations += p.violations;
    out.elapsed_ms += p.elapsed_ms;
    if (!out.first_counterexample && p.first_counterexample)
      out.first_counterexample = p.first_counterexample;
  }
  return out;
}

json report_to_json(const PropertyReport& report, bool with_timing) {
  json out{{"property_id", report.property_id},
           {"trials", report.trials},
           {"exercised", report.exercised},
           {"violations", report.violations},
           {"first_counterexample", report.first_counterexample.value_or(json(nullptr))}};
  // Wall-clock time differs between runs; it is left out unless asked for so
  // that reports are reproducible byte for byte.
  if (with_timing) out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

json suite_to_json(const json& config, std::vector<PropertyReport> reports, bool with_timing) {
  std::sort(reports.begin(), reports.end(),
            [](const auto& a, const auto& b) { return a.property_id < b.property_id; });
  json list = json::array();
  for (const auto& r : reports) list.push_back(report_to_json(r, with_timing));
  return json{{"schema", 1}, {"config", config}, {"reports", std::move(list)}};
}

}  // namespace orthokernel::harness
