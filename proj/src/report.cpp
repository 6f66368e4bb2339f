#include "dca/report.hpp"

namespace dca {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Skip:
      return "SKIP";
  }
  return "?";
}

const char* to_string(Regime r) noexcept { return r == Regime::Exhaustive ? "exhaustive" : "sampled"; }

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [size, count] : witness_histogram) hist[std::to_string(size)] = count;
  nlohmann::json j;
  j["suite"] = suite;
  j["instance_id"] = instance_id;
  j["verdict"] = dca::to_string(verdict);
  if (counterexample) j["counterexample"] = *counterexample;
  j["witness_histogram"] = std::move(hist);
  j["triples_checked"] = triples_checked;
  j["regime"] = dca::to_string(regime);
  j["seed"] = seed;
  if (details) j["details"] = *details;
  return j;
}

}  // namespace dca
