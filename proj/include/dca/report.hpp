#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace dca {

enum class Verdict { Pass, Fail, Skip };
enum class Regime { Exhaustive, Sampled };

const char* to_string(Verdict v) noexcept;
const char* to_string(Regime r) noexcept;

// Outcome of one suite on one instance. Serializes to
//   {suite, instance_id, verdict, counterexample?, witness_histogram,
//    triples_checked, regime, seed, details?}
struct VerificationReport {
  std::string suite;
  std::string instance_id;
  Verdict verdict = Verdict::Pass;
  std::optional<nlohmann::json> counterexample;
  // witness size -> count
  std::map<int, std::uint64_t> witness_histogram;
  std::uint64_t triples_checked = 0;
  Regime regime = Regime::Exhaustive;
  std::uint64_t seed = 0;
  std::optional<nlohmann::json> details;

  bool passed() const noexcept { return verdict == Verdict::Pass; }
  bool failed() const noexcept { return verdict == Verdict::Fail; }

  // First failure wins; later ones are ignored.
  void fail(nlohmann::json cex) {
    if (verdict == Verdict::Fail) return;
    verdict = Verdict::Fail;
    counterexample = std::move(cex);
  }

  nlohmann::json to_json() const;
};

}  // namespace dca
