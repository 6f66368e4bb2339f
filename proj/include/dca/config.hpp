#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dca/ext_value.hpp"

namespace dca {

enum class Suite {
  ExcSingle,
  ExcMultiBounded,
  ExcMultiUnbounded,
  Corollary1,
  MConcaveLift,
  Fenchel,
  Lemmas28,
  DualityGrid,
};

const char* to_string(Suite s) noexcept;
Suite suite_from_string(const std::string& name);
std::vector<Suite> all_suites();
// Comma-separated suite names; "all" selects every suite.
std::vector<Suite> parse_suite_list(const std::string& list);

struct SuiteConfig {
  std::uint64_t seed = 0;
  // Family descriptions (see build_family); empty selects the default corpus.
  std::vector<nlohmann::json> families;
  int n_min = 0;
  int n_max = 24;
  std::uint64_t trials = 0;
  Mode mode = Mode::Int;
  double tolerance = kDefaultTolerance;
  std::vector<Suite> suites = all_suites();
  std::string out;
  int jobs = 1;

  // Sample size for sampled regimes.
  std::uint64_t samples = 10000;
  // Contexts drawn per instance by the fenchel check and the conjugate lower-bound check.
  std::uint64_t fenchel_contexts = 20;
  std::uint64_t lemma6_contexts = 10;
  // Largest ground set used by the falsification campaign.
  int falsify_max_n = 5;
};

// Unknown keys are rejected so typos do not silently fall back to defaults.
SuiteConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SuiteConfig& config);
SuiteConfig load_config(const std::filesystem::path& path);

}  // namespace dca
