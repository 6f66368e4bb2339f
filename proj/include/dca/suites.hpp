#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dca/config.hpp"
#include "dca/report.hpp"
#include "dca/setfn_io.hpp"

namespace dca {

// Runs fn(0..count-1) on up to `jobs` threads. Results come back in index
// order; if any call throws, the exception of the lowest failing index is
// rethrown after all workers finish.
template <class Fn>
auto parallel_map(std::size_t count, int jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        slots[k].emplace(fn(k));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// --jobs value when given, else DCA_JOBS, else the config's jobs.
int resolve_jobs(std::optional<int> flag, int config_jobs);

// Instances described by config.families (or the default corpus), with
// sub-seed seed ^ index, filtered to n_range. Ids are made unique.
std::vector<Instance> generate_instances(const SuiteConfig& config);

// Writes <out>/<id>.json per instance and <out>/manifest.json. Returns the
// manifest.
nlohmann::json write_instances(const std::vector<Instance>& instances, const std::filesystem::path& out,
                               const SuiteConfig& config);

// One suite on one instance. Suites that presuppose the single exchange
// property report SKIP when it fails. Operational problems (empty domain,
// overflow) propagate as exceptions.
VerificationReport run_suite(Suite suite, const Instance& instance, const SuiteConfig& config,
                             std::uint64_t instance_seed);

// Every configured suite on every instance, ordered by (instance, suite).
// Instance k uses sub-seed config.seed ^ k.
std::vector<VerificationReport> run_suites(const std::vector<Instance>& instances, const SuiteConfig& config);

struct FalsifyResult {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t random_tables = 0;
  std::uint64_t mutated = 0;
  std::uint64_t single_pass = 0;
  // Single exchange holds but the bounded multiple exchange fails.
  std::uint64_t counterexamples = 0;
  // Single and bounded multiple verdicts differ in either direction.
  std::uint64_t disagreements = 0;
  std::optional<nlohmann::json> first_counterexample;
  // Minimum slack over single-passing trials and its distribution.
  std::optional<std::int64_t> min_slack;
  std::map<std::int64_t, std::uint64_t> slack_histogram;
  // Tightest single-passing trials, (slack, trial) ascending.
  nlohmann::json near_misses = nlohmann::json::array();

  bool passed() const noexcept { return counterexamples == 0 && disagreements == 0; }
  nlohmann::json to_json() const;
};

// Trials alternate between random integer tables (n <= falsify_max_n,
// values in [-5, 5], NEG_INF probability 0.2) and single mutations of small
// structured instances. Trial t uses seed derive_seed(seed, t).
FalsifyResult run_falsification(const SuiteConfig& config);

}  // namespace dca
