// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dca/duality.hpp"
#include "dca/errors.hpp"
#include "dca/exchange.hpp"
#include "dca/families.hpp"
#include "dca/rng.hpp"
#include "dca/suites.hpp"

using namespace dca;

namespace {

struct Outcome {
  bool ok = true;
  std::string summary;
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.ok) ++failures;
  std::printf("%s %s %s: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", id, title, o.summary.c_str(), secs);
  std::fflush(stdout);
}

std::string first_cex(const VerificationReport& r) {
  return r.instance_id + " " + (r.counterexample ? r.counterexample->dump() : std::string("?"));
}

const std::vector<Instance>& corpus() {
  static const std::vector<Instance> instances = default_corpus();
  return instances;
}

}  // namespace

int main() {
  std::printf("corpus: %zu instances\n", corpus().size());

  criterion("AC1", "bounded multiple exchange on the corpus", [] {
    const auto start = std::chrono::steady_clock::now();
    std::map<int, int> sizes;
    std::uint64_t triples = 0;
    std::uint64_t sampled_n8 = 0;
    std::map<std::string, int> families;
    for (const auto& inst : corpus()) {
      families[inst.meta["family"]["family"].get<std::string>()]++;
      if (inst.fn.n() < 3 || inst.fn.n() > 8 || inst.fn.mode() != Mode::Int) {
        return Outcome{false, inst.id + " outside n in 3..8 integer mode"};
      }
      ++sizes[inst.fn.n()];
      CheckOptions opts;
      const auto r = check_exc_multi(inst.fn, true, opts);
      if (!r.passed()) return Outcome{false, first_cex(r)};
      if (inst.fn.n() <= 7 && r.regime != Regime::Exhaustive) return Outcome{false, inst.id + " not exhaustive"};
      triples += r.triples_checked;
      if (inst.fn.n() == 8) {
        // Beyond the exhaustive pass, an explicit 10^4-triple sampled run.
        opts.force_regime = Regime::Sampled;
        opts.samples = 10000;
        opts.seed = 8;
        const auto s = check_exc_multi(inst.fn, true, opts);
        if (!s.passed()) return Outcome{false, first_cex(s)};
        sampled_n8 += s.triples_checked;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (corpus().size() < 30) return Outcome{false, "corpus smaller than 30"};
    for (const char* fam : {"uniform", "partition", "graphic", "weighted_basis", "laminar", "assignment"}) {
      if (!families.count(fam)) return Outcome{false, std::string("family missing: ") + fam};
    }
    if (sizes.size() != 6) return Outcome{false, "corpus does not cover n = 3..8"};
    if (secs > 300) return Outcome{false, "runtime above 5 minutes"};
    std::ostringstream s;
    s << corpus().size() << " instances, " << triples << " triples exhaustive, " << sampled_n8
      << " extra sampled triples at n=8, 0 violations";
    return Outcome{true, s.str()};
  });

  criterion("AC2", "single / multiple / bounded verdict agreement", [] {
    int agree = 0, single_pass = 0;
    constexpr int kCount = 1000;
    for (int t = 0; t < kCount; ++t) {
      Rng rng(derive_seed(2024, t));
      const int n = static_cast<int>(rng.between(1, 5));
      const SetFn f = random_table(n, rng);
      const bool a = check_exc_single(f).passed();
      const bool b = check_exc_multi(f, false).passed();
      const bool c = check_exc_multi(f, true).passed();
      if (a == b && b == c) ++agree;
      if (a) ++single_pass;
    }
    std::ostringstream s;
    s << agree << "/" << kCount << " agree (" << single_pass << " satisfy the single exchange)";
    return Outcome{agree == kCount, s.str()};
  });

  criterion("AC3", "integer Fenchel duality on corpus pairs", [] {
    int pairs = 0, inside = 0, reruns = 0, skipped = 0;
    for (const auto& a : corpus()) {
      for (const auto& b : corpus()) {
        if (a.fn.n() != b.fn.n() || a.fn.n() > 5) continue;
        FenchelResult r = fenchel_gap(a.fn, b.fn);
        if (r.primal.is_neg_inf()) {
          ++skipped;
          continue;
        }
        if (r.boundary) {
          ++reruns;
          r = fenchel_gap(a.fn, b.fn, 2 * r.box);
        } else {
          ++inside;
        }
        ++pairs;
        if (!r.certified || !r.attained || !r.gap || *r.gap != ExtValue::integer(0) || r.boundary) {
          return Outcome{false, a.id + " + " + b.id + ": " + r.to_json().dump()};
        }
      }
    }
    std::ostringstream s;
    s << pairs << " pairs with gap 0 (" << inside << " attained inside the box, " << reruns
      << " boundary reruns; " << skipped << " pairs with disjoint domains excluded)";
    return Outcome{pairs >= 50, s.str()};
  });

  criterion("AC4", "conjugate submodularity, cross-submodularity, strong quotient", [] {
    std::uint64_t checked = 0;
    int instances = 0;
    for (const auto& inst : corpus()) {
      const int n = inst.fn.n();
      if (n > 6) continue;
      const PriceGrid grid = PriceGrid::default_for(n, 44);
      if ((n <= 4) != !grid.sample_pairs.has_value()) return Outcome{false, "unexpected grid regime"};
      if (n > 4 && *grid.sample_pairs != 10000) return Outcome{false, "unexpected sample count"};
      std::vector<int> sizes;
      for (Subset x : effective_domain(inst.fn)) sizes.push_back(cardinality(x));
      std::sort(sizes.begin(), sizes.end());
      sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
      for (int k : sizes) {
        for (const auto& r : {check_conjugate_submodular(inst.fn, k, grid), check_cross_submodular(inst.fn, k, grid),
                              check_strong_quotient(inst.fn, k, grid)}) {
          if (!r.passed()) return Outcome{false, first_cex(r) + " k=" + std::to_string(k)};
          checked += r.triples_checked;
        }
      }
      ++instances;
    }
    std::ostringstream s;
    s << instances << " instances, " << checked << " inequalities, 0 violations";
    return Outcome{true, s.str()};
  });

  criterion("AC5", "lifting to an M-concave function", [] {
    SuiteConfig config;
    std::uint64_t triples = 0;
    for (std::size_t k = 0; k < corpus().size(); ++k) {
      const auto r = run_suite(Suite::MConcaveLift, corpus()[k], config, k);
      if (!r.passed()) return Outcome{false, first_cex(r)};
      if (r.regime != Regime::Exhaustive) return Outcome{false, r.instance_id + " not exhaustive"};
      triples += r.triples_checked;
    }
    std::ostringstream s;
    s << corpus().size() << " lifted instances, " << triples << " swap checks, domain counts match";
    return Outcome{true, s.str()};
  });

  criterion("AC6", "exchange_leq, augment_lt, nonempty restrictions", [] {
    SuiteConfig config;
    config.lemma6_contexts = 0;
    std::uint64_t triples = 0;
    for (std::size_t k = 0; k < corpus().size(); ++k) {
      const auto& inst = corpus()[k];
      const auto r = run_suite(Suite::Lemmas28, inst, config, k);
      if (!r.passed()) return Outcome{false, first_cex(r)};
      for (const char* part : {"exchange_leq", "augment_lt", "restrictions_nonempty"}) {
        if (r.details->at(part) != "PASS") return Outcome{false, inst.id + " " + part};
      }
      triples += r.triples_checked;
    }
    std::ostringstream s;
    s << corpus().size() << " instances, " << triples << " configurations, 0 failures";
    return Outcome{true, s.str()};
  });

  criterion("AC7", "matroid basis multiple exchange", [] {
    std::uint64_t checked = 0;
    const auto matroids = corpus_matroids();
    for (const auto& m : matroids) {
      const auto bases = m.bases();
      for (Subset x : bases) {
        for (Subset y : bases) {
          bool ok = true;
          for_each_submask(x & ~y, [&](Subset i) {
            if (!ok) return;
            const Subset j = matroid_base_multi_exchange(m, x, y, i);
            ok = cardinality(j) == cardinality(i) && is_subset_of(j, y & ~x) && m.is_basis((x & ~i) | j) &&
                 m.is_basis((y & ~j) | i);
            ++checked;
          });
          if (!ok) return Outcome{false, m.description().dump()};
        }
      }
    }
    std::ostringstream s;
    s << matroids.size() << " matroids, " << checked << " (X, Y, I) triples, 0 failures";
    return Outcome{true, s.str()};
  });

  criterion("AC8", "|I| = 1 specialization", [] {
    Rng rng(88);
    std::uint64_t checked = 0;
    std::vector<std::vector<Subset>> doms;
    for (const auto& inst : corpus()) doms.push_back(effective_domain(inst.fn));
    while (checked < 10000) {
      const std::size_t k = rng.below(corpus().size());
      const SetFn& f = corpus()[k].fn;
      const Subset x = doms[k][rng.below(doms[k].size())];
      const Subset y = doms[k][rng.below(doms[k].size())];
      const Subset x0 = x & ~y;
      if (x0 == 0) continue;
      const auto elems = to_elements(x0);
      const int i = elems[rng.below(elems.size())];
      const ExchangeWitness single = best_single_option(f, x, y, i);
      const ExchangeWitness multi = best_multi_option(f, x, y, bit_of(i), true);
      const bool mapped = single.kind == ExchangeWitness::Kind::Drop ? multi.set_j == 0 : multi.set_j == bit_of(single.j);
      const bool found_same = find_single_exchange(f, x, y, i).has_value() ==
                              find_multi_exchange(f, x, y, bit_of(i), true).has_value();
      if (single.rhs != multi.rhs || single.lhs != multi.lhs || !mapped || !found_same) {
        return Outcome{false, corpus()[k].id + " single " + single.to_json().dump() + " multi " +
                                  multi.to_json().dump()};
      }
      ++checked;
    }
    return Outcome{true, std::to_string(checked) + " sampled (X, Y, i), maxima and witnesses identical"};
  });

  criterion("AC9", "falsification campaign", [] {
    const char* argv[] = {"dca", "falsify", "--trials", "100000", "--seed", "9", "--jobs", "1"};
    std::ostringstream out, err;
    const int code = cli::run(8, argv, out, err);
    const auto report = nlohmann::json::parse(out.str());
    std::ostringstream s;
    s << report["trials"] << " trials (" << report["random_tables"] << " random, " << report["mutated"]
      << " mutated), " << report["single_pass"] << " satisfy the single exchange, " << report["counterexamples"]
      << " counterexamples, min slack " << report["near_miss"]["min_slack"].dump();
    return Outcome{code == cli::kOk && report["counterexamples"] == 0 && report["trials"] == 100000, s.str()};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
