#include "dca/suites.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include "dca/duality.hpp"
#include "dca/errors.hpp"
#include "dca/exchange.hpp"
#include "dca/families.hpp"
#include "dca/rng.hpp"

namespace dca {

using nlohmann::json;

namespace {

CheckOptions check_options(const SuiteConfig& config, std::uint64_t seed) {
  CheckOptions o;
  o.tol = config.tolerance;
  o.seed = seed;
  o.samples = config.samples;
  return o;
}

VerificationReport skipped(const char* suite, const Instance& instance, std::uint64_t seed,
                           const VerificationReport& prerequisite) {
  VerificationReport r;
  r.suite = suite;
  r.instance_id = instance.id;
  r.seed = seed;
  r.verdict = Verdict::Skip;
  json why = {{"reason", "single exchange property fails"}};
  if (prerequisite.counterexample) why["exc_single_counterexample"] = *prerequisite.counterexample;
  r.details = why;
  return r;
}

// Folds a sub-check into an aggregate report. The first failing sub-check
// supplies the counterexample.
void absorb(VerificationReport& into, const VerificationReport& part, const std::string& label) {
  into.triples_checked += part.triples_checked;
  for (const auto& [size, count] : part.witness_histogram) into.witness_histogram[size] += count;
  if (part.regime == Regime::Sampled) into.regime = Regime::Sampled;
  if (!into.details) into.details = json::object();
  (*into.details)[label] = to_string(part.verdict);
  if (part.failed()) into.fail({{"check", label}, {"counterexample", part.counterexample.value_or(json())}});
}

// X and Y uniform from dom f; I a uniform nonempty submask of X \ Y when
// that set is nonempty.
ExchangeContext sample_context(const std::vector<Subset>& dom, Rng& rng) {
  const Subset x = dom[rng.below(dom.size())];
  const Subset y = dom[rng.below(dom.size())];
  const Subset x0 = x & ~y;
  Subset i = 0;
  if (x0 != 0) {
    do {
      i = 0;
      for (Subset rest = x0; rest != 0; rest &= rest - 1) {
        if (rng.chance(0.5)) i |= rest & (~rest + 1);
      }
    } while (i == 0);
  }
  return ExchangeContext::make(x, y, i);
}

VerificationReport run_corollary1(const SetFn& f, const CheckOptions& opts) {
  VerificationReport r;
  r.suite = "corollary1";
  r.seed = opts.seed;
  const VerificationReport single = check_exc_single(f, opts);
  const VerificationReport bounded = check_exc_multi(f, true, opts);
  const VerificationReport unbounded = check_exc_multi(f, false, opts);
  const bool agree = single.verdict == bounded.verdict && bounded.verdict == unbounded.verdict;
  r.triples_checked = single.triples_checked + bounded.triples_checked + unbounded.triples_checked;
  r.witness_histogram = bounded.witness_histogram;
  r.regime = (bounded.regime == Regime::Sampled || unbounded.regime == Regime::Sampled) ? Regime::Sampled
                                                                                         : Regime::Exhaustive;
  r.details = json{{"exc_single", to_string(single.verdict)},
                   {"exc_multi_bounded", to_string(bounded.verdict)},
                   {"exc_multi_unbounded", to_string(unbounded.verdict)},
                   {"agreement", agree}};
  if (!agree) {
    json cex = {{"reason", "verdicts disagree"}};
    for (const auto* rep : {&single, &bounded, &unbounded}) {
      if (rep->counterexample) cex[rep->suite] = *rep->counterexample;
    }
    r.fail(cex);
  } else if (single.failed()) {
    r.fail({{"reason", "all three properties fail"}, {"exc_single", single.counterexample.value_or(json())}});
  }
  return r;
}

VerificationReport run_lift(const SetFn& f, const CheckOptions& opts) {
  VerificationReport r;
  r.suite = "m_concave_lift";
  r.seed = opts.seed;
  const SetFn lifted = lift(f);
  const auto [s, rmax] = dom_cardinality_range(f);
  // Each X ∈ dom f extends by any (r - |X|)-subset of the r - s dummies.
  std::uint64_t expected = 0;
  for (Subset x : effective_domain(f)) {
    const int pad = rmax - s;
    const int take = rmax - cardinality(x);
    std::uint64_t c = 1;
    for (int t = 0; t < take; ++t) c = c * static_cast<std::uint64_t>(pad - t) / static_cast<std::uint64_t>(t + 1);
    expected += c;
  }
  const std::uint64_t actual = effective_domain(lifted).size();
  const VerificationReport m = check_m_concave(lifted, opts);
  r.triples_checked = m.triples_checked;
  r.witness_histogram = m.witness_histogram;
  r.details = json{{"lifted_n", lifted.n()}, {"r", rmax}, {"s", s}, {"lifted_dom_size", actual},
                   {"expected_dom_size", expected}};
  if (actual != expected) {
    r.fail({{"reason", "lifted domain size mismatch"}, {"expected", expected}, {"actual", actual}});
  }
  if (m.failed()) r.fail(*m.counterexample);
  return r;
}

VerificationReport run_fenchel(const SetFn& f, const SuiteConfig& config, std::uint64_t seed) {
  VerificationReport r;
  r.suite = "fenchel";
  r.seed = seed;
  r.regime = Regime::Sampled;
  const auto dom = effective_domain(f);
  Rng rng(seed);
  std::uint64_t reruns = 0;
  std::uint64_t points = 0;
  std::int64_t max_box = 0;
  for (std::uint64_t c = 0; c < config.fenchel_contexts && !r.failed(); ++c) {
    const ExchangeContext ctx = sample_context(dom, rng);
    const RestrictionTriple t = build_restrictions(f, ctx);
    FenchelResult res = fenchel_gap(t.f1_sized, t.f2, std::nullopt, config.tolerance);
    if (res.boundary) {
      ++reruns;
      res = fenchel_gap(t.f1_sized, t.f2, 2 * res.box, config.tolerance);
    }
    points += res.points_scanned;
    max_box = std::max(max_box, res.box);
    ++r.triples_checked;

    const ExtValue bound = ext_add(f(ctx.x), f(ctx.y));
    const ExchangeWitness route = best_multi_option(f, ctx.x, ctx.y, ctx.i, true);
    std::string problem;
    if (!res.weak_duality) {
      problem = "weak duality violated";
    } else if (!res.gap || !ext_equal(*res.gap, ExtValue::zero(f.mode()), config.tolerance)) {
      problem = "nonzero duality gap";
    } else if (!ext_leq(bound, res.dual, config.tolerance)) {
      problem = "dual value below f(X) + f(Y)";
    } else if (!ext_equal(res.primal, route.rhs, config.tolerance)) {
      problem = "primal differs from the best bounded multiple exchange";
    }
    if (!problem.empty()) {
      r.fail({{"reason", problem}, {"context", ctx.to_json()}, {"fenchel", res.to_json()},
              {"f(X)+f(Y)", to_json(bound)}, {"best_multi_rhs", to_json(route.rhs)}});
      break;
    }
    ++r.witness_histogram[route.size()];
  }
  r.details = json{{"contexts", r.triples_checked}, {"boundary_reruns", reruns}, {"points_scanned", points},
                   {"max_box", max_box}, {"certified", f.mode() == Mode::Int}};
  return r;
}

VerificationReport run_lemmas(const SetFn& f, const SuiteConfig& config, std::uint64_t seed) {
  VerificationReport r;
  r.suite = "lemmas_2_8";
  r.seed = seed;
  const CheckOptions opts = check_options(config, seed);
  absorb(r, check_exchange_leq(f, opts), "exchange_leq");
  absorb(r, check_augment_lt(f, opts), "augment_lt");

  // Nonempty restriction domains for every context, or sampled contexts
  // when Σ 2^|X0| 2^|Y0| over dom pairs is large.
  VerificationReport nonempty;
  nonempty.suite = "restrictions_nonempty";
  const auto dom = effective_domain(f);
  double cost = 0;
  for (Subset x : dom) {
    for (Subset y : dom) cost += std::ldexp(1.0, cardinality(x & ~y) + cardinality(y & ~x));
  }
  auto visit = [&](const ExchangeContext& ctx) {
    ++nonempty.triples_checked;
    try {
      build_restrictions(f, ctx);
    } catch (const Falsification& e) {
      nonempty.fail(e.payload());
      return false;
    }
    return true;
  };
  if (cost <= 2e7) {
    for (Subset x : dom) {
      for (Subset y : dom) {
        bool ok = true;
        for_each_submask(x & ~y, [&](Subset i) {
          if (ok) ok = visit(ExchangeContext::make(x, y, i));
        });
        if (!ok) break;
      }
      if (nonempty.failed()) break;
    }
  } else {
    nonempty.regime = Regime::Sampled;
    Rng rng(seed);
    for (std::uint64_t s = 0; s < config.samples; ++s) {
      if (!visit(sample_context(dom, rng))) break;
    }
  }
  absorb(r, nonempty, "restrictions_nonempty");

  VerificationReport bound;
  bound.suite = "lemma6_bound";
  bound.regime = Regime::Sampled;
  Rng rng(derive_seed(seed, 6));
  for (std::uint64_t c = 0; c < config.lemma6_contexts; ++c) {
    const ExchangeContext ctx = sample_context(dom, rng);
    const VerificationReport part = check_lemma6_bound(f, ctx, 3, 20000, rng.next(), config.tolerance);
    bound.triples_checked += part.triples_checked;
    if (part.failed()) {
      bound.fail(*part.counterexample);
      break;
    }
  }
  absorb(r, bound, "lemma6_bound");
  return r;
}

VerificationReport run_duality_grid(const SetFn& f, const SuiteConfig& config, std::uint64_t seed) {
  VerificationReport r;
  r.suite = "duality_grid";
  r.seed = seed;
  const PriceGrid grid = PriceGrid::default_for(f.n(), seed);
  std::set<int> sizes;
  for (Subset x : effective_domain(f)) sizes.insert(cardinality(x));
  for (int k : sizes) {
    const std::string tag = "k=" + std::to_string(k);
    absorb(r, check_conjugate_submodular(f, k, grid, config.tolerance), "conjugate_submodular " + tag);
    absorb(r, check_cross_submodular(f, k, grid, config.tolerance), "cross_submodular " + tag);
    absorb(r, check_strong_quotient(f, k, grid, config.tolerance), "strong_quotient " + tag);
    if (r.failed()) break;
  }
  return r;
}

// Small structured M♮-concave instance used as a mutation base.
SetFn random_structured(int n, Rng& rng) {
  switch (rng.below(4)) {
    case 0:
      return matroid_rank_fn(Matroid::uniform(n, static_cast<int>(rng.between(0, n))));
    case 1: {
      std::vector<std::int64_t> w(static_cast<std::size_t>(n));
      for (auto& v : w) v = rng.between(-3, 3);
      return weighted_basis_valuation(Matroid::uniform(n, static_cast<int>(rng.between(0, n))),
                                      PriceVector::from_ints(w));
    }
    case 2:
      return laminar_concave_fn(random_laminar(n, rng, 3));
    default: {
      const int slots = static_cast<int>(rng.between(1, 3));
      std::vector<std::vector<std::int64_t>> weights(static_cast<std::size_t>(n));
      for (auto& row : weights) {
        for (int s = 0; s < slots; ++s) row.push_back(rng.between(0, 4));
      }
      return assignment_valuation(weights);
    }
  }
}

struct TrialOutcome {
  bool random_table = false;
  bool single = false;
  bool bounded = false;
  std::optional<std::int64_t> slack;
  json instance;
};

TrialOutcome run_trial(const SuiteConfig& config, std::uint64_t t) {
  Rng rng(derive_seed(config.seed, t));
  const int n = config.falsify_max_n < 2 ? 1 : static_cast<int>(rng.between(2, config.falsify_max_n));
  TrialOutcome out;
  out.random_table = t % 2 == 0;
  SetFn f = out.random_table ? random_table(n, rng)
                             : mutate(random_structured(n, rng), rng.next(),
                                      {rng.between(1, 2), 0.2});
  if (f.dom_empty()) f = f.with_value(0, ExtValue::zero(Mode::Int));
  out.single = check_exc_single(f).passed();
  if (out.single) {
    // Minimum slack >= 0 is exactly the bounded multiple exchange.
    const auto slack = multi_exchange_min_slack(f, true);
    out.bounded = !slack || (!slack->is_neg_inf() && slack->as_int() >= 0);
    if (slack && !slack->is_neg_inf()) out.slack = slack->as_int();
  } else {
    CheckOptions opts;
    opts.seed = derive_seed(config.seed, t);
    out.bounded = check_exc_multi(f, true, opts).passed();
  }
  if (out.single != out.bounded || out.slack) out.instance = to_json(f);
  return out;
}

}  // namespace

int resolve_jobs(std::optional<int> flag, int config_jobs) {
  if (flag) {
    if (*flag < 1) throw ParseError("--jobs must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("DCA_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ParseError(std::string("DCA_JOBS must be a positive integer, got '") + env + "'");
    return static_cast<int>(v);
  }
  return config_jobs;
}

std::vector<Instance> generate_instances(const SuiteConfig& config) {
  const std::vector<json> specs = config.families.empty() ? default_corpus_specs() : config.families;
  std::vector<Instance> out;
  std::map<std::string, int> seen;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const std::uint64_t sub = config.seed ^ k;
    Instance inst = build_family(specs[k], sub);
    if (inst.fn.n() < config.n_min || inst.fn.n() > config.n_max) continue;
    if (config.mode == Mode::Real) inst.fn = to_real(inst.fn);
    inst.meta["seed"] = sub;
    const int dup = seen[inst.id]++;
    if (dup > 0) inst.id += "_" + std::to_string(dup);
    out.push_back(std::move(inst));
  }
  return out;
}

json write_instances(const std::vector<Instance>& instances, const std::filesystem::path& out,
                     const SuiteConfig& config) {
  std::filesystem::create_directories(out);
  json entries = json::array();
  for (const auto& inst : instances) {
    const std::string file = inst.id + ".json";
    store_instance(inst, out / file);
    entries.push_back({{"id", inst.id}, {"file", file}, {"n", inst.fn.n()}, {"mode", to_string(inst.fn.mode())},
                       {"meta", inst.meta}});
  }
  json manifest = {{"seed", config.seed}, {"count", instances.size()}, {"instances", entries}};
  std::ofstream os(out / "manifest.json");
  if (!os) throw ParseError((out / "manifest.json").string() + ": cannot write");
  os << manifest.dump(2) << '\n';
  return manifest;
}

VerificationReport run_suite(Suite suite, const Instance& instance, const SuiteConfig& config,
                             std::uint64_t instance_seed) {
  SetFn f = config.mode == Mode::Real ? to_real(instance.fn) : instance.fn;
  if (f.dom_empty()) throw EmptyDomain("instance '" + instance.id + "' has an empty effective domain");
  const CheckOptions opts = check_options(config, instance_seed);

  VerificationReport report;
  auto needs_mnat = [&]() -> std::optional<VerificationReport> {
    VerificationReport single = check_exc_single(f, opts);
    if (single.passed()) return std::nullopt;
    return skipped(to_string(suite), instance, instance_seed, single);
  };

  switch (suite) {
    case Suite::ExcSingle:
      report = check_exc_single(f, opts);
      break;
    case Suite::ExcMultiBounded:
      report = check_exc_multi(f, true, opts);
      break;
    case Suite::ExcMultiUnbounded:
      report = check_exc_multi(f, false, opts);
      break;
    case Suite::Corollary1:
      report = run_corollary1(f, opts);
      break;
    case Suite::MConcaveLift:
      if (auto skip = needs_mnat()) return *skip;
      report = run_lift(f, opts);
      break;
    case Suite::Fenchel:
      if (auto skip = needs_mnat()) return *skip;
      report = run_fenchel(f, config, instance_seed);
      break;
    case Suite::Lemmas28:
      if (auto skip = needs_mnat()) return *skip;
      report = run_lemmas(f, config, instance_seed);
      break;
    case Suite::DualityGrid:
      if (auto skip = needs_mnat()) return *skip;
      report = run_duality_grid(f, config, instance_seed);
      break;
  }
  report.suite = to_string(suite);
  report.instance_id = instance.id;
  report.seed = instance_seed;
  return report;
}

std::vector<VerificationReport> run_suites(const std::vector<Instance>& instances, const SuiteConfig& config) {
  const std::size_t per = config.suites.size();
  return parallel_map(instances.size() * per, config.jobs, [&](std::size_t k) {
    const std::size_t idx = k / per;
    const Instance& inst = instances[idx];
    try {
      return run_suite(config.suites[k % per], inst, config, config.seed ^ idx);
    } catch (const Falsification& e) {
      VerificationReport r;
      r.suite = to_string(config.suites[k % per]);
      r.instance_id = inst.id;
      r.seed = config.seed ^ idx;
      r.fail({{"reason", e.what()}, {"payload", e.payload()}});
      return r;
    }
  });
}

json FalsifyResult::to_json() const {
  json out = {{"suite", "falsify"},
              {"verdict", passed() ? "PASS" : "FAIL"},
              {"seed", seed},
              {"trials", trials},
              {"random_tables", random_tables},
              {"mutated", mutated},
              {"single_pass", single_pass},
              {"counterexamples", counterexamples},
              {"corollary1_disagreements", disagreements}};
  if (first_counterexample) out["first_counterexample"] = *first_counterexample;
  json hist = json::object();
  for (const auto& [slack, count] : slack_histogram) hist[std::to_string(slack)] = count;
  out["near_miss"] = {{"min_slack", min_slack ? json(*min_slack) : json()},
                      {"slack_histogram", hist},
                      {"tightest", near_misses}};
  return out;
}

FalsifyResult run_falsification(const SuiteConfig& config) {
  const auto outcomes = parallel_map(config.trials, config.jobs,
                                     [&](std::size_t t) { return run_trial(config, t); });
  FalsifyResult res;
  res.seed = config.seed;
  res.trials = config.trials;
  constexpr std::size_t kNearMisses = 10;
  std::vector<std::pair<std::int64_t, std::uint64_t>> tight;
  for (std::uint64_t t = 0; t < outcomes.size(); ++t) {
    const TrialOutcome& o = outcomes[t];
    ++(o.random_table ? res.random_tables : res.mutated);
    if (o.single) ++res.single_pass;
    if (o.single != o.bounded) {
      ++res.disagreements;
      if (o.single) {
        ++res.counterexamples;
        if (!res.first_counterexample) res.first_counterexample = json{{"trial", t}, {"instance", o.instance}};
      }
    }
    if (o.slack) {
      ++res.slack_histogram[*o.slack];
      if (!res.min_slack || *o.slack < *res.min_slack) res.min_slack = *o.slack;
      tight.emplace_back(*o.slack, t);
    }
  }
  std::sort(tight.begin(), tight.end());
  if (tight.size() > kNearMisses) tight.resize(kNearMisses);
  for (const auto& [slack, t] : tight) {
    res.near_misses.push_back({{"trial", t}, {"slack", slack}, {"instance", outcomes[t].instance}});
  }
  return res;
}

}  // namespace dca
