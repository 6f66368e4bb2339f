#include "dca/exchange.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "dca/errors.hpp"
#include "dca/families.hpp"
#include "dca/rng.hpp"

namespace dca {

using nlohmann::json;

namespace {

json subset_json(Subset s) { return to_elements(s); }

void require_nonempty(const SetFn& f) {
  if (f.dom_empty()) throw EmptyDomain("exchange checks need a nonempty effective domain");
}

void require_in_ground(const SetFn& f, Subset s, const char* name) {
  if (!is_subset_of(s, f.ground())) throw PreconditionViolation(std::string(name) + " lies outside the ground set");
}

// Largest |Y \ X| over X, Y ∈ dom f, or n when dom f is too large to scan.
int max_y_only(const SetFn& f, const std::vector<Subset>& dom) {
  if (dom.size() > 4096) return f.n();
  int best = 0;
  for (Subset x : dom) {
    for (Subset y : dom) best = std::max(best, cardinality(y & ~x));
  }
  return best;
}

Regime choose_regime(double estimate, const CheckOptions& options) {
  if (options.force_regime) return *options.force_regime;
  return estimate <= options.exhaustive_budget ? Regime::Exhaustive : Regime::Sampled;
}

Subset random_submask(Subset mask, Rng& rng) {
  Subset out = 0;
  for (Subset rest = mask; rest != 0; rest &= rest - 1) {
    if (rng.next() & 1u) out |= rest & (~rest + 1);
  }
  return out;
}

ExchangeWitness swap_witness(int j, ExtValue lhs, ExtValue rhs) {
  ExchangeWitness w;
  w.kind = ExchangeWitness::Kind::Swap;
  w.j = j;
  w.set_j = bit_of(j);
  w.lhs = lhs;
  w.rhs = rhs;
  return w;
}

}  // namespace

ExchangeContext ExchangeContext::make(Subset x, Subset y, Subset i) {
  if (!is_subset_of(i, x & ~y)) throw PreconditionViolation("I must be a subset of X \\ Y");
  return ExchangeContext{x, y, i};
}

json ExchangeContext::to_json() const { return {{"X", subset_json(x)}, {"Y", subset_json(y)}, {"I", subset_json(i)}}; }

int ExchangeWitness::size() const noexcept {
  switch (kind) {
    case Kind::Drop:
      return 0;
    case Kind::Swap:
      return 1;
    case Kind::Multi:
      return cardinality(set_j);
  }
  return 0;
}

json ExchangeWitness::to_json() const {
  json out;
  switch (kind) {
    case Kind::Drop:
      out["kind"] = "drop";
      break;
    case Kind::Swap:
      out["kind"] = "swap";
      out["j"] = j;
      break;
    case Kind::Multi:
      out["kind"] = "multi";
      out["J"] = subset_json(set_j);
      break;
  }
  out["lhs"] = dca::to_json(lhs);
  out["rhs"] = dca::to_json(rhs);
  return out;
}

ExchangeWitness best_single_option(const SetFn& f, Subset x, Subset y, int i) {
  require_in_ground(f, x | y, "X ∪ Y");
  if (i < 1 || i > f.n() || !contains(x, i) || contains(y, i)) throw PreconditionViolation("i must lie in X \\ Y");
  const Subset bi = bit_of(i);
  ExchangeWitness best;
  best.kind = ExchangeWitness::Kind::Drop;
  best.lhs = ext_add(f(x), f(y));
  best.rhs = ext_add(f(x & ~bi), f(y | bi));
  for (Subset rest = y & ~x; rest != 0; rest &= rest - 1) {
    const Subset bj = rest & (~rest + 1);
    const ExtValue v = ext_add(f((x & ~bi) | bj), f((y | bi) & ~bj));
    if (v > best.rhs) best = swap_witness(min_element(bj), best.lhs, v);
  }
  return best;
}

std::optional<ExchangeWitness> find_single_exchange(const SetFn& f, Subset x, Subset y, int i, double tol) {
  ExchangeWitness w = best_single_option(f, x, y, i);
  if (ext_leq(w.lhs, w.rhs, tol)) return w;
  return std::nullopt;
}

ExchangeWitness best_multi_option(const SetFn& f, Subset x, Subset y, Subset i, bool bounded) {
  require_in_ground(f, x | y, "X ∪ Y");
  const auto ctx = ExchangeContext::make(x, y, i);
  const int bound = bounded ? cardinality(i) : f.n();
  const Subset x_kept = x & ~i;
  ExchangeWitness best;
  best.kind = ExchangeWitness::Kind::Multi;
  best.lhs = ext_add(f(x), f(y));
  best.rhs = ExtValue::neg_inf();
  bool have = false;
  for_each_submask(ctx.y_only(), [&](Subset j) {
    if (cardinality(j) > bound) return;
    const ExtValue v = ext_add(f(x_kept | j), f((y & ~j) | i));
    if (!have || v > best.rhs || (v == best.rhs && size_lex_less(j, best.set_j))) {
      best.rhs = v;
      best.set_j = j;
      have = true;
    }
  });
  return best;
}

std::optional<ExchangeWitness> find_multi_exchange(const SetFn& f, Subset x, Subset y, Subset i, bool bounded,
                                                   double tol) {
  ExchangeWitness w = best_multi_option(f, x, y, i, bounded);
  if (ext_leq(w.lhs, w.rhs, tol)) return w;
  return std::nullopt;
}

VerificationReport check_exc_single(const SetFn& f, const CheckOptions& options) {
  require_nonempty(f);
  VerificationReport report;
  report.suite = "exc_single";
  report.seed = options.seed;
  const auto dom = effective_domain(f);
  for (Subset x : dom) {
    for (Subset y : dom) {
      for (Subset rest = x & ~y; rest != 0; rest &= rest - 1) {
        const int i = min_element(rest);
        const ExchangeWitness w = best_single_option(f, x, y, i);
        ++report.triples_checked;
        if (!ext_leq(w.lhs, w.rhs, options.tol)) {
          report.fail({{"X", subset_json(x)}, {"Y", subset_json(y)}, {"i", i}, {"lhs", to_json(w.lhs)},
                       {"best_rhs", to_json(w.rhs)}});
          return report;
        }
        ++report.witness_histogram[w.size()];
      }
    }
  }
  return report;
}

VerificationReport check_exc_multi(const SetFn& f, bool bounded, const CheckOptions& options) {
  require_nonempty(f);
  VerificationReport report;
  report.suite = bounded ? "exc_multi_bounded" : "exc_multi_unbounded";
  report.seed = options.seed;
  const auto dom = effective_domain(f);
  const double estimate = std::pow(4.0, f.n()) * std::pow(2.0, max_y_only(f, dom));
  report.regime = choose_regime(estimate, options);

  auto visit = [&](Subset x, Subset y, Subset i) {
    const ExchangeWitness w = best_multi_option(f, x, y, i, bounded);
    ++report.triples_checked;
    if (!ext_leq(w.lhs, w.rhs, options.tol)) {
      report.fail({{"X", subset_json(x)}, {"Y", subset_json(y)}, {"I", subset_json(i)}, {"lhs", to_json(w.lhs)},
                   {"best_rhs", to_json(w.rhs)}, {"best_J", subset_json(w.set_j)}});
      return false;
    }
    ++report.witness_histogram[w.size()];
    return true;
  };

  if (report.regime == Regime::Exhaustive) {
    for (Subset x : dom) {
      for (Subset y : dom) {
        bool ok = true;
        for_each_submask(x & ~y, [&](Subset i) {
          if (ok) ok = visit(x, y, i);
        });
        if (!ok) return report;
      }
    }
    return report;
  }

  Rng rng(options.seed);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    const Subset x = dom[rng.below(dom.size())];
    const Subset y = dom[rng.below(dom.size())];
    if (!visit(x, y, random_submask(x & ~y, rng))) break;
  }
  return report;
}

VerificationReport check_m_concave(const SetFn& f, const CheckOptions& options) {
  require_nonempty(f);
  VerificationReport report;
  report.suite = "m_concave";
  report.seed = options.seed;
  const auto dom = effective_domain(f);
  for (Subset x : dom) {
    if (cardinality(x) != cardinality(dom.front())) {
      report.fail({{"reason", "domain not equi-cardinal"}, {"X", subset_json(dom.front())}, {"Y", subset_json(x)}});
      return report;
    }
  }
  // Generic check of one (X, Y, i); stops at the first sufficient j, since
  // the full maximum is only needed for a counterexample.
  auto swap_ok = [&](Subset x, Subset y, Subset bi) {
    const ExtValue lhs = ext_add(f(x), f(y));
    ExtValue best = ExtValue::neg_inf();
    for (Subset rest_j = y & ~x; rest_j != 0; rest_j &= rest_j - 1) {
      const Subset bj = rest_j & (~rest_j + 1);
      const ExtValue v = ext_add(f((x & ~bi) | bj), f((y | bi) & ~bj));
      if (v > best) best = v;
      if (ext_leq(lhs, v, options.tol)) return true;
    }
    report.fail({{"reason", "exchange violated"}, {"X", subset_json(x)}, {"Y", subset_json(y)},
                 {"i", min_element(bi)}, {"lhs", to_json(lhs)}, {"best_rhs", to_json(best)}});
    return false;
  };

  // Integer tables with moderate entries use plain int64 arithmetic; pair
  // sums cannot overflow below 2^61.
  constexpr std::int64_t kAbsent = INT64_MIN;
  constexpr std::int64_t kLimit = std::int64_t{1} << 61;
  std::vector<std::int64_t> table;
  if (f.mode() == Mode::Int) {
    table.assign(f.size(), kAbsent);
    for (Subset x : dom) {
      const std::int64_t v = f(x).as_int();
      if (v <= -kLimit || v >= kLimit) {
        table.clear();
        break;
      }
      table[x] = v;
    }
  }

  for (Subset x : dom) {
    for (Subset y : dom) {
      const Subset y0 = y & ~x;
      for (Subset rest_i = x & ~y; rest_i != 0; rest_i &= rest_i - 1) {
        const Subset bi = rest_i & (~rest_i + 1);
        ++report.triples_checked;
        bool ok = false;
        if (!table.empty()) {
          const std::int64_t lhs = table[x] + table[y];
          const Subset xi = x & ~bi;
          const Subset yi = y | bi;
          for (Subset rest_j = y0; rest_j != 0 && !ok; rest_j &= rest_j - 1) {
            const Subset bj = rest_j & (~rest_j + 1);
            const std::int64_t a = table[xi | bj];
            const std::int64_t b = table[yi & ~bj];
            ok = a != kAbsent && b != kAbsent && a + b >= lhs;
          }
        }
        if (!ok && !swap_ok(x, y, bi)) return report;
        ++report.witness_histogram[1];
      }
    }
  }
  return report;
}

std::optional<ExchangeWitness> exchange_leq(const SetFn& f, Subset x, Subset y, int i, double tol) {
  require_in_ground(f, x | y, "X ∪ Y");
  if (!f.in_dom(x) || !f.in_dom(y)) throw PreconditionViolation("X and Y must lie in dom f");
  if (cardinality(x) > cardinality(y)) throw PreconditionViolation("exchange_leq needs |X| <= |Y|");
  if (i < 1 || i > f.n() || !contains(x, i) || contains(y, i)) throw PreconditionViolation("i must lie in X \\ Y");
  const Subset bi = bit_of(i);
  const ExtValue lhs = ext_add(f(x), f(y));
  std::optional<ExchangeWitness> best;
  for (Subset rest = y & ~x; rest != 0; rest &= rest - 1) {
    const Subset bj = rest & (~rest + 1);
    const ExtValue v = ext_add(f((x & ~bi) | bj), f((y | bi) & ~bj));
    if (!best || v > best->rhs) best = swap_witness(min_element(bj), lhs, v);
  }
  if (best && ext_leq(lhs, best->rhs, tol)) return best;
  return std::nullopt;
}

std::optional<ExchangeWitness> augment_lt(const SetFn& f, Subset x, Subset y, double tol) {
  require_in_ground(f, x | y, "X ∪ Y");
  if (!f.in_dom(x) || !f.in_dom(y)) throw PreconditionViolation("X and Y must lie in dom f");
  if (cardinality(x) >= cardinality(y)) throw PreconditionViolation("augment_lt needs |X| < |Y|");
  const ExtValue lhs = ext_add(f(x), f(y));
  std::optional<ExchangeWitness> best;
  for (Subset rest = y & ~x; rest != 0; rest &= rest - 1) {
    const Subset bj = rest & (~rest + 1);
    const ExtValue v = ext_add(f(x | bj), f(y & ~bj));
    if (!best || v > best->rhs) best = swap_witness(min_element(bj), lhs, v);
  }
  if (best && ext_leq(lhs, best->rhs, tol)) return best;
  return std::nullopt;
}

VerificationReport check_exchange_leq(const SetFn& f, const CheckOptions& options) {
  require_nonempty(f);
  VerificationReport report;
  report.suite = "exchange_leq";
  report.seed = options.seed;
  const auto dom = effective_domain(f);
  auto visit = [&](Subset x, Subset y, int i) {
    ++report.triples_checked;
    const auto w = exchange_leq(f, x, y, i, options.tol);
    if (!w) {
      report.fail({{"X", subset_json(x)}, {"Y", subset_json(y)}, {"i", i}});
      return false;
    }
    ++report.witness_histogram[1];
    return true;
  };
  const double estimate = std::pow(4.0, f.n()) * f.n() * f.n();
  report.regime = choose_regime(estimate, options);
  if (report.regime == Regime::Exhaustive) {
    for (Subset x : dom) {
      for (Subset y : dom) {
        if (cardinality(x) > cardinality(y)) continue;
        for (Subset rest = x & ~y; rest != 0; rest &= rest - 1) {
          if (!visit(x, y, min_element(rest))) return report;
        }
      }
    }
    return report;
  }
  Rng rng(options.seed);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    Subset x = dom[rng.below(dom.size())];
    Subset y = dom[rng.below(dom.size())];
    if (cardinality(x) > cardinality(y)) std::swap(x, y);
    const Subset choices = x & ~y;
    if (choices == 0) continue;
    const auto elems = to_elements(choices);
    if (!visit(x, y, elems[rng.below(elems.size())])) break;
  }
  return report;
}

VerificationReport check_augment_lt(const SetFn& f, const CheckOptions& options) {
  require_nonempty(f);
  VerificationReport report;
  report.suite = "augment_lt";
  report.seed = options.seed;
  const auto dom = effective_domain(f);
  auto visit = [&](Subset x, Subset y) {
    ++report.triples_checked;
    const auto w = augment_lt(f, x, y, options.tol);
    if (!w) {
      report.fail({{"X", subset_json(x)}, {"Y", subset_json(y)}});
      return false;
    }
    ++report.witness_histogram[1];
    return true;
  };
  const double estimate = std::pow(4.0, f.n()) * f.n();
  report.regime = choose_regime(estimate, options);
  if (report.regime == Regime::Exhaustive) {
    for (Subset x : dom) {
      for (Subset y : dom) {
        if (cardinality(x) < cardinality(y) && !visit(x, y)) return report;
      }
    }
    return report;
  }
  Rng rng(options.seed);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    Subset x = dom[rng.below(dom.size())];
    Subset y = dom[rng.below(dom.size())];
    if (cardinality(x) > cardinality(y)) std::swap(x, y);
    if (cardinality(x) < cardinality(y) && !visit(x, y)) break;
  }
  return report;
}

SetFn lift(const SetFn& f) {
  const auto [s, r] = dom_cardinality_range(f);
  const int padded = f.n() + (r - s);
  if (padded > SetFn::kMaxGround) {
    throw CapExceeded("lifted ground set of size " + std::to_string(padded) + " exceeds the cap");
  }
  const Subset original = f.ground();
  return SetFn::tabulate(padded, f.mode(), [&, r = r](Subset z) {
    return cardinality(z) == r ? f(z & original) : ExtValue::neg_inf();
  });
}

Subset matroid_base_multi_exchange(const Matroid& m, Subset x, Subset y, Subset i) {
  if (!m.is_basis(x) || !m.is_basis(y)) throw PreconditionViolation("X and Y must be bases");
  const SetFn indicator = weighted_basis_valuation(m, PriceVector::zeros(m.n(), Mode::Int));
  const auto w = find_multi_exchange(indicator, x, y, i, true);
  const json where = {{"X", subset_json(x)}, {"Y", subset_json(y)}, {"I", subset_json(i)}};
  if (!w) throw Falsification("no exchangeable J for matroid bases", where);
  if (cardinality(w->set_j) != cardinality(i)) {
    json payload = where;
    payload["J"] = subset_json(w->set_j);
    throw Falsification("exchanged J has |J| != |I|", payload);
  }
  return w->set_j;
}

std::optional<ExtValue> multi_exchange_min_slack(const SetFn& f, bool bounded) {
  if (f.mode() != Mode::Int) throw ModeMismatch("slack is only defined in integer mode");
  require_nonempty(f);
  const auto dom = effective_domain(f);
  std::optional<ExtValue> worst;
  for (Subset x : dom) {
    for (Subset y : dom) {
      for_each_submask(x & ~y, [&](Subset i) {
        if (i == 0) return;
        const ExchangeWitness w = best_multi_option(f, x, y, i, bounded);
        const ExtValue slack = w.rhs.is_neg_inf() ? w.rhs : ext_sub(w.rhs, w.lhs);
        if (!worst || slack < *worst) worst = slack;
      });
    }
  }
  return worst;
}

}  // namespace dca
