#pragma once

#include <cstdint>
#include <optional>

#include <json.hpp>

#include "dca/exchange.hpp"
#include "dca/price_vector.hpp"
#include "dca/report.hpp"
#include "dca/set_fn.hpp"

namespace dca {

// g(p) = max_Z { f(Z) - p(Z) } together with its smallest-bitmask maximizer.
struct ConjugateEval {
  PriceVector price;
  ExtValue value;
  Subset argmax = 0;
};

// Throws EmptyDomain when dom f is empty.
ConjugateEval conjugate(const SetFn& f, const PriceVector& p);
// Conjugate of restrict_by_size(f, k). Throws EmptyDomain when dom f has no
// member of size <= k.
ConjugateEval conjugate_sized(const SetFn& f, int k, const PriceVector& p);

// Integer price grid [lo, hi]^n. Without sample_pairs every pair of grid
// points is visited; otherwise that many seeded random pairs are drawn.
struct PriceGrid {
  std::int64_t lo = -3;
  std::int64_t hi = 3;
  std::optional<std::uint64_t> sample_pairs;
  std::uint64_t seed = 0;

  // [-3, 3]^n, exhaustive for n <= 4 and 10^4 sampled pairs beyond.
  static PriceGrid default_for(int n, std::uint64_t seed = 0);
};

// g(p) + g(p') >= g(p ∨ p') + g(p ∧ p') for g and for the size-k conjugate g̃.
VerificationReport check_conjugate_submodular(const SetFn& f, int k, const PriceGrid& grid,
                                              double tol = kDefaultTolerance);
// g̃(p) + g(q) >= g̃(p ∧ q) + g(p ∨ q).
VerificationReport check_cross_submodular(const SetFn& f, int k, const PriceGrid& grid,
                                          double tol = kDefaultTolerance);
// g̃(p) - g̃(q) >= g(p) - g(q) whenever p >= q.
VerificationReport check_strong_quotient(const SetFn& f, int k, const PriceGrid& grid,
                                         double tol = kDefaultTolerance);

// For J ⊆ Y0 (re-indexed 1..|Y0| in increasing element order):
//   f1(J)  = f((X \ I) ∪ J)
//   f̃1(J) = f1(J) restricted to |J| <= |I|
//   f2(J)  = f((Y \ J) ∪ I)
struct RestrictionTriple {
  ExchangeContext context;
  SetFn f1;
  SetFn f1_sized;
  SetFn f2;
};

// Throws Falsification if any of the three domains is empty.
RestrictionTriple build_restrictions(const SetFn& f, const ExchangeContext& ctx);

struct FenchelResult {
  ExtValue primal;
  // Smallest g1(q) + g2(-q) found over the integer box.
  ExtValue dual;
  // dual - primal; absent when the primal is NEG_INF.
  std::optional<ExtValue> gap;
  PriceVector best_q;
  // Set when best_q attains the primal value (exactly in integer mode).
  bool attained = false;
  std::int64_t box = 0;
  // best_q touches the box boundary; a larger box may do better.
  bool boundary = false;
  // Exact certification; only possible in integer mode.
  bool certified = false;
  // No scanned q had g1(q) + g2(-q) below the primal.
  bool weak_duality = true;
  std::uint64_t points_scanned = 0;

  nlohmann::json to_json() const;
};

// spread(f1) + spread(f2) + 1, rounded up in real mode.
std::int64_t default_dual_box(const SetFn& f1, const SetFn& f2);

// Primal max_J f1(J) + f2(J) by enumeration; dual by scanning integer
// q ∈ [-L, L]^n in shells of increasing max-norm, stopping at the first q
// that attains the primal value.
FenchelResult fenchel_gap(const SetFn& f1, const SetFn& f2, std::optional<std::int64_t> box = std::nullopt,
                          double tol = kDefaultTolerance);

// g̃1(q) + g2(-q) >= f(X) + f(Y) for integer q in [-box, box]^|Y0|, all of
// them when there are at most max_points, else max_points seeded samples.
VerificationReport check_lemma6_bound(const SetFn& f, const ExchangeContext& ctx, std::int64_t box = 3,
                                      std::uint64_t max_points = 20000, std::uint64_t seed = 0,
                                      double tol = kDefaultTolerance);

}  // namespace dca
