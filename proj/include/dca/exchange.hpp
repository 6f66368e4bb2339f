#pragma once

#include <cstdint>
#include <optional>

#include <json.hpp>

#include "dca/matroid.hpp"
#include "dca/report.hpp"
#include "dca/set_fn.hpp"

namespace dca {

// (X, Y, I) with I ⊆ X \ Y, plus the derived parts
// C = X ∩ Y, X0 = X \ Y, Y0 = Y \ X.
struct ExchangeContext {
  Subset x = 0;
  Subset y = 0;
  Subset i = 0;

  // Throws PreconditionViolation unless I ⊆ X \ Y.
  static ExchangeContext make(Subset x, Subset y, Subset i);

  Subset common() const noexcept { return x & y; }
  Subset x_only() const noexcept { return x & ~y; }
  Subset y_only() const noexcept { return y & ~x; }

  nlohmann::json to_json() const;
};

// Certificate for one exchange inequality lhs <= rhs.
//   Drop:    f(X-i) + f(Y+i)
//   Swap(j): f(X-i+j) + f(Y+i-j); augment_lt reuses it for f(X+j) + f(Y-j)
//   Multi(J): f((X\I) ∪ J) + f((Y\J) ∪ I)
struct ExchangeWitness {
  enum class Kind { Drop, Swap, Multi };

  Kind kind = Kind::Drop;
  int j = 0;
  Subset set_j = 0;
  ExtValue lhs;
  ExtValue rhs;

  // Size of the exchanged set: 0 for Drop, 1 for Swap, |J| for Multi.
  int size() const noexcept;
  nlohmann::json to_json() const;
};

struct CheckOptions {
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  // Sample count when the sampled regime runs.
  std::uint64_t samples = 10000;
  // Exhaustive when the estimated evaluation count stays within this budget.
  double exhaustive_budget = 1e8;
  std::optional<Regime> force_regime;
};

// Best of the drop and swap options for (X, Y, i), whether or not it reaches
// f(X) + f(Y). Ties prefer Drop, then the smallest j. Precondition: i ∈ X \ Y.
ExchangeWitness best_single_option(const SetFn& f, Subset x, Subset y, int i);
std::optional<ExchangeWitness> find_single_exchange(const SetFn& f, Subset x, Subset y, int i,
                                                    double tol = kDefaultTolerance);

// Best J ⊆ Y \ X (|J| <= |I| when bounded). Ties prefer smaller |J|, then the
// lexicographically smaller element list. Precondition: I ⊆ X \ Y.
ExchangeWitness best_multi_option(const SetFn& f, Subset x, Subset y, Subset i, bool bounded);
std::optional<ExchangeWitness> find_multi_exchange(const SetFn& f, Subset x, Subset y, Subset i, bool bounded,
                                                   double tol = kDefaultTolerance);

// Single exchange property over all (X, Y, i); the first violation in
// lexicographic (X, Y, i) order is reported.
VerificationReport check_exc_single(const SetFn& f, const CheckOptions& options = {});

// Multiple exchange property (bounded: |J| <= |I|) over all (X, Y, I) with
// X, Y ∈ dom f, or over sampled triples when the exhaustive cost estimate
// 4^n * 2^max|Y0| exceeds the budget.
VerificationReport check_exc_multi(const SetFn& f, bool bounded, const CheckOptions& options = {});

// Equi-cardinal domain plus the valuated-matroid exchange (swap only).
VerificationReport check_m_concave(const SetFn& f, const CheckOptions& options = {});

// Best j ∈ Y \ X for f(X) + f(Y) <= f(X-i+j) + f(Y+i-j), if it holds.
// Preconditions: X, Y ∈ dom f, |X| <= |Y|, i ∈ X \ Y.
std::optional<ExchangeWitness> exchange_leq(const SetFn& f, Subset x, Subset y, int i,
                                            double tol = kDefaultTolerance);
// Best j ∈ Y \ X for f(X) + f(Y) <= f(X+j) + f(Y-j), if it holds.
// Preconditions: X, Y ∈ dom f, |X| < |Y|.
std::optional<ExchangeWitness> augment_lt(const SetFn& f, Subset x, Subset y, double tol = kDefaultTolerance);

// exchange_leq / augment_lt over every eligible configuration in dom f.
VerificationReport check_exchange_leq(const SetFn& f, const CheckOptions& options = {});
VerificationReport check_augment_lt(const SetFn& f, const CheckOptions& options = {});

// Pads f with r - s dummy elements (r, s = max, min cardinality in dom f):
// f̂(Z) = f(Z ∩ N) when |Z| = r, NEG_INF otherwise.
SetFn lift(const SetFn& f);

// J ⊆ Y \ X such that (X \ I) ∪ J and (Y \ J) ∪ I are both bases, found via
// the bounded multiple exchange on the basis indicator. Throws Falsification
// if none exists or |J| != |I|.
Subset matroid_base_multi_exchange(const Matroid& m, Subset x, Subset y, Subset i);

// Minimum over X, Y ∈ dom f and nonempty I ⊆ X \ Y of
// (best rhs - (f(X) + f(Y))). Negative or NEG_INF means the property fails;
// nullopt when no such context exists. Integer mode only.
std::optional<ExtValue> multi_exchange_min_slack(const SetFn& f, bool bounded);

}  // namespace dca
