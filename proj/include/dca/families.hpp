#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "dca/matroid.hpp"
#include "dca/price_vector.hpp"
#include "dca/rng.hpp"
#include "dca/set_fn.hpp"
#include "dca/setfn_io.hpp"

namespace dca {

// f(X) = rank(X). Integer mode, full domain.
SetFn matroid_rank_fn(const Matroid& m);

// f(B) = w(B) on bases, NEG_INF elsewhere. The mode follows w.
SetFn weighted_basis_valuation(const Matroid& m, const PriceVector& w);

struct LaminarMember {
  Subset set;
  // phi[k] is the contribution when |X ∩ set| = k, for k = 0..|set|.
  std::vector<std::int64_t> phi;
};

struct LaminarSpec {
  int n = 0;
  std::vector<LaminarMember> members;
};

// Throws InvalidInstance for crossing members, wrong table lengths, or a
// table with increasing differences.
void validate(const LaminarSpec& spec);

// A random chain of nested sets plus random singletons, each with a concave
// table whose first step is at most max_step.
LaminarSpec random_laminar(int n, Rng& rng, std::int64_t max_step);

// f(X) = sum over members A of phi_A(|X ∩ A|).
SetFn laminar_concave_fn(const LaminarSpec& spec);

// weights[item][slot] >= 0. f(X) = maximum weight of a matching of the items
// in X into slots, each slot used at most once.
SetFn assignment_valuation(const std::vector<std::vector<std::int64_t>>& weights);

struct MutationOptions {
  std::int64_t magnitude = 1;
  // Probability that the chosen entry is toggled to/from NEG_INF instead of
  // being shifted by ±magnitude.
  double toggle_probability = 0.0;
};

// One uniformly chosen entry perturbed; deterministic per seed. Integer mode.
SetFn mutate(const SetFn& f, std::uint64_t seed, const MutationOptions& options = {});

struct RandomTableOptions {
  std::int64_t lo = -5;
  std::int64_t hi = 5;
  double neg_inf_probability = 0.2;
  // Redraw an entry until dom f is nonempty.
  bool require_nonempty_dom = true;
};

// Arbitrary integer-valued table, not expected to be M♮-concave.
SetFn random_table(int n, Rng& rng, const RandomTableOptions& options = {});

// Draws candidate tables until one satisfies the single exchange property.
// Only supported for n <= 4; returns nullopt when max_attempts runs out.
std::optional<SetFn> rejection_sample(int n, std::uint64_t seed, int max_attempts = 100000);

// Builds an instance from a family description such as
//   {"family": "uniform", "n": 4, "r": 2}
// Supported tags: uniform, partition, graphic, weighted_basis, laminar,
// assignment, constant, rejection, mutated. `seed` feeds the seeded ones.
Instance build_family(const nlohmann::json& spec, std::uint64_t seed);

// Matroid described by {"kind": "uniform"|"partition"|"graphic", ...}.
Matroid matroid_from_json(const nlohmann::json& spec);

// Family descriptions of the fixed test corpus (n = 3..8).
std::vector<nlohmann::json> default_corpus_specs();
std::vector<Instance> default_corpus();
// The matroids underlying the corpus' rank and weighted-basis instances.
std::vector<Matroid> corpus_matroids();

}  // namespace dca
