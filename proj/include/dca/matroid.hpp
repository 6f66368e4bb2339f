#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dca/subset.hpp"

namespace dca {

// A matroid on {1..n}, stored as its rank table over all 2^n subsets.
// Construction verifies the rank axioms exhaustively.
class Matroid {
 public:
  static Matroid uniform(int n, int r);
  // blocks must be pairwise disjoint; elements in no block are loops.
  static Matroid partition(int n, const std::vector<std::vector<int>>& blocks, const std::vector<int>& caps);
  // Cycle matroid of a multigraph on vertices 1..vertices (at most 6); edge e
  // is ground element e.
  static Matroid graphic(int vertices, const std::vector<std::pair<int, int>>& edges);
  // Throws InvalidInstance if the table violates the rank axioms.
  static Matroid from_rank_table(int n, std::vector<int> rank, nlohmann::json description = {});

  int n() const noexcept { return n_; }
  int rank(Subset s) const { return rank_.at(s); }
  int rank() const { return rank_.back(); }
  bool independent(Subset s) const { return rank(s) == cardinality(s); }
  bool is_basis(Subset s) const { return cardinality(s) == rank() && independent(s); }
  std::vector<Subset> bases() const;
  // Family kind and parameters, for instance metadata.
  const nlohmann::json& description() const noexcept { return description_; }

 private:
  Matroid(int n, std::vector<int> rank, nlohmann::json description);

  int n_;
  std::vector<int> rank_;
  nlohmann::json description_;
};

// Exhaustive rank-axiom check: r(∅)=0, unit increase, local submodularity.
bool satisfies_rank_axioms(int n, const std::vector<int>& rank);

}  // namespace dca
