#include "dca/matroid.hpp"

#include <algorithm>
#include <numeric>

#include "dca/errors.hpp"
#include "dca/set_fn.hpp"

namespace dca {

namespace {

constexpr int kMaxGraphVertices = 6;

int find_root(std::vector<int>& parent, int v) {
  while (parent[static_cast<std::size_t>(v)] != v) {
    parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    v = parent[static_cast<std::size_t>(v)];
  }
  return v;
}

}  // namespace

bool satisfies_rank_axioms(int n, const std::vector<int>& rank) {
  if (rank.size() != (std::size_t{1} << n)) return false;
  if (rank[0] != 0) return false;
  for (Subset x = 0; x < rank.size(); ++x) {
    for (int i = 1; i <= n; ++i) {
      if (contains(x, i)) continue;
      const int step = rank[x | bit_of(i)] - rank[x];
      if (step < 0 || step > 1) return false;
      for (int j = i + 1; j <= n; ++j) {
        if (contains(x, j)) continue;
        if (rank[x | bit_of(i)] + rank[x | bit_of(j)] < rank[x | bit_of(i) | bit_of(j)] + rank[x]) return false;
      }
    }
  }
  return true;
}

Matroid::Matroid(int n, std::vector<int> rank, nlohmann::json description)
    : n_(n), rank_(std::move(rank)), description_(std::move(description)) {}

Matroid Matroid::from_rank_table(int n, std::vector<int> rank, nlohmann::json description) {
  SetFn::check_ground(n);
  if (!satisfies_rank_axioms(n, rank)) throw InvalidInstance("rank table violates the matroid rank axioms");
  if (description.is_null()) description = {{"kind", "table"}, {"n", n}};
  return Matroid(n, std::move(rank), std::move(description));
}

Matroid Matroid::uniform(int n, int r) {
  SetFn::check_ground(n);
  if (r < 0 || r > n) throw InvalidInstance("uniform matroid needs 0 <= r <= n");
  std::vector<int> rank(std::size_t{1} << n);
  for (Subset s = 0; s < rank.size(); ++s) rank[s] = std::min(cardinality(s), r);
  return from_rank_table(n, std::move(rank), {{"kind", "uniform"}, {"n", n}, {"r", r}});
}

Matroid Matroid::partition(int n, const std::vector<std::vector<int>>& blocks, const std::vector<int>& caps) {
  SetFn::check_ground(n);
  if (blocks.size() != caps.size()) throw InvalidInstance("partition matroid needs one cap per block");
  std::vector<Subset> masks;
  Subset seen = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Subset m = from_elements(blocks[b], n);
    if ((m & seen) != 0) throw InvalidInstance("partition matroid blocks overlap");
    if (caps[b] < 0) throw InvalidInstance("partition matroid cap is negative");
    seen |= m;
    masks.push_back(m);
  }
  std::vector<int> rank(std::size_t{1} << n);
  for (Subset s = 0; s < rank.size(); ++s) {
    int r = 0;
    for (std::size_t b = 0; b < masks.size(); ++b) r += std::min(cardinality(s & masks[b]), caps[b]);
    rank[s] = r;
  }
  return from_rank_table(n, std::move(rank), {{"kind", "partition"}, {"n", n}, {"blocks", blocks}, {"caps", caps}});
}

Matroid Matroid::graphic(int vertices, const std::vector<std::pair<int, int>>& edges) {
  if (vertices < 1 || vertices > kMaxGraphVertices) {
    throw InvalidInstance("graphic matroid supports 1.." + std::to_string(kMaxGraphVertices) + " vertices");
  }
  const int n = static_cast<int>(edges.size());
  SetFn::check_ground(n);
  for (const auto& [u, v] : edges) {
    if (u < 1 || u > vertices || v < 1 || v > vertices) throw InvalidInstance("edge endpoint outside vertex range");
  }
  std::vector<int> rank(std::size_t{1} << n);
  std::vector<int> parent(static_cast<std::size_t>(vertices) + 1);
  for (Subset s = 0; s < rank.size(); ++s) {
    std::iota(parent.begin(), parent.end(), 0);
    int forest = 0;
    for (int e = 1; e <= n; ++e) {
      if (!contains(s, e)) continue;
      const int a = find_root(parent, edges[static_cast<std::size_t>(e - 1)].first);
      const int b = find_root(parent, edges[static_cast<std::size_t>(e - 1)].second);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        ++forest;
      }
    }
    rank[s] = forest;
  }
  nlohmann::json edge_list = nlohmann::json::array();
  for (const auto& [u, v] : edges) edge_list.push_back({u, v});
  return from_rank_table(n, std::move(rank), {{"kind", "graphic"}, {"vertices", vertices}, {"edges", edge_list}});
}

std::vector<Subset> Matroid::bases() const {
  std::vector<Subset> out;
  for (Subset s = 0; s < rank_.size(); ++s) {
    if (is_basis(s)) out.push_back(s);
  }
  return out;
}

}  // namespace dca
