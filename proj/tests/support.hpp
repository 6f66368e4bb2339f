#pragma once

// Helpers and brute-force oracles shared by the unit tests. The oracles are
// written straight from the definitions and deliberately share no code with
// the library's checkers.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dca/ext_value.hpp"
#include "dca/set_fn.hpp"
#include "dca/subset.hpp"

namespace testing {

using dca::ExtValue;
using dca::Mode;
using dca::SetFn;
using dca::Subset;

inline constexpr std::optional<std::int64_t> X = std::nullopt;

// Integer SetFn from a value list indexed by bitmask; X marks NEG_INF.
inline SetFn table(int n, std::vector<std::optional<std::int64_t>> values) {
  std::vector<ExtValue> out;
  for (const auto& v : values) out.push_back(v ? ExtValue::integer(*v) : ExtValue::neg_inf());
  return SetFn(n, Mode::Int, std::move(out));
}

inline Subset S(std::initializer_list<int> elements) {
  Subset s = 0;
  for (int e : elements) s |= Subset{1} << (e - 1);
  return s;
}

// Integer-only arithmetic on optional values (nullopt = NEG_INF).
using Val = std::optional<std::int64_t>;

inline Val value_of(const SetFn& f, Subset s) {
  return f(s).is_finite() ? Val(f(s).as_int()) : std::nullopt;
}

inline Val plus(Val a, Val b) { return (a && b) ? Val(*a + *b) : std::nullopt; }

// a <= b with NEG_INF as the least element.
inline bool leq(Val a, Val b) { return !a || (b && *a <= *b); }

inline std::vector<Subset> all_subsets_of(Subset mask) {
  std::vector<Subset> out;
  for (Subset s = 0; s <= mask; ++s) {
    if ((s & ~mask) == 0) out.push_back(s);
  }
  return out;
}

inline std::vector<int> elements_of(Subset s) {
  std::vector<int> out;
  for (int e = 1; e <= 32; ++e) {
    if (s & (Subset{1} << (e - 1))) out.push_back(e);
  }
  return out;
}

inline Subset bit(int e) { return Subset{1} << (e - 1); }

// Single exchange straight from the definition.
inline bool naive_exc_single(const SetFn& f) {
  const Subset full = (Subset{1} << f.n()) - 1;
  for (Subset x = 0; x <= full; ++x) {
    for (Subset y = 0; y <= full; ++y) {
      const Val lhs = plus(value_of(f, x), value_of(f, y));
      if (!lhs) continue;
      for (int i : elements_of(x & ~y)) {
        bool ok = leq(lhs, plus(value_of(f, x & ~bit(i)), value_of(f, y | bit(i))));
        for (int j : elements_of(y & ~x)) {
          ok = ok || leq(lhs, plus(value_of(f, (x & ~bit(i)) | bit(j)), value_of(f, (y | bit(i)) & ~bit(j))));
        }
        if (!ok) return false;
      }
    }
  }
  return true;
}

// Multiple exchange, optionally with |J| <= |I|.
inline bool naive_exc_multi(const SetFn& f, bool bounded) {
  const Subset full = (Subset{1} << f.n()) - 1;
  for (Subset x = 0; x <= full; ++x) {
    for (Subset y = 0; y <= full; ++y) {
      const Val lhs = plus(value_of(f, x), value_of(f, y));
      if (!lhs) continue;
      for (Subset i : all_subsets_of(x & ~y)) {
        bool ok = false;
        for (Subset j : all_subsets_of(y & ~x)) {
          if (bounded && std::popcount(j) > std::popcount(i)) continue;
          ok = ok || leq(lhs, plus(value_of(f, (x & ~i) | j), value_of(f, (y & ~j) | i)));
        }
        if (!ok) return false;
      }
    }
  }
  return true;
}

// max_Z f(Z) - p(Z) over |Z| <= k, integer prices.
inline Val naive_conjugate(const SetFn& f, const std::vector<std::int64_t>& p, int k = 64) {
  Val best;
  for (Subset z = 0; z < f.size(); ++z) {
    if (std::popcount(z) > k) continue;
    Val v = value_of(f, z);
    if (!v) continue;
    for (int e : elements_of(z)) *v -= p[static_cast<std::size_t>(e - 1)];
    if (!best || *v > *best) best = v;
  }
  return best;
}

// Maximum-weight matching of the items in X into slots by trying every
// assignment of each item to a free slot or to nothing.
inline std::int64_t brute_assignment(const std::vector<std::vector<std::int64_t>>& w, Subset x) {
  const auto items = elements_of(x);
  const std::size_t slots = w.empty() ? 0 : w[0].size();
  std::vector<bool> used(slots, false);
  std::int64_t best = 0;
  auto rec = [&](auto&& self, std::size_t k, std::int64_t acc) -> void {
    if (k == items.size()) {
      best = std::max(best, acc);
      return;
    }
    self(self, k + 1, acc);
    for (std::size_t s = 0; s < slots; ++s) {
      if (used[s]) continue;
      used[s] = true;
      self(self, k + 1, acc + w[static_cast<std::size_t>(items[k] - 1)][s]);
      used[s] = false;
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Graph rank: |V| minus the number of components of (V, X), by DFS.
inline int graphic_rank(int vertices, const std::vector<std::pair<int, int>>& edges, Subset x) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertices));
  for (int e : elements_of(x)) {
    const auto [a, b] = edges[static_cast<std::size_t>(e - 1)];
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<bool> seen(static_cast<std::size_t>(vertices), false);
  int components = 0;
  for (int v = 0; v < vertices; ++v) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    ++components;
    std::vector<int> stack{v};
    seen[static_cast<std::size_t>(v)] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return vertices - components;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dca_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Small random integer table for property tests; the std engine is fine here
// since these streams never need to match across platforms.
inline SetFn random_small_table(std::mt19937_64& gen, int n, int lo = -4, int hi = 4, double hole = 0.2) {
  std::uniform_int_distribution<std::int64_t> value(lo, hi);
  std::bernoulli_distribution missing(hole);
  std::vector<ExtValue> values(std::size_t{1} << n);
  for (auto& v : values) v = missing(gen) ? ExtValue::neg_inf() : ExtValue::integer(value(gen));
  values[0] = ExtValue::integer(value(gen));
  return SetFn(n, Mode::Int, std::move(values));
}

}  // namespace testing
