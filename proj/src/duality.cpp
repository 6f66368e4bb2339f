#include "dca/duality.hpp"

#include <cmath>
#include <functional>

#include "dca/errors.hpp"
#include "dca/rng.hpp"
#include "dca/setfn_io.hpp"

namespace dca {

using nlohmann::json;

namespace {

json price_json(const PriceVector& p) {
  json out = json::array();
  for (const auto& e : p.entries()) out.push_back(dca::to_json(e));
  return out;
}

ExtValue number(Mode mode, std::int64_t v) {
  return mode == Mode::Int ? ExtValue::integer(v) : ExtValue::real(static_cast<double>(v));
}

PriceVector integer_price(Mode mode, std::span<const std::int64_t> coords) {
  std::vector<ExtValue> entries;
  entries.reserve(coords.size());
  for (auto c : coords) entries.push_back(number(mode, c));
  return PriceVector(mode, std::move(entries));
}

// sums[Z] = p(Z) for every Z ⊆ {1..n}.
std::vector<ExtValue> price_sums(const PriceVector& p) {
  std::vector<ExtValue> sums(std::size_t{1} << p.n(), ExtValue::zero(p.mode()));
  for (Subset z = 1; z < sums.size(); ++z) {
    const Subset low = z & (~z + 1);
    sums[z] = ext_add(sums[z & ~low], p.entries()[static_cast<std::size_t>(std::countr_zero(z))]);
  }
  return sums;
}

// max_Z { f(Z) - sign * p(Z) } over precomputed sums, smallest-bitmask argmax.
std::pair<ExtValue, Subset> conjugate_from_sums(const SetFn& f, const std::vector<ExtValue>& sums, bool negate) {
  ExtValue best = ExtValue::neg_inf();
  Subset arg = 0;
  bool have = false;
  for (Subset z = 0; z < f.size(); ++z) {
    if (!f.in_dom(z)) continue;
    const ExtValue v = negate ? ext_add(f(z), sums[z]) : ext_sub(f(z), sums[z]);
    if (!have || v > best) {
      best = v;
      arg = z;
      have = true;
    }
  }
  if (!have) throw EmptyDomain("conjugate of a function with empty domain");
  return {best, arg};
}

void check_price(const SetFn& f, const PriceVector& p) {
  if (p.n() != f.n()) throw DimensionMismatch("price vector length differs from ground-set size");
  if (p.mode() != f.mode()) throw ModeMismatch("price vector mode differs from set function mode");
}

ExtValue value_of(const SetFn& f, const PriceVector& p) {
  return conjugate_from_sums(f, price_sums(p), false).first;
}

// Grid over [lo, hi]^n with points numbered in mixed radix, coordinate 1 least
// significant.
class BoxGrid {
 public:
  BoxGrid(int n, std::int64_t lo, std::int64_t hi) : n_(n), lo_(lo), width_(static_cast<std::size_t>(hi - lo + 1)) {
    if (hi < lo) throw PreconditionViolation("empty price grid");
    size_ = 1;
    for (int j = 0; j < n; ++j) size_ *= width_;
  }

  std::size_t size() const noexcept { return size_; }

  std::vector<std::int64_t> coords(std::size_t index) const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(n_));
    for (auto& c : out) {
      c = lo_ + static_cast<std::int64_t>(index % width_);
      index /= width_;
    }
    return out;
  }

  // Componentwise max (take_max) or min of two points.
  std::size_t combine(std::size_t a, std::size_t b, bool take_max) const noexcept {
    std::size_t out = 0;
    std::size_t scale = 1;
    for (int j = 0; j < n_; ++j) {
      const std::size_t da = a % width_;
      const std::size_t db = b % width_;
      out += (take_max ? std::max(da, db) : std::min(da, db)) * scale;
      a /= width_;
      b /= width_;
      scale *= width_;
    }
    return out;
  }

  bool dominates(std::size_t a, std::size_t b) const noexcept {
    for (int j = 0; j < n_; ++j) {
      if (a % width_ < b % width_) return false;
      a /= width_;
      b /= width_;
    }
    return true;
  }

  std::size_t index_of(std::span<const std::int64_t> coords) const noexcept {
    std::size_t out = 0;
    for (std::size_t j = coords.size(); j-- > 0;) out = out * width_ + static_cast<std::size_t>(coords[j] - lo_);
    return out;
  }

 private:
  int n_;
  std::int64_t lo_;
  std::size_t width_;
  std::size_t size_ = 0;
};

std::vector<ExtValue> tabulate_conjugate(const SetFn& f, const BoxGrid& box) {
  std::vector<ExtValue> table(box.size());
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    const auto c = box.coords(idx);
    table[idx] = value_of(f, integer_price(f.mode(), c));
  }
  return table;
}

std::vector<std::int64_t> random_point(int n, const PriceGrid& grid, Rng& rng) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(n));
  for (auto& c : out) c = rng.between(grid.lo, grid.hi);
  return out;
}

json coords_json(std::span<const std::int64_t> c) { return json(std::vector<std::int64_t>(c.begin(), c.end())); }

void require_feasible_size(const SetFn& f, int k) {
  for (Subset z = 0; z < f.size(); ++z) {
    if (f.in_dom(z) && cardinality(z) <= k) return;
  }
  throw EmptyDomain("no member of dom f has size <= " + std::to_string(k));
}

VerificationReport start_report(const char* suite, const PriceGrid& grid) {
  VerificationReport r;
  r.suite = suite;
  r.seed = grid.seed;
  r.regime = grid.sample_pairs ? Regime::Sampled : Regime::Exhaustive;
  return r;
}

}  // namespace

ConjugateEval conjugate(const SetFn& f, const PriceVector& p) {
  check_price(f, p);
  auto [value, arg] = conjugate_from_sums(f, price_sums(p), false);
  return ConjugateEval{p, value, arg};
}

ConjugateEval conjugate_sized(const SetFn& f, int k, const PriceVector& p) {
  require_feasible_size(f, k);
  return conjugate(restrict_by_size(f, k), p);
}

PriceGrid PriceGrid::default_for(int n, std::uint64_t seed) {
  PriceGrid grid;
  grid.seed = seed;
  if (n > 4) grid.sample_pairs = 10000;
  return grid;
}

VerificationReport check_conjugate_submodular(const SetFn& f, int k, const PriceGrid& grid, double tol) {
  require_feasible_size(f, k);
  const SetFn sized = restrict_by_size(f, k);
  VerificationReport report = start_report("conjugate_submodular", grid);

  auto verify = [&](const char* which, const ExtValue& gp, const ExtValue& gq, const ExtValue& gj,
                    const ExtValue& gm, auto&& describe) {
    ++report.triples_checked;
    const ExtValue lhs = ext_add(gp, gq);
    const ExtValue rhs = ext_add(gj, gm);
    if (!ext_leq(rhs, lhs, tol)) {
      auto [p, q] = describe();
      report.fail({{"inequality", which}, {"k", k}, {"p", p}, {"p_prime", q}, {"lhs", to_json(lhs)},
                   {"rhs", to_json(rhs)}});
      return false;
    }
    return true;
  };

  if (!grid.sample_pairs) {
    const BoxGrid box(f.n(), grid.lo, grid.hi);
    const auto g = tabulate_conjugate(f, box);
    const auto gt = tabulate_conjugate(sized, box);
    for (std::size_t a = 0; a < box.size(); ++a) {
      for (std::size_t b = a; b < box.size(); ++b) {
        const std::size_t hi = box.combine(a, b, true);
        const std::size_t lo = box.combine(a, b, false);
        auto describe = [&] { return std::pair{coords_json(box.coords(a)), coords_json(box.coords(b))}; };
        const bool ok = verify("g", g[a], g[b], g[hi], g[lo], describe) &&
                        verify("g_sized", gt[a], gt[b], gt[hi], gt[lo], describe);
        if (!ok) return report;
      }
    }
    return report;
  }

  Rng rng(grid.seed);
  for (std::uint64_t s = 0; s < *grid.sample_pairs; ++s) {
    const PriceVector p = integer_price(f.mode(), random_point(f.n(), grid, rng));
    const PriceVector q = integer_price(f.mode(), random_point(f.n(), grid, rng));
    const PriceVector hi = join(p, q);
    const PriceVector lo = meet(p, q);
    auto describe = [&] { return std::pair{price_json(p), price_json(q)}; };
    const bool ok = verify("g", value_of(f, p), value_of(f, q), value_of(f, hi), value_of(f, lo), describe) &&
                    verify("g_sized", value_of(sized, p), value_of(sized, q), value_of(sized, hi),
                           value_of(sized, lo), describe);
    if (!ok) break;
  }
  return report;
}

VerificationReport check_cross_submodular(const SetFn& f, int k, const PriceGrid& grid, double tol) {
  require_feasible_size(f, k);
  const SetFn sized = restrict_by_size(f, k);
  VerificationReport report = start_report("cross_submodular", grid);

  auto verify = [&](const ExtValue& gt_p, const ExtValue& g_q, const ExtValue& gt_meet, const ExtValue& g_join,
                    auto&& describe) {
    ++report.triples_checked;
    const ExtValue lhs = ext_add(gt_p, g_q);
    const ExtValue rhs = ext_add(gt_meet, g_join);
    if (!ext_leq(rhs, lhs, tol)) {
      auto [p, q] = describe();
      report.fail({{"k", k}, {"p", p}, {"q", q}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}});
      return false;
    }
    return true;
  };

  if (!grid.sample_pairs) {
    const BoxGrid box(f.n(), grid.lo, grid.hi);
    const auto g = tabulate_conjugate(f, box);
    const auto gt = tabulate_conjugate(sized, box);
    for (std::size_t a = 0; a < box.size(); ++a) {
      for (std::size_t b = 0; b < box.size(); ++b) {
        const std::size_t lo = box.combine(a, b, false);
        const std::size_t hi = box.combine(a, b, true);
        if (!verify(gt[a], g[b], gt[lo], g[hi],
                    [&] { return std::pair{coords_json(box.coords(a)), coords_json(box.coords(b))}; })) {
          return report;
        }
      }
    }
    return report;
  }

  Rng rng(grid.seed);
  for (std::uint64_t s = 0; s < *grid.sample_pairs; ++s) {
    const PriceVector p = integer_price(f.mode(), random_point(f.n(), grid, rng));
    const PriceVector q = integer_price(f.mode(), random_point(f.n(), grid, rng));
    if (!verify(value_of(sized, p), value_of(f, q), value_of(sized, meet(p, q)), value_of(f, join(p, q)),
                [&] { return std::pair{price_json(p), price_json(q)}; })) {
      break;
    }
  }
  return report;
}

VerificationReport check_strong_quotient(const SetFn& f, int k, const PriceGrid& grid, double tol) {
  require_feasible_size(f, k);
  const SetFn sized = restrict_by_size(f, k);
  VerificationReport report = start_report("strong_quotient", grid);

  // g̃(p) - g̃(q) >= g(p) - g(q), rearranged to avoid subtracting NEG_INF:
  // g̃(p) + g(q) >= g(p) + g̃(q).
  auto verify = [&](const ExtValue& gt_p, const ExtValue& gt_q, const ExtValue& g_p, const ExtValue& g_q,
                    auto&& describe) {
    ++report.triples_checked;
    const ExtValue lhs = ext_add(gt_p, g_q);
    const ExtValue rhs = ext_add(g_p, gt_q);
    if (!ext_leq(rhs, lhs, tol)) {
      auto [p, q] = describe();
      report.fail({{"k", k}, {"p", p}, {"q", q}, {"gt_p", to_json(gt_p)}, {"gt_q", to_json(gt_q)},
                   {"g_p", to_json(g_p)}, {"g_q", to_json(g_q)}});
      return false;
    }
    return true;
  };

  if (!grid.sample_pairs) {
    const BoxGrid box(f.n(), grid.lo, grid.hi);
    const auto g = tabulate_conjugate(f, box);
    const auto gt = tabulate_conjugate(sized, box);
    for (std::size_t a = 0; a < box.size(); ++a) {
      for (std::size_t b = 0; b < box.size(); ++b) {
        if (!box.dominates(a, b)) continue;
        if (!verify(gt[a], gt[b], g[a], g[b],
                    [&] { return std::pair{coords_json(box.coords(a)), coords_json(box.coords(b))}; })) {
          return report;
        }
      }
    }
    return report;
  }

  Rng rng(grid.seed);
  for (std::uint64_t s = 0; s < *grid.sample_pairs; ++s) {
    const PriceVector a = integer_price(f.mode(), random_point(f.n(), grid, rng));
    const PriceVector b = integer_price(f.mode(), random_point(f.n(), grid, rng));
    const PriceVector p = join(a, b);
    const PriceVector q = meet(a, b);
    if (!verify(value_of(sized, p), value_of(sized, q), value_of(f, p), value_of(f, q),
                [&] { return std::pair{price_json(p), price_json(q)}; })) {
      break;
    }
  }
  return report;
}

RestrictionTriple build_restrictions(const SetFn& f, const ExchangeContext& ctx) {
  if (!is_subset_of(ctx.x | ctx.y, f.ground())) throw PreconditionViolation("context outside the ground set");
  if (!is_subset_of(ctx.i, ctx.x_only())) throw PreconditionViolation("I must be a subset of X \\ Y");
  const Subset support = ctx.y_only();
  const int m = cardinality(support);
  const Subset x_kept = ctx.x & ~ctx.i;
  SetFn f1 = SetFn::tabulate(m, f.mode(), [&](Subset local) { return f(x_kept | scatter_bits(local, support)); });
  SetFn f2 = SetFn::tabulate(m, f.mode(),
                             [&](Subset local) { return f((ctx.y & ~scatter_bits(local, support)) | ctx.i); });
  SetFn f1_sized = restrict_by_size(f1, cardinality(ctx.i));
  const std::pair<const char*, const SetFn*> parts[] = {{"f1", &f1}, {"f1_sized", &f1_sized}, {"f2", &f2}};
  for (const auto& [name, fn] : parts) {
    if (fn->dom_empty()) {
      json payload = ctx.to_json();
      payload["empty"] = name;
      throw Falsification(std::string("restricted function ") + name + " has an empty domain", payload);
    }
  }
  return RestrictionTriple{ctx, std::move(f1), std::move(f1_sized), std::move(f2)};
}

json FenchelResult::to_json() const {
  json out;
  out["primal"] = dca::to_json(primal);
  out["dual"] = dca::to_json(dual);
  out["gap"] = gap ? dca::to_json(*gap) : json(nullptr);
  out["attaining_q"] = attained ? price_json(best_q) : json(nullptr);
  out["best_q"] = price_json(best_q);
  out["box"] = box;
  out["boundary"] = boundary;
  out["certified"] = certified;
  out["weak_duality"] = weak_duality;
  out["points_scanned"] = points_scanned;
  return out;
}

std::int64_t default_dual_box(const SetFn& f1, const SetFn& f2) {
  const double total = spread(f1).to_double() + spread(f2).to_double();
  return static_cast<std::int64_t>(std::ceil(total)) + 1;
}

FenchelResult fenchel_gap(const SetFn& f1, const SetFn& f2, std::optional<std::int64_t> box, double tol) {
  if (f1.n() != f2.n()) throw DimensionMismatch("Fenchel pair on different ground sets");
  if (f1.mode() != f2.mode()) throw ModeMismatch("Fenchel pair in different modes");
  if (f1.dom_empty() || f2.dom_empty()) throw EmptyDomain("Fenchel pair needs nonempty domains");
  const int n = f1.n();
  const Mode mode = f1.mode();
  const std::int64_t limit = box.value_or(default_dual_box(f1, f2));
  if (limit < 0) throw PreconditionViolation("dual box must be nonnegative");

  FenchelResult result{ExtValue::neg_inf(), ExtValue::neg_inf(), std::nullopt, PriceVector::zeros(n, mode)};
  result.box = limit;
  result.certified = mode == Mode::Int;
  for (Subset z = 0; z < f1.size(); ++z) {
    const ExtValue v = ext_add(f1(z), f2(z));
    if (v > result.primal) result.primal = v;
  }

  std::vector<std::int64_t> q(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> best_coords = q;
  bool have = false;
  bool done = false;

  auto evaluate = [&] {
    const auto sums = price_sums(integer_price(mode, q));
    const ExtValue phi =
        ext_add(conjugate_from_sums(f1, sums, false).first, conjugate_from_sums(f2, sums, true).first);
    ++result.points_scanned;
    if (result.primal.is_finite() && !ext_leq(result.primal, phi, tol)) result.weak_duality = false;
    if (!have || phi < result.dual) {
      result.dual = phi;
      best_coords = q;
      have = true;
    }
    if (result.primal.is_finite() && ext_equal(phi, result.primal, tol)) {
      result.dual = phi;
      best_coords = q;
      result.attained = true;
      done = true;
    }
  };

  // Points with max-norm exactly `radius`: the last free coordinate is pinned
  // to ±radius when no earlier coordinate reached it.
  std::function<void(int, std::int64_t, bool)> shell = [&](int pos, std::int64_t radius, bool extreme) {
    if (done) return;
    if (pos == n) {
      if (extreme) evaluate();
      return;
    }
    for (std::int64_t v = -radius; v <= radius && !done; ++v) {
      if (pos == n - 1 && !extreme && v != -radius && v != radius) continue;
      q[static_cast<std::size_t>(pos)] = v;
      shell(pos + 1, radius, extreme || v == -radius || v == radius);
    }
  };

  if (n == 0) {
    evaluate();
  } else {
    evaluate();  // radius 0
    for (std::int64_t radius = 1; radius <= limit && !done; ++radius) shell(0, radius, false);
  }

  result.best_q = integer_price(mode, best_coords);
  std::int64_t norm = 0;
  for (auto c : best_coords) norm = std::max(norm, c < 0 ? -c : c);
  result.boundary = n > 0 && norm == limit;
  if (result.primal.is_finite()) result.gap = ext_sub(result.dual, result.primal);
  return result;
}

VerificationReport check_lemma6_bound(const SetFn& f, const ExchangeContext& ctx, std::int64_t box,
                                      std::uint64_t max_points, std::uint64_t seed, double tol) {
  const RestrictionTriple triple = build_restrictions(f, ctx);
  const int m = triple.f2.n();
  const ExtValue target = ext_add(f(ctx.x), f(ctx.y));
  VerificationReport report;
  report.suite = "lemma6_bound";
  report.seed = seed;

  auto visit = [&](std::span<const std::int64_t> coords) {
    const auto sums = price_sums(integer_price(f.mode(), coords));
    const ExtValue value =
        ext_add(conjugate_from_sums(triple.f1_sized, sums, false).first, conjugate_from_sums(triple.f2, sums, true).first);
    ++report.triples_checked;
    if (!ext_leq(target, value, tol)) {
      json cex = ctx.to_json();
      cex["q"] = coords_json(coords);
      cex["dual_value"] = to_json(value);
      cex["fX_plus_fY"] = to_json(target);
      report.fail(std::move(cex));
      return false;
    }
    return true;
  };

  PriceGrid bounds;
  bounds.lo = -box;
  bounds.hi = box;
  const BoxGrid grid(m, -box, box);
  if (grid.size() <= max_points) {
    report.regime = Regime::Exhaustive;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (!visit(grid.coords(idx))) break;
    }
    return report;
  }
  report.regime = Regime::Sampled;
  Rng rng(seed);
  for (std::uint64_t s = 0; s < max_points; ++s) {
    if (!visit(random_point(m, bounds, rng))) break;
  }
  return report;
}

}  // namespace dca
