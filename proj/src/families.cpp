#include "dca/families.hpp"

#include <algorithm>

#include "dca/errors.hpp"
#include "dca/exchange.hpp"

namespace dca {

using nlohmann::json;

SetFn matroid_rank_fn(const Matroid& m) {
  return SetFn::tabulate(m.n(), Mode::Int, [&](Subset s) { return ExtValue::integer(m.rank(s)); });
}

SetFn weighted_basis_valuation(const Matroid& m, const PriceVector& w) {
  if (w.n() != m.n()) throw DimensionMismatch("weight vector length differs from matroid ground set");
  SetFn f = SetFn::tabulate(m.n(), w.mode(),
                            [&](Subset s) { return m.is_basis(s) ? w.eval(s) : ExtValue::neg_inf(); });
  if (f.dom_empty()) throw InvalidInstance("matroid has no basis");
  return f;
}

void validate(const LaminarSpec& spec) {
  SetFn::check_ground(spec.n);
  const Subset ground = full_set(spec.n);
  for (std::size_t a = 0; a < spec.members.size(); ++a) {
    const auto& m = spec.members[a];
    if (!is_subset_of(m.set, ground)) throw InvalidInstance("laminar member outside the ground set");
    if (m.phi.size() != static_cast<std::size_t>(cardinality(m.set)) + 1) {
      throw InvalidInstance("laminar member " + format_subset(m.set) + " needs a table of length |A|+1");
    }
    for (std::size_t k = 2; k < m.phi.size(); ++k) {
      if (m.phi[k] - m.phi[k - 1] > m.phi[k - 1] - m.phi[k - 2]) {
        throw InvalidInstance("table for " + format_subset(m.set) + " is not concave at k=" + std::to_string(k - 1));
      }
    }
    for (std::size_t b = a + 1; b < spec.members.size(); ++b) {
      const Subset s = m.set;
      const Subset t = spec.members[b].set;
      if ((s & t) != 0 && !is_subset_of(s, t) && !is_subset_of(t, s)) {
        throw InvalidInstance("family is not laminar: " + format_subset(s) + " crosses " + format_subset(t));
      }
    }
  }
}

SetFn laminar_concave_fn(const LaminarSpec& spec) {
  validate(spec);
  return SetFn::tabulate(spec.n, Mode::Int, [&](Subset x) {
    ExtValue sum = ExtValue::integer(0);
    for (const auto& m : spec.members) {
      sum = ext_add(sum, ExtValue::integer(m.phi[static_cast<std::size_t>(cardinality(x & m.set))]));
    }
    return sum;
  });
}

SetFn assignment_valuation(const std::vector<std::vector<std::int64_t>>& weights) {
  const int n = static_cast<int>(weights.size());
  SetFn::check_ground(n);
  const std::size_t slots = weights.empty() ? 0 : weights.front().size();
  for (const auto& row : weights) {
    if (row.size() != slots) throw InvalidInstance("assignment weight matrix is ragged");
    for (auto w : row) {
      if (w < 0) throw InvalidInstance("assignment weights must be nonnegative");
    }
  }
  // best[X] = max-weight matching of X into the slots processed so far.
  std::vector<std::int64_t> best(std::size_t{1} << n, 0);
  for (std::size_t slot = 0; slot < slots; ++slot) {
    std::vector<std::int64_t> next = best;
    for (Subset x = 1; x < next.size(); ++x) {
      for (Subset rest = x; rest != 0; rest &= rest - 1) {
        const int item = std::countr_zero(rest);
        const ExtValue v = ext_add(ExtValue::integer(best[x & ~(Subset{1} << item)]),
                                   ExtValue::integer(weights[static_cast<std::size_t>(item)][slot]));
        next[x] = std::max(next[x], v.as_int());
      }
    }
    best = std::move(next);
  }
  return SetFn::tabulate(n, Mode::Int, [&](Subset x) { return ExtValue::integer(best[x]); });
}

SetFn mutate(const SetFn& f, std::uint64_t seed, const MutationOptions& options) {
  if (f.mode() != Mode::Int) throw ModeMismatch("mutate works on integer-mode functions");
  Rng rng(seed);
  const auto target = static_cast<Subset>(rng.below(f.size()));
  const ExtValue old = f(target);
  const bool toggle = rng.chance(options.toggle_probability);
  if (toggle) {
    if (old.is_finite()) return f.with_value(target, ExtValue::neg_inf());
    return f.with_value(target, ExtValue::integer(rng.between(-options.magnitude, options.magnitude)));
  }
  const std::int64_t delta = (rng.next() & 1u) ? options.magnitude : -options.magnitude;
  return f.with_value(target, ext_add(old, ExtValue::integer(delta)));
}

SetFn random_table(int n, Rng& rng, const RandomTableOptions& options) {
  SetFn::check_ground(n);
  std::vector<ExtValue> values(std::size_t{1} << n);
  bool any = false;
  for (auto& v : values) {
    v = rng.chance(options.neg_inf_probability) ? ExtValue::neg_inf()
                                                 : ExtValue::integer(rng.between(options.lo, options.hi));
    any = any || v.is_finite();
  }
  if (options.require_nonempty_dom && !any) {
    values[rng.below(values.size())] = ExtValue::integer(rng.between(options.lo, options.hi));
  }
  return SetFn(n, Mode::Int, std::move(values));
}

LaminarSpec random_laminar(int n, Rng& rng, std::int64_t max_step) {
  LaminarSpec spec;
  spec.n = n;
  auto concave_table = [&](int size) {
    std::vector<std::int64_t> phi{0};
    std::int64_t step = rng.between(0, max_step);
    for (int k = 1; k <= size; ++k) {
      phi.push_back(phi.back() + step);
      step -= rng.between(0, 2);
    }
    return phi;
  };
  Subset chain = 0;
  for (int e = 1; e <= n; ++e) {
    chain |= bit_of(e);
    if (rng.chance(0.5)) spec.members.push_back({chain, concave_table(cardinality(chain))});
  }
  for (int e = 1; e <= n; ++e) {
    if (rng.chance(0.3)) spec.members.push_back({bit_of(e), concave_table(1)});
  }
  return spec;
}

std::optional<SetFn> rejection_sample(int n, std::uint64_t seed, int max_attempts) {
  if (n < 0 || n > 4) throw PreconditionViolation("rejection sampling is limited to n <= 4");
  Rng rng(seed);
  const RandomTableOptions small{-2, 2, 0.3, true};
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    SetFn candidate = (attempt % 2 == 0)
                          ? random_table(n, rng, small)
                          : mutate(laminar_concave_fn(random_laminar(n, rng, 3)), rng.next(), {1, 0.3});
    if (candidate.dom_empty()) continue;
    if (check_exc_single(candidate).passed()) return candidate;
  }
  return std::nullopt;
}

Matroid matroid_from_json(const json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "uniform") return Matroid::uniform(spec.at("n").get<int>(), spec.at("r").get<int>());
  if (kind == "partition") {
    return Matroid::partition(spec.at("n").get<int>(), spec.at("blocks").get<std::vector<std::vector<int>>>(),
                              spec.at("caps").get<std::vector<int>>());
  }
  if (kind == "graphic") {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : spec.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Matroid::graphic(spec.at("vertices").get<int>(), edges);
  }
  throw InvalidInstance("unknown matroid kind '" + kind + "'");
}

namespace {

LaminarSpec laminar_from_json(const json& spec) {
  LaminarSpec out;
  out.n = spec.at("n").get<int>();
  SetFn::check_ground(out.n);
  for (const auto& m : spec.at("members")) {
    const auto elems = m.at("set").get<std::vector<int>>();
    out.members.push_back({from_elements(elems, out.n), m.at("phi").get<std::vector<std::int64_t>>()});
  }
  return out;
}

std::string family_id(const json& spec) {
  if (spec.contains("id")) return spec["id"].get<std::string>();
  std::string id = spec.at("family").get<std::string>();
  if (spec.contains("n")) id += "_n" + std::to_string(spec["n"].get<int>());
  return id;
}

Instance build_family_impl(const json& spec, std::uint64_t seed) {
  if (!spec.is_object() || !spec.contains("family") || !spec["family"].is_string()) {
    throw InvalidInstance("family spec needs a string \"family\" tag");
  }
  const std::string family = spec["family"].get<std::string>();
  json meta = {{"family", spec}};
  auto make = [&](SetFn f) { return Instance{family_id(spec), std::move(f), meta}; };

  if (family == "uniform" || family == "partition" || family == "graphic") {
    json m = spec;
    m["kind"] = family;
    return make(matroid_rank_fn(matroid_from_json(m)));
  }
  if (family == "weighted_basis") {
    const Matroid m = matroid_from_json(spec.at("matroid"));
    const auto w = spec.at("weights").get<std::vector<std::int64_t>>();
    return make(weighted_basis_valuation(m, PriceVector::from_ints(w)));
  }
  if (family == "laminar") return make(laminar_concave_fn(laminar_from_json(spec)));
  if (family == "assignment") {
    return make(assignment_valuation(spec.at("weights").get<std::vector<std::vector<std::int64_t>>>()));
  }
  if (family == "constant") {
    const int n = spec.at("n").get<int>();
    return make(SetFn::constant(n, ExtValue::integer(spec.value("value", std::int64_t{0})), Mode::Int));
  }
  if (family == "rejection") {
    const std::uint64_t s = spec.value("seed", seed);
    meta["seed"] = s;
    auto f = rejection_sample(spec.at("n").get<int>(), s);
    if (!f) throw InvalidInstance("rejection sampler found no instance");
    return make(std::move(*f));
  }
  if (family == "mutated") {
    const std::uint64_t s = spec.value("seed", seed);
    meta["seed"] = s;
    const Instance base = build_family_impl(spec.at("base"), seed);
    const MutationOptions opts{spec.value("magnitude", std::int64_t{1}), spec.value("toggle_probability", 0.0)};
    Instance out = make(mutate(base.fn, s, opts));
    if (!spec.contains("id")) out.id = base.id + "_mut" + std::to_string(s);
    return out;
  }
  throw InvalidInstance("unknown family '" + family + "'");
}

}  // namespace

Instance build_family(const json& spec, std::uint64_t seed) {
  try {
    return build_family_impl(spec, seed);
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("bad family parameters: ") + e.what());
  }
}

std::vector<json> default_corpus_specs() {
  auto uniform = [](int n, int r) {
    return json{{"id", "uniform_r" + std::to_string(r) + "_n" + std::to_string(n)}, {"family", "uniform"},
                {"n", n}, {"r", r}};
  };
  auto partition = [](const std::string& id, int n, json blocks, json caps) {
    return json{{"id", id}, {"family", "partition"}, {"n", n}, {"blocks", blocks}, {"caps", caps}};
  };
  auto graphic = [](const std::string& id, int vertices, json edges) {
    return json{{"id", id}, {"family", "graphic"}, {"vertices", vertices}, {"edges", edges}};
  };
  auto weighted = [](const std::string& id, json matroid, json weights) {
    return json{{"id", id}, {"family", "weighted_basis"}, {"matroid", matroid}, {"weights", weights}};
  };
  auto laminar = [](const std::string& id, int n, json members) {
    return json{{"id", id}, {"family", "laminar"}, {"n", n}, {"members", members}};
  };
  auto member = [](json set, json phi) { return json{{"set", set}, {"phi", phi}}; };
  auto assignment = [](const std::string& id, json weights) {
    return json{{"id", id}, {"family", "assignment"}, {"weights", weights}};
  };

  const json k4 = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  const json c4_chord = {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 3}};
  const json triangle = {{1, 2}, {2, 3}, {1, 3}};

  return {
      uniform(3, 1),
      uniform(4, 2),
      uniform(5, 3),
      uniform(6, 2),
      uniform(7, 4),
      uniform(8, 3),
      partition("partition_n3", 3, {{1, 2}, {3}}, {1, 1}),
      partition("partition_n5", 5, {{1, 2, 3}, {4, 5}}, {2, 1}),
      partition("partition_n7", 7, {{1, 2}, {3, 4, 5}, {6, 7}}, {1, 2, 1}),
      partition("partition_n8", 8, {{1, 2, 3, 4}, {5, 6, 7}, {8}}, {2, 2, 1}),
      graphic("graphic_triangle", 3, triangle),
      graphic("graphic_c4_chord", 4, c4_chord),
      graphic("graphic_k4", 4, k4),
      graphic("graphic_parallel_pendant", 4, {{1, 2}, {1, 2}, {2, 3}, {3, 1}, {3, 4}}),
      graphic("graphic_bowtie", 5, {{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 5}, {5, 3}, {1, 4}}),
      graphic("graphic_k4_path", 6, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}}),
      weighted("wbasis_u23", {{"kind", "uniform"}, {"n", 3}, {"r", 2}}, {0, 1, 2}),
      weighted("wbasis_u24", {{"kind", "uniform"}, {"n", 4}, {"r", 2}}, {3, 1, 4, 1}),
      weighted("wbasis_u35", {{"kind", "uniform"}, {"n", 5}, {"r", 3}}, {2, 5, 1, 4, 2}),
      weighted("wbasis_partition_n5", {{"kind", "partition"}, {"n", 5}, {"blocks", {{1, 2, 3}, {4, 5}}}, {"caps", {2, 1}}},
               {1, 3, 2, 0, 2}),
      weighted("wbasis_graphic_k4", {{"kind", "graphic"}, {"vertices", 4}, {"edges", k4}}, {1, 2, 3, 1, 2, 3}),
      weighted("wbasis_graphic_c4_chord", {{"kind", "graphic"}, {"vertices", 4}, {"edges", c4_chord}},
               {2, 1, 3, 1, 2}),
      weighted("wbasis_u47", {{"kind", "uniform"}, {"n", 7}, {"r", 4}}, {1, 4, 2, 0, 3, 1, 2}),
      weighted("wbasis_u38", {{"kind", "uniform"}, {"n", 8}, {"r", 3}}, {2, 0, 1, 3, 1, 2, 0, 1}),
      laminar("laminar_chain_n3", 3, {member({1}, {0, 2}), member({1, 2}, {0, 2, 3}), member({1, 2, 3}, {0, 1, 1, 0})}),
      laminar("laminar_tree_n4", 4,
              {member({1, 2}, {0, 3, 4}), member({3, 4}, {0, 1, 2}), member({1, 2, 3, 4}, {0, 2, 3, 3, 2})}),
      laminar("laminar_n5", 5,
              {member({1}, {0, 1}), member({2, 3}, {0, 2, 2}), member({1, 2, 3}, {0, 1, 1, 0}),
               member({4, 5}, {0, 3, 4}), member({1, 2, 3, 4, 5}, {0, 0, 0, -1, -2, -4})}),
      laminar("laminar_n6", 6,
              {member({1, 2, 3}, {0, 2, 3, 3}), member({4, 5, 6}, {0, 1, 2, 3}), member({5, 6}, {0, 2, 2}),
               member({1, 2, 3, 4, 5, 6}, {0, 1, 1, 0, -1, -2, -3})}),
      laminar("laminar_n7", 7,
              {member({1, 2}, {0, 2, 3}), member({3, 4, 5}, {0, 2, 3, 3}), member({6, 7}, {0, 1, 1}),
               member({1, 2, 3, 4, 5}, {0, 1, 2, 2, 2, 1})}),
      laminar("laminar_n8", 8,
              {member({1, 2, 3, 4}, {0, 2, 3, 3, 2}), member({5, 6, 7, 8}, {0, 1, 2, 3, 3}), member({2}, {0, 1}),
               member({7, 8}, {0, 2, 3})}),
      assignment("assignment_3x2", {{3, 1}, {2, 2}, {1, 4}}),
      assignment("assignment_4x2", {{3, 5}, {2, 1}, {4, 0}, {1, 3}}),
      assignment("assignment_5x3", {{2, 0, 1}, {1, 3, 0}, {0, 2, 2}, {3, 1, 1}, {1, 1, 3}}),
      assignment("assignment_6x2", {{1, 2}, {3, 0}, {2, 2}, {0, 4}, {1, 1}, {2, 3}}),
      assignment("assignment_7x3", {{1, 0, 2}, {2, 1, 0}, {0, 3, 1}, {1, 1, 1}, {2, 0, 2}, {0, 2, 1}, {3, 1, 0}}),
      assignment("assignment_8x4",
                 {{1, 0, 2, 1}, {2, 1, 0, 0}, {0, 3, 1, 2}, {1, 1, 1, 1}, {2, 0, 2, 0}, {0, 2, 1, 3}, {3, 1, 0, 1},
                  {1, 2, 2, 0}}),
      json{{"id", "constant_zero_n3"}, {"family", "constant"}, {"n", 3}, {"value", 0}},
  };
}

std::vector<Instance> default_corpus() {
  std::vector<Instance> out;
  for (const auto& spec : default_corpus_specs()) out.push_back(build_family(spec, 0));
  return out;
}

std::vector<Matroid> corpus_matroids() {
  std::vector<Matroid> out;
  for (const auto& spec : default_corpus_specs()) {
    const std::string family = spec.at("family").get<std::string>();
    if (family == "uniform" || family == "partition" || family == "graphic") {
      json m = spec;
      m["kind"] = family;
      out.push_back(matroid_from_json(m));
    } else if (family == "weighted_basis") {
      out.push_back(matroid_from_json(spec.at("matroid")));
    }
  }
  return out;
}

}  // namespace dca
