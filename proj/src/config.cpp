#include "dca/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dca/errors.hpp"

namespace dca {

using nlohmann::json;

namespace {

constexpr std::pair<Suite, const char*> kSuiteNames[] = {
    {Suite::ExcSingle, "exc_single"},
    {Suite::ExcMultiBounded, "exc_multi_bounded"},
    {Suite::ExcMultiUnbounded, "exc_multi_unbounded"},
    {Suite::Corollary1, "corollary1"},
    {Suite::MConcaveLift, "m_concave_lift"},
    {Suite::Fenchel, "fenchel"},
    {Suite::Lemmas28, "lemmas_2_8"},
    {Suite::DualityGrid, "duality_grid"},
};

}  // namespace

const char* to_string(Suite s) noexcept {
  for (const auto& [suite, name] : kSuiteNames) {
    if (suite == s) return name;
  }
  return "?";
}

Suite suite_from_string(const std::string& name) {
  for (const auto& [suite, text] : kSuiteNames) {
    if (name == text) return suite;
  }
  throw ParseError("unknown suite '" + name + "'");
}

std::vector<Suite> all_suites() {
  std::vector<Suite> out;
  for (const auto& entry : kSuiteNames) out.push_back(entry.first);
  return out;
}

std::vector<Suite> parse_suite_list(const std::string& list) {
  std::vector<Suite> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") return all_suites();
    out.push_back(suite_from_string(item));
  }
  if (out.empty()) throw ParseError("empty suite list");
  return out;
}

SuiteConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  static const std::set<std::string> known = {"seed",    "families", "n_range",          "trials",
                                              "mode",    "tolerance", "suites",          "out",
                                              "jobs",    "samples",   "fenchel_contexts", "lemma6_contexts",
                                              "falsify_max_n"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ParseError("config: unknown key '" + key + "'");
  }
  SuiteConfig c;
  try {
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("families")) c.families = doc["families"].get<std::vector<json>>();
    if (doc.contains("n_range")) {
      const auto range = doc["n_range"].get<std::vector<int>>();
      if (range.size() != 2 || range[0] > range[1]) throw ParseError("config: n_range must be [lo, hi] with lo <= hi");
      c.n_min = range[0];
      c.n_max = range[1];
    }
    c.trials = doc.value("trials", c.trials);
    if (doc.contains("mode")) c.mode = mode_from_string(doc["mode"].get<std::string>());
    c.tolerance = doc.value("tolerance", c.tolerance);
    if (doc.contains("suites")) {
      c.suites.clear();
      for (const auto& s : doc["suites"]) c.suites.push_back(suite_from_string(s.get<std::string>()));
    }
    c.out = doc.value("out", c.out);
    c.jobs = doc.value("jobs", c.jobs);
    c.samples = doc.value("samples", c.samples);
    c.fenchel_contexts = doc.value("fenchel_contexts", c.fenchel_contexts);
    c.lemma6_contexts = doc.value("lemma6_contexts", c.lemma6_contexts);
    c.falsify_max_n = doc.value("falsify_max_n", c.falsify_max_n);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (c.jobs < 1) throw ParseError("config: jobs must be positive");
  if (c.falsify_max_n < 1 || c.falsify_max_n > 8) throw ParseError("config: falsify_max_n must be in 1..8");
  return c;
}

json to_json(const SuiteConfig& c) {
  json suites = json::array();
  for (auto s : c.suites) suites.push_back(to_string(s));
  return {{"seed", c.seed},
          {"families", c.families},
          {"n_range", {c.n_min, c.n_max}},
          {"trials", c.trials},
          {"mode", to_string(c.mode)},
          {"tolerance", c.tolerance},
          {"suites", suites},
          {"out", c.out},
          {"jobs", c.jobs},
          {"samples", c.samples},
          {"fenchel_contexts", c.fenchel_contexts},
          {"lemma6_contexts", c.lemma6_contexts},
          {"falsify_max_n", c.falsify_max_n}};
}

SuiteConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return config_from_json(json::parse(buf.str()));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON: " + e.what());
  }
}

}  // namespace dca
