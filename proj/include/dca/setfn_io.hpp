#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dca/set_fn.hpp"

namespace dca {

// File format:
//   {"n": 3, "mode": "int", "values": [0, 1, null, ...], "meta": {...}}
// values[i] is the value of the subset with bitmask i (bit j-1 <=> element j);
// null encodes NEG_INF. "meta" is optional and free-form.
struct Instance {
  std::string id;
  SetFn fn;
  nlohmann::json meta = nlohmann::json::object();
};

nlohmann::json to_json(const ExtValue& v);
nlohmann::json to_json(const SetFn& f);

// Field-level validation of an already-parsed document.
SetFn setfn_from_json(const nlohmann::json& doc);
// Text parse; errors name the line and column or the offending field.
SetFn parse_setfn(const std::string& text);

SetFn load(const std::filesystem::path& path);
void store(const SetFn& f, const std::filesystem::path& path);

// Instance id defaults to the file stem when meta carries none.
Instance load_instance(const std::filesystem::path& path);
void store_instance(const Instance& inst, const std::filesystem::path& path);
std::string dump_instance(const Instance& inst);

}  // namespace dca
