#include "dca/setfn_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "dca/errors.hpp"

namespace dca {

using nlohmann::json;

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": malformed JSON at " + line_col(text, e.byte) + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path.string() + ": write failed");
}

ExtValue value_from_json(const json& v, Mode mode, std::size_t index) {
  const std::string field = "values[" + std::to_string(index) + "]";
  if (v.is_null()) return ExtValue::neg_inf();
  if (mode == Mode::Int) {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        throw ParseError(field + ": integer out of 64-bit range");
      }
      return ExtValue::integer(v.get<std::int64_t>());
    }
    throw ParseError(field + ": expected an integer or null in int mode");
  }
  if (!v.is_number()) throw ParseError(field + ": expected a number or null");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(field + ": value is not finite");
  return ExtValue::real(d);
}

}  // namespace

json to_json(const ExtValue& v) {
  switch (v.kind()) {
    case ExtValue::Kind::NegInf:
      return nullptr;
    case ExtValue::Kind::Int:
      return v.as_int();
    case ExtValue::Kind::Real:
      return v.as_real();
  }
  return nullptr;
}

json to_json(const SetFn& f) {
  json values = json::array();
  for (const auto& v : f.values()) values.push_back(to_json(v));
  return json{{"n", f.n()}, {"mode", to_string(f.mode())}, {"values", std::move(values)}};
}

SetFn setfn_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("set function document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("field 'n': missing or not an integer");
  if (!doc.contains("values") || !doc["values"].is_array()) throw ParseError("field 'values': missing or not an array");
  const auto n64 = doc["n"].get<std::int64_t>();
  if (n64 < 0) throw ParseError("field 'n': negative");
  if (n64 > SetFn::kMaxGround) {
    throw CapExceeded("field 'n': " + std::to_string(n64) + " exceeds the cap of " + std::to_string(SetFn::kMaxGround));
  }
  const int n = static_cast<int>(n64);
  Mode mode = Mode::Int;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw ParseError("field 'mode': expected \"int\" or \"real\"");
    mode = mode_from_string(doc["mode"].get<std::string>());
  }
  const auto& arr = doc["values"];
  const std::size_t expected = std::size_t{1} << n;
  if (arr.size() != expected) {
    throw ParseError("field 'values': has " + std::to_string(arr.size()) + " entries, expected 2^" + std::to_string(n) +
                     " = " + std::to_string(expected));
  }
  std::vector<ExtValue> values;
  values.reserve(expected);
  for (std::size_t i = 0; i < expected; ++i) values.push_back(value_from_json(arr[i], mode, i));
  return SetFn(n, mode, std::move(values));
}

SetFn parse_setfn(const std::string& text) { return setfn_from_json(parse_text(text, "<input>")); }

SetFn load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return setfn_from_json(parse_text(text, path.string()));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + ": " + what);
  }
}

void store(const SetFn& f, const std::filesystem::path& path) { write_file(path, to_json(f).dump() + "\n"); }

Instance load_instance(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc = parse_text(text, path.string());
  Instance inst{path.stem().string(), SetFn::all_neg_inf(0, Mode::Int)};
  try {
    inst.fn = setfn_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (doc.contains("meta")) {
    inst.meta = doc["meta"];
    if (inst.meta.is_object() && inst.meta.contains("id") && inst.meta["id"].is_string()) {
      inst.id = inst.meta["id"].get<std::string>();
    }
  }
  return inst;
}

std::string dump_instance(const Instance& inst) {
  json doc = to_json(inst.fn);
  json meta = inst.meta.is_object() ? inst.meta : json::object();
  meta["id"] = inst.id;
  doc["meta"] = std::move(meta);
  return doc.dump() + "\n";
}

void store_instance(const Instance& inst, const std::filesystem::path& path) { write_file(path, dump_instance(inst)); }

}  // namespace dca
