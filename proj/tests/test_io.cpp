#include <doctest.h>

#include <fstream>

#include "dca/errors.hpp"
#include "dca/families.hpp"
#include "dca/setfn_io.hpp"
#include "support.hpp"

using namespace dca;
using testing::table;
using testing::X;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_setfn(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("null entries are NEG_INF") {
  const SetFn f = parse_setfn(R"({"n": 1, "mode": "int", "values": [null, 4]})");
  CHECK(f == table(1, {X, 4}));
  CHECK(to_json(f).dump() == R"({"mode":"int","n":1,"values":[null,4]})");
}

TEST_CASE("mode defaults to int and real mode parses decimals") {
  CHECK(parse_setfn(R"({"n": 0, "values": [2]})") == table(0, {2}));
  const SetFn r = parse_setfn(R"({"n": 1, "mode": "real", "values": [0.5, null]})");
  CHECK(r.mode() == Mode::Real);
  CHECK(r(0) == ExtValue::real(0.5));
}

TEST_CASE("length is checked against 2^n") {
  const std::string msg = error_of(R"({"n": 2, "values": [0, 1, 2]})");
  CHECK(msg.find("expected 2^2") != std::string::npos);
  CHECK(msg.find("has 3 entries") != std::string::npos);
}

TEST_CASE("field errors are specific") {
  CHECK(error_of(R"({"values": [0]})").find("'n'") != std::string::npos);
  CHECK(error_of(R"({"n": 0})").find("'values'") != std::string::npos);
  CHECK(error_of(R"({"n": 1, "mode": "fuzzy", "values": [0, 0]})").find("fuzzy") != std::string::npos);
  CHECK(error_of(R"({"n": 1, "values": [0, 1.5]})").find("integer") != std::string::npos);
  CHECK(error_of(R"([1, 2])").find("object") != std::string::npos);
  CHECK_THROWS_AS(parse_setfn(R"({"n": 25, "values": []})"), CapExceeded);
}

TEST_CASE("malformed JSON reports a position") {
  const std::string msg = error_of("{\"n\": 1,\n \"values\": [0, }");
  CHECK(msg.find("line 2") != std::string::npos);
}

TEST_CASE("store and load round trip every corpus instance") {
  const auto dir = testing::scratch_dir("io_roundtrip");
  for (const auto& inst : default_corpus()) {
    const auto path = dir / (inst.id + ".json");
    store_instance(inst, path);
    const Instance back = load_instance(path);
    CHECK(back.fn == inst.fn);
    CHECK(back.id == inst.id);
    CHECK(back.meta["family"] == inst.meta["family"]);
    store(inst.fn, dir / "plain.json");
    CHECK(load(dir / "plain.json") == inst.fn);
  }
}

TEST_CASE("real values survive a round trip exactly") {
  const auto dir = testing::scratch_dir("io_real");
  const SetFn f(1, Mode::Real, {ExtValue::real(0.1), ExtValue::real(-1.0 / 3.0)});
  store(f, dir / "r.json");
  CHECK(load(dir / "r.json") == f);
}

TEST_CASE("instance id falls back to the file stem") {
  const auto dir = testing::scratch_dir("io_stem");
  std::ofstream(dir / "my_fn.json") << R"({"n": 1, "values": [0, 1]})";
  CHECK(load_instance(dir / "my_fn.json").id == "my_fn");
}

TEST_CASE("file errors carry the path") {
  const auto dir = testing::scratch_dir("io_errors");
  try {
    load(dir / "missing.json");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("missing.json") != std::string::npos);
  }
  std::ofstream(dir / "short.json") << R"({"n": 2, "values": [0, 1, 2]})";
  try {
    load(dir / "short.json");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("short.json") != std::string::npos);
    CHECK(msg.find("expected 2^2") != std::string::npos);
  }
}
