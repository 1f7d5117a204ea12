#include <doctest.h>

#include <filesystem>

#include "statcat/error.hpp"
#include "statcat/inference.hpp"
#include "statcat/io.hpp"
#include "statcat/morphism.hpp"
#include "support.hpp"

using namespace statcat;
using fixture::q;

namespace {

std::string data_file(const std::string& name) { return std::string(STATCAT_DATA_DIR) + "/" + name; }

Json model_text(const std::string& mass_a, const std::string& name_b = "b") {
  return Json::parse(R"({"schema": "statcat/model/v1", "points": ["u", "v"],
    "family": [{"name": "a", "mass": {"u": ")" + mass_a + R"(", "v": "1/2"}},
               {"name": ")" + name_b + R"(", "mass": {"u": "1"}}]})");
}

}  // namespace

TEST_CASE("every data fixture round-trips byte for byte") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(STATCAT_DATA_DIR)) {
    const auto path = entry.path().string();
    const auto text = read_file(path);
    const auto j = parse_json(text);
    CAPTURE(path);
    std::string again;
    if (path.ends_with(".model.json")) {
      again = dump_canonical(model_document_to_json(model_document_from_json(j)));
    } else if (path.ends_with(".map.json")) {
      again = dump_canonical(map_to_json(map_from_json(j)));
    } else if (path.ends_with(".topology.json")) {
      again = dump_canonical(topology_to_json(topology_from_json(j)));
    } else {
      continue;
    }
    ++seen;
    CHECK(again == text);
  }
  CHECK(seen >= 8u);
}

TEST_CASE("model documents carry the worked example") {
  const auto doc = model_document_from_json(parse_json(read_file(data_file("coinpair.model.json"))));
  const auto expected = fixture::coinpair_model();
  REQUIRE(doc.model.size() == 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(doc.model.name(i) == expected.name(i));
    CHECK(doc.model.member(i) == expected.member(i));
  }
  REQUIRE(doc.parametrisation);
  CHECK(doc.parametrisation->parameters() == std::vector<RationalVector>{{q(1, 4)}, {q(1, 2)}, {q(3, 4)}});
  const auto map = map_from_json(parse_json(read_file(data_file("sum.map.json"))), doc.model.sigma());
  CHECK(map.assignment() == fixture::sum_map().assignment());
}

TEST_CASE("model parse errors name the offending field") {
  CHECK_NOTHROW(model_document_from_json(model_text("1/2")));
  // Missing points read as zero mass.
  CHECK(model_document_from_json(model_text("1/2")).model.member(1).mass(1) == 0);

  try {
    model_document_from_json(model_text("9/16"));
    FAIL("expected InvariantError");
  } catch (const InvariantError& e) {
    CHECK(std::string(e.what()).find("\"a\"") != std::string::npos);
    CHECK(std::string(e.what()).find("17/16") != std::string::npos);
  }
  try {
    model_document_from_json(model_text("one half"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where() == "/family/0/mass/u");
  }
  try {
    model_document_from_json(model_text("1/2", "a"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where() == "/family/1/name");
  }
  auto dup = model_text("1/2");
  dup["points"] = {"u", "u"};
  try {
    model_document_from_json(dup);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where() == "/points");
  }
  auto schema = model_text("1/2");
  schema["schema"] = "statcat/model/v2";
  CHECK_THROWS_AS(model_document_from_json(schema), ParseError);
  auto missing = model_text("1/2");
  missing.erase("family");
  try {
    model_document_from_json(missing);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where() == "/family");
  }
  try {
    parse_json("{\"points\": [");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where().starts_with("byte "));
  }
  CHECK_THROWS_AS(read_file(data_file("no-such-file.json")), ParseError);
}

TEST_CASE("map documents are validated against the models") {
  const auto m = fixture::coinpair_model();
  auto j = parse_json(read_file(data_file("sum.map.json")));
  j["assignment"]["01"] = "7";
  CHECK_THROWS_AS(map_from_json(j, m.sigma()), ParseError);
  auto coarse = parse_json(read_file(data_file("sum.map.json")));
  coarse["codomain"]["sigma"] = Json::array({Json::array({"0", "1"}), Json::array({"2"})});
  CHECK_NOTHROW(map_from_json(coarse));
  auto bad = parse_json(read_file(data_file("sum.map.json")));
  bad["domain"]["sigma"] = Json::array({Json::array({"00", "01"}), Json::array({"10", "11"})});
  CHECK_THROWS_AS(map_from_json(bad), NonMeasurableMap);
}

TEST_CASE("digests and canonical dumps") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(dump_canonical(Json::parse(R"({"b": 1, "a": [1, 2]})")) ==
        "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1\n}\n");
  CHECK(rational_json(q(6, 8)) == "3/4");
}

TEST_CASE("witnesses use names and labels") {
  const auto m = fixture::coinpair_model();
  const auto first = fixture::first_map();
  const auto r = is_sufficient(m, first);
  const auto& y = first.codomain();
  const auto j = report_json(r, WitnessContext{.members = &m, .x_sigma = &m.sigma(), .y_sigma = &y});
  CHECK(j["pass"] == false);
  CHECK(j["route"] == "sufficiency");
  CHECK(j["witness"]["member"]["name"] == "p=1/4");
  CHECK(j["witness"]["x"] == Json::array({"00"}));
  CHECK(j["witness"]["y"] == Json::array({"0"}));
  CHECK(j["witness"]["lhs"] == "3/4");
  CHECK(j["witness"]["rhs"] == "7/12");
}

TEST_CASE("equivalence certificates verify and detect tampering") {
  const auto a = fixture::coinpair_model();
  const auto b = induce_morphism(a, fixture::sum_map()).target();
  const auto v = check_equivalence(a, b, fixture::sum_map());
  Json cert;
  cert["verdict"] = "pass";
  cert["reports"] = Json::array();
  for (const auto* r : {&v.route_iso, &v.route_detailed_balance, &v.route_suff_complete}) {
    cert["reports"].push_back(report_json(*r, {}));
  }
  CHECK(verify_equivalence_certificate(cert, a, b).empty());

  const auto k = kernel_from_json(cert["reports"][0]["certificate"]["backward"], b.sigma(), a.sigma());
  CHECK(k == *v.route_iso.certificate.backward);

  auto tampered = cert;
  tampered["reports"][0]["certificate"]["backward"]["rows"][1] = {"0", "1", "0", "0"};
  CHECK_FALSE(verify_equivalence_certificate(tampered, a, b).empty());

  Json empty_pass;
  empty_pass["verdict"] = "pass";
  empty_pass["reports"] = Json::array();
  CHECK_FALSE(verify_equivalence_certificate(empty_pass, a, b).empty());
}
