#include "doctest.h"

#include "amf/corpus.hpp"
#include "amf/model_io.hpp"

using namespace amf;
using nlohmann::json;

TEST_CASE("model serialization round trip") {
  for (const auto& instance : raising_corpus()) {
    json j = model_to_json(instance.model);
    DoubleCosetModel back = model_from_json(j);
    CHECK(model_to_json(back).dump() == j.dump());
    CHECK(model_hash(back) == model_hash(instance.model));
    CHECK(validate(back).accepted);
  }
}

TEST_CASE("parse errors carry locations") {
  json j = model_to_json(tiny_model());
  json missing = j;
  missing.erase("x_j");
  CHECK_THROWS_AS(model_from_json(missing), ParseError);

  json bad_weight = j;
  bad_weight["w_j"]["1"] = "0";
  CHECK_THROWS_AS(model_from_json(bad_weight), ParseError);

  json bad_label = j;
  bad_label["pi"]["1"] = "nowhere";
  CHECK_THROWS_AS(model_from_json(bad_label), ParseError);

  json dup = j;
  dup["x_k"] = {"a", "a"};
  CHECK_THROWS_AS(model_from_json(dup), ParseError);
}

TEST_CASE("large integers travel as strings") {
  json j = model_to_json(tiny_model());
  j["w_k"]["a"] = "123456789012345678901234567890";
  // Mass formula will fail, but the parse must be exact.
  DoubleCosetModel m = model_from_json(j);
  CHECK(m.w_k[0] == Int("123456789012345678901234567890"));
}

TEST_CASE("certificate round trip is byte exact") {
  DoubleCosetModel m = double_cover_model(3, 3);
  auto chars = k_level_integral_characters(m);
  std::optional<IntCharacter> eta;
  for (const auto& ch : chars)
    if (ch.values.at("deck") == -1 && ch.values.at("t") == 2) eta = ch;
  REQUIRE(eta.has_value());
  CongruenceCertificate cert = raising_bound(m, *eta, 3);
  cert.model_hash = model_hash(m);
  DetectResult det = detect_new_congruence(m, reduce_character(*eta, 3));
  cert.new_characters = det.all_new;
  if (!det.matches.empty()) cert.witness_character = det.matches.front();
  cert.diagnostics.push_back("abelianity tested against the class-partition surrogate");

  std::string once = certificate_to_json(cert).dump(2);
  CongruenceCertificate back = certificate_from_json(json::parse(once));
  std::string twice = certificate_to_json(back).dump(2);
  CHECK(once == twice);
}

TEST_CASE("validation report shape") {
  DoubleCosetModel m = tiny_model();
  json j = validation_report_json(m, validate(m));
  CHECK(j["accepted"] == true);
  CHECK(j["index_k"] == "2");
  CHECK(j["class_partition"]["count"] == 1);
  CHECK(j["annihilators"]["J"]["b_min"] == "1");
}
