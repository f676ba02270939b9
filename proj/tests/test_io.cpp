// Serialization: pinned string formats, schema conformance of every JSON
// shape the CLI emits, and byte-for-byte determinism.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <regex>

#include "ssmass/io.hpp"

using namespace ssmass;

namespace {

// Minimal structural validator for the draft-07 subset used by the schemas
// under docs/schemas: type, enum, pattern, required, properties,
// additionalProperties and items. Returns an error description or "".
bool type_matches(const json& inst, const std::string& t) {
  if (t == "object") return inst.is_object();
  if (t == "array") return inst.is_array();
  if (t == "string") return inst.is_string();
  if (t == "integer") return inst.is_number_integer() || inst.is_number_unsigned();
  if (t == "number") return inst.is_number();
  if (t == "boolean") return inst.is_boolean();
  if (t == "null") return inst.is_null();
  return false;
}

std::string validate(const json& inst, const json& schema, const std::string& path) {
  if (schema.contains("type")) {
    const json& ty = schema["type"];
    bool ok = false;
    if (ty.is_string()) {
      ok = type_matches(inst, ty.get<std::string>());
    } else {
      for (const auto& t : ty) ok = ok || type_matches(inst, t.get<std::string>());
    }
    if (!ok) return path + ": type mismatch";
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema["enum"]) ok = ok || v == inst;
    if (!ok) return path + ": not in enum";
  }
  if (schema.contains("pattern") && inst.is_string()) {
    std::regex re(schema["pattern"].get<std::string>());
    if (!std::regex_search(inst.get<std::string>(), re)) return path + ": pattern mismatch";
  }
  if (inst.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!inst.contains(key.get<std::string>()))
          return path + ": missing required key " + key.get<std::string>();
    const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
    for (auto it = inst.begin(); it != inst.end(); ++it) {
      if (props && props->contains(it.key())) {
        std::string err = validate(it.value(), (*props)[it.key()], path + "." + it.key());
        if (!err.empty()) return err;
      } else if (schema.contains("additionalProperties") &&
                 schema["additionalProperties"] == json(false)) {
        return path + ": unexpected key " + it.key();
      }
    }
  }
  if (inst.is_array() && schema.contains("items")) {
    unsigned i = 0;
    for (const auto& el : inst) {
      std::string err = validate(el, schema["items"], path + "[" + std::to_string(i++) + "]");
      if (!err.empty()) return err;
    }
  }
  return "";
}

json load_schema(const std::string& name) {
  std::ifstream in(std::string(SSMASS_SOURCE_DIR) + "/docs/schemas/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

void require_valid(const json& inst, const std::string& schema_name) {
  std::string err = validate(inst, load_schema(schema_name), "$");
  INFO(inst.dump(2));
  REQUIRE(err == "");
}

}  // namespace

TEST_CASE("rational and integer strings always carry a denominator") {
  CHECK(rational_str(Rational(1, 1152)) == "1/1152");
  CHECK(rational_str(Rational(5)) == "5/1");
  CHECK(rational_str(Rational(-3, 7)) == "-3/7");
  CHECK(rational_str(Rational(0)) == "0/1");
  CHECK(int_str(Int("51840")) == "51840");
}

TEST_CASE("unramified element string format") {
  UnramCtx R = make_unram(3, 2);
  UnramElem e(&R, 8, 5);
  CHECK(unram_str(e) == "[8,5] mod 9");
}

TEST_CASE("mass json matches schema") {
  json j = mass_json(mass_superspecial(2, 2));
  // The CLI adds the query echo; mirror it here.
  j["g"] = 2;
  j["star"] = false;
  j["case"] = nullptr;
  require_valid(j, "mass.schema.json");
  CHECK(j["value"] == "1/1152");

  json j2 = mass_json(mass_supersingular(3, XiCase::III));
  j2["g"] = nullptr;
  j2["star"] = false;
  j2["case"] = "III";
  require_valid(j2, "mass.schema.json");
}

TEST_CASE("classify json matches schema in all three cases") {
  FieldCtx K = make_field(2, 3);
  // [1 : y] has full degree 3 over F_4.
  XiClass c3 = classify(make_xi(FFElem::one(&K), FFElem::gen_y(&K)));
  json j3 = xiclass_json(c3);
  j3["p"] = 2;
  require_valid(j3, "classify.schema.json");
  CHECK(j3["case"] == "III");
  CHECK(j3["alpha"].is_null());

  FieldCtx K2 = make_field(2, 2);
  XiClass c2 = classify(make_xi(FFElem::one(&K2), FFElem::gen_y(&K2)));
  json j2 = xiclass_json(c2);
  j2["p"] = 2;
  require_valid(j2, "classify.schema.json");
  CHECK(j2["case"] == "II");
  CHECK(j2["alpha"].is_array());
  CHECK(j2["alpha"].size() == 2);

  XiClass c1 = classify(make_xi(FFElem::zero(&K2), FFElem::one(&K2)));
  json j1 = xiclass_json(c1);
  j1["p"] = 2;
  require_valid(j1, "classify.schema.json");
  CHECK(j1["case"] == "I");
  CHECK(j1["degree"] == 1);
}

TEST_CASE("lift json matches schema for success and obstruction") {
  Fp2Ctx k3 = make_fp2ctx(3);
  std::mt19937_64 rng(7);
  LiftResult ok = lift_sl2(random_sl2(&k3, rng), 8);
  REQUIRE(ok.ok);
  require_valid(lift_json(ok, ok.T.reduce_mod_pi()), "lift.schema.json");

  // Characteristic 2 inputs either lift or report a witnessed obstruction;
  // both shapes must validate.
  Fp2Ctx k2 = make_fp2ctx(2);
  bool saw_obstructed = false;
  for (uint64_t i = 0; i < 200 && !saw_obstructed; ++i) {
    FMat phibar = random_sl2(&k2, rng);
    LiftResult r = lift_sl2(phibar, 6);
    require_valid(lift_json(r, phibar), "lift.schema.json");
    saw_obstructed = saw_obstructed || !r.ok;
  }
}

TEST_CASE("census json and csv") {
  auto rows = census(2, 1, 3);
  require_valid(census_json(2, 1, rows), "census.schema.json");
  std::string csv = census_csv(rows);
  CHECK(csv == "degree,count,mass_num,mass_den,orbit_size\n1,5,1,1152,45\n");

  // Without a level the orbit column is empty but still delimited.
  auto rows2 = census(2, 1);
  std::string csv2 = census_csv(rows2);
  CHECK(csv2 == "degree,count,mass_num,mass_den,orbit_size\n1,5,1,1152,\n");
  require_valid(census_json(2, 1, rows2), "census.schema.json");

  auto rows3 = census(2, 2, 3);
  std::string csv3 = census_csv(rows3);
  CHECK(csv3 ==
        "degree,count,mass_num,mass_den,orbit_size\n"
        "1,5,1,1152,45\n"
        "2,12,1,160,324\n");
  require_valid(census_json(2, 2, rows3), "census.schema.json");
}

TEST_CASE("endo report json shape") {
  FieldCtx K = make_field(2, 1);
  WTowerCtx R = make_wtower(K, 2);
  std::mt19937_64 rng(11);
  auto rep = endo_agreement_report(R, make_xi(FFElem::one(&K), FFElem::zero(&K)), 10, rng);
  json j = endo_report_json(rep);
  CHECK(j["checked"] == 10);
  CHECK(j["agreed"] == 10);
  CHECK(j["mismatches"].is_array());
  CHECK(j["case"] == "I");
}

TEST_CASE("serialization is deterministic") {
  auto dump_once = [] {
    json j = census_json(3, 2, census(3, 2, 4));
    j["lift"] = [] {
      Fp2Ctx k = make_fp2ctx(3);
      std::mt19937_64 rng(99);
      LiftResult r = lift_sl2(random_sl2(&k, rng), 10);
      return lift_json(r, r.T.reduce_mod_pi());
    }();
    return j.dump();
  };
  CHECK(dump_once() == dump_once());
}
