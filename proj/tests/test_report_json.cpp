#include <string>
#include <vector>

#include <json.hpp>

#include "amcheck/construct.hpp"
#include "amcheck/errors.hpp"
#include "amcheck/report_json.hpp"
#include "doctest.h"

using namespace amc;
using njson = nlohmann::ordered_json;

namespace {

ElementSet span_of(const PermGroup& G, const std::vector<std::string>& words) {
  std::vector<int> idx;
  for (const auto& w : words)
    idx.push_back(G.index_of(Permutation::from_cycles(w, G.degree())));
  return closure_from(G, idx);
}

ElementSet center_set(const PermGroup& G) {
  ElementSet out(static_cast<int>(G.order()));
  std::vector<int> gidx;
  for (const auto& g : G.generators()) gidx.push_back(G.index_of(g));
  for (int e = 0; e < G.order(); ++e) {
    bool central = true;
    for (int g : gidx)
      if (G.mul(e, g) != G.mul(g, e)) {
        central = false;
        break;
      }
    if (central) out.set(e);
  }
  return out;
}

// Round-trips one report through the JSON text and the certifier.
void expect_roundtrip(const PermGroup& G, AnalysisSession& s,
                      const PropertyReport& rep,
                      const ElementSet* nsub = nullptr) {
  std::string text = report_to_json(s, "test", rep, nsub);
  CertifyResult cr = certify_report(G, text);
  INFO("property ", rep.property, " verdict ", rep.verdict, ": ", cr.reason);
  CHECK(cr.ok);
}

}  // namespace

TEST_CASE("reports serialize with the stable field layout") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);
  PropertyReport rep = check_am(s);
  std::string text = report_to_json(s, "S4", rep);
  CHECK(text.back() == '\n');

  njson j = njson::parse(text);
  CHECK(j["group"]["spec"] == "S4");
  CHECK(j["group"]["order"] == 24);
  CHECK(j["group"]["degree"] == 4);
  CHECK(j["group"]["num_irreducibles"] == 5);
  CHECK(j["property"] == "am");
  CHECK(j["normal_subgroup"].is_null());
  CHECK(j["verdict"] == true);
  CHECK(j["certificates"].is_array());
  CHECK(j["certificates"].size() == 20);  // all ordered pairs of 5 rows
  for (const njson& c : j["certificates"]) {
    CHECK(c["pair"].size() == 2);
    CHECK(c["subgroup"]["class_id"].is_number_integer());
    CHECK(c["subgroup"]["order"].is_number_integer());
    CHECK(c["subgroup"]["generators"].is_array());
    CHECK(c["character"]["kind"] == "linear");
    CHECK(c["character"]["index"].is_number_integer());
  }
  CHECK(j["uncovered_pair"].is_null());
  CHECK(j["stats"]["candidates"].is_number_integer());
  CHECK(j["stats"]["inductions"].is_number_integer());
  CHECK(j["stats"]["millis"].is_number_integer());

  // The top-level field order is part of the interface.
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"group", "property",
                                         "normal_subgroup", "verdict",
                                         "certificates", "uncovered_pair",
                                         "stats"});

  // Serialization is a pure function of the report.
  CHECK(report_to_json(s, "S4", rep) == text);
}

TEST_CASE("failed verdicts serialize the uncovered pair and no certificates") {
  PermGroup gl = gl2_3();
  AnalysisSession s = make_session(gl);
  PropertyReport rep = check_am(s);
  REQUIRE_FALSE(rep.verdict);
  njson j = njson::parse(report_to_json(s, "GL2_3", rep));
  CHECK(j["verdict"] == false);
  CHECK(j["certificates"].empty());
  REQUIRE(j["uncovered_pair"].is_array());
  CHECK(j["uncovered_pair"][0] == rep.uncovered_pair[0]);
  CHECK(j["uncovered_pair"][1] == rep.uncovered_pair[1]);
}

TEST_CASE("every emitted report certifies, true and false verdicts alike") {
  {
    PermGroup g = symmetric_group(4);
    AnalysisSession s = make_session(g);
    expect_roundtrip(g, s, check_am(s));
    expect_roundtrip(g, s, check_nam(s));   // verdict false
    expect_roundtrip(g, s, check_sam(s));   // verdict false
    expect_roundtrip(g, s, check_monomial(s));
    expect_roundtrip(g, s, check_quasi_monomial(s));
  }
  {
    PermGroup g = sl2_3();
    AnalysisSession s = make_session(g);
    expect_roundtrip(g, s, check_am(s));
    expect_roundtrip(g, s, check_monomial(s));  // verdict false
  }
  {
    PermGroup g = gl2_3();
    AnalysisSession s = make_session(g);
    expect_roundtrip(g, s, check_am(s));  // verdict false
  }
  {
    PermGroup g = cyclic_group(1);
    AnalysisSession s = make_session(g);
    expect_roundtrip(g, s, check_am(s));        // zero pairs to cover
    expect_roundtrip(g, s, check_monomial(s));  // trivial-subgroup witness
  }
}

TEST_CASE("relative reports carry and certify the normal subgroup block") {
  {
    PermGroup s4 = symmetric_group(4);
    AnalysisSession s = make_session(s4);
    ElementSet v4 = span_of(s4, {"(1,2)(3,4)", "(1,3)(2,4)"});
    PropertyReport rep = check_relative_am(s, v4);
    REQUIRE(rep.verdict);
    njson j = njson::parse(report_to_json(s, "S4", rep, &v4));
    CHECK(j["property"] == "relative_am");
    REQUIRE(j["normal_subgroup"].is_object());
    CHECK(j["normal_subgroup"]["order"] == 4);
    CHECK(j["normal_subgroup"]["generators"].size() >= 1);
    for (const njson& c : j["certificates"])
      CHECK(c["character"]["kind"] == "irreducible");
    expect_roundtrip(s4, s, rep, &v4);
  }
  {
    PermGroup sl = sl2_3();
    AnalysisSession s = make_session(sl);
    ElementSet z = center_set(sl);
    REQUIRE(z.count() == 2);
    PropertyReport rep = check_relative_am(s, z);
    REQUIRE(rep.verdict);
    expect_roundtrip(sl, s, rep, &z);
  }
  {
    PermGroup gl = gl2_3();
    AnalysisSession s = make_session(gl);
    ElementSet z = center_set(gl);
    PropertyReport rep = check_relative_am(s, z);
    REQUIRE_FALSE(rep.verdict);
    expect_roundtrip(gl, s, rep, &z);  // false verdict round-trips too
  }
}

TEST_CASE("tampered certificates are rejected with the offending entry") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);
  PropertyReport rep = check_am(s);
  const std::string base = report_to_json(s, "S4", rep);

  auto mutate = [&](auto&& fn) {
    njson j = njson::parse(base);
    fn(j);
    return certify_report(s4, j.dump());
  };

  SUBCASE("character index pushed out of range") {
    CertifyResult cr = mutate([](njson& j) {
      j["certificates"][0]["character"]["index"] = 99;
    });
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("certificate 0") != std::string::npos);
    CHECK(cr.reason.find("out of range") != std::string::npos);
  }

  SUBCASE("swapped pair claims a membership the induction lacks") {
    CertifyResult cr = mutate([](njson& j) {
      njson& pair = j["certificates"][0]["pair"];
      std::swap(pair[0], pair[1]);
    });
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("certificate 0") != std::string::npos);
  }

  SUBCASE("retargeted subgroup class id contradicts the generators") {
    njson probe = njson::parse(base);
    long long stated = probe["certificates"][0]["subgroup"]["class_id"]
                           .get<long long>();
    long long other = (stated + 1) % s.lattice.class_count();
    CertifyResult cr = mutate([&](njson& j) {
      j["certificates"][0]["subgroup"]["class_id"] = other;
    });
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("not the stated class") != std::string::npos);
  }

  SUBCASE("dropped certificate leaves a pair uncovered") {
    CertifyResult cr = mutate([](njson& j) {
      j["certificates"].erase(0);
    });
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("incomplete coverage") != std::string::npos);
  }

  SUBCASE("generator text that does not parse") {
    CertifyResult cr = mutate([](njson& j) {
      j["certificates"][0]["subgroup"]["generators"] = {"(1,5)"};
    });
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("does not parse") != std::string::npos);
  }

  SUBCASE("retyping the property demands normality the witnesses lack") {
    CertifyResult cr = mutate([](njson& j) { j["property"] = "nam"; });
    CHECK_FALSE(cr.ok);  // S4's witnesses are not all normal subgroups
  }
}

TEST_CASE("per-character witnesses enforce their defining equations") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);

  {
    // Point the witness for the last row at row 0: the induced character
    // equals row 4 (degree 3), not row 0 (degree 1).
    PropertyReport rep = check_monomial(s);
    njson j = njson::parse(report_to_json(s, "S4", rep));
    REQUIRE(j["certificates"].size() == 5);
    j["certificates"][4]["pair"] = {0, 0};
    CertifyResult cr = certify_report(s4, j.dump());
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("not equal to row 0") != std::string::npos);
  }
  {
    // A separating pair inside a per-character report is malformed.
    PropertyReport rep = check_quasi_monomial(s);
    njson j = njson::parse(report_to_json(s, "S4", rep));
    j["certificates"][0]["pair"] = {0, 1};
    CertifyResult cr = certify_report(s4, j.dump());
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("pair a row with itself") != std::string::npos);
  }
}

TEST_CASE("relative reports reject tampering with the normal subgroup") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);
  ElementSet v4 = span_of(s4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  PropertyReport rep = check_relative_am(s, v4);
  const std::string base = report_to_json(s, "S4", rep, &v4);

  SUBCASE("generators no longer produce the stated order") {
    njson j = njson::parse(base);
    j["normal_subgroup"]["generators"] = njson::array();
    CertifyResult cr = certify_report(s4, j.dump());
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("stated order") != std::string::npos);
  }

  SUBCASE("a consistent but non-normal subgroup is refused") {
    ElementSet flip = span_of(s4, {"(3,4)"});
    int ri = s.lattice.find(flip);
    REQUIRE(ri >= 0);
    njson j = njson::parse(base);
    j["normal_subgroup"]["class_id"] = s.lattice.records[ri].class_id;
    j["normal_subgroup"]["order"] = 2;
    j["normal_subgroup"]["generators"] = {"(3,4)"};
    CertifyResult cr = certify_report(s4, j.dump());
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("not normal") != std::string::npos);
  }

  SUBCASE("a linear-kind character cannot stand in for a relative witness") {
    njson j = njson::parse(base);
    j["certificates"][0]["character"]["kind"] = "linear";
    CertifyResult cr = certify_report(s4, j.dump());
    CHECK_FALSE(cr.ok);
    CHECK(cr.reason.find("irreducible") != std::string::npos);
  }
}

TEST_CASE("structural defects are errors, not failed verdicts") {
  PermGroup s4 = symmetric_group(4);
  AnalysisSession s = make_session(s4);
  const std::string base = report_to_json(s, "S4", check_am(s));

  CHECK_THROWS_AS(certify_report(s4, "not json at all"), InputError);

  auto broken = [&](auto&& fn) {
    njson j = njson::parse(base);
    fn(j);
    return j.dump();
  };

  CHECK_THROWS_AS(
      certify_report(s4, broken([](njson& j) { j.erase("property"); })),
      InputError);
  CHECK_THROWS_AS(
      certify_report(s4, broken([](njson& j) { j["property"] = "bogus"; })),
      InputError);
  CHECK_THROWS_AS(
      certify_report(s4, broken([](njson& j) { j["verdict"] = 1; })),
      InputError);
  CHECK_THROWS_AS(
      certify_report(s4, broken([](njson& j) { j.erase("stats"); })),
      InputError);
  CHECK_THROWS_AS(
      certify_report(s4,
                     broken([](njson& j) { j["stats"]["millis"] = "fast"; })),
      InputError);
  CHECK_THROWS_AS(
      certify_report(s4, broken([](njson& j) {
        j["certificates"][0]["character"]["kind"] = "projective";
      })),
      InputError);
  // Flipping only the verdict leaves no uncovered pair to point at.
  CHECK_THROWS_AS(
      certify_report(s4, broken([](njson& j) { j["verdict"] = false; })),
      InputError);
  // A relative claim without its subgroup block is uninterpretable.
  CHECK_THROWS_AS(
      certify_report(s4,
                     broken([](njson& j) { j["property"] = "relative_am"; })),
      InputError);

  PermGroup s5 = symmetric_group(5);
  CHECK_THROWS_AS(certify_report(s5, base), InputError);
}

TEST_CASE("json reports agree across thread counts up to timing") {
  PermGroup gl = gl2_3();
  AnalysisSession s1 = make_session(gl, {20000, 1});
  AnalysisSession s8 = make_session(gl, {20000, 8});
  for (int which = 0; which < 2; ++which) {
    PropertyReport a = which == 0 ? check_am(s1) : check_sam(s1);
    PropertyReport b = which == 0 ? check_am(s8) : check_sam(s8);
    njson ja = njson::parse(report_to_json(s1, "GL2_3", a));
    njson jb = njson::parse(report_to_json(s8, "GL2_3", b));
    ja["stats"]["millis"] = 0;
    jb["stats"]["millis"] = 0;
    CHECK(ja.dump() == jb.dump());
  }
}
