// Exercises the C binding: handle lifecycle, status codes, thread-local
// error text, and the serialized report formats.  Everything here goes
// through qkm.h only, the way an external consumer would.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qkm.h"

#include <json.hpp>

#include <string>

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  qkm_string_free(s);
  return out;
}

qkm_cartan* make_cartan(std::initializer_list<int> entries, int rank) {
  qkm_cartan* c = nullptr;
  REQUIRE(qkm_cartan_create(std::data(entries), rank, &c) == QKM_OK);
  REQUIRE(c != nullptr);
  return c;
}

}  // namespace

TEST_CASE("cartan creation and validation") {
  qkm_cartan* a1 = make_cartan({2}, 1);
  CHECK(qkm_cartan_rank(a1) == 1);
  qkm_cartan_destroy(a1);

  qkm_cartan* a2 = make_cartan({2, -1, -1, 2}, 2);
  CHECK(qkm_cartan_rank(a2) == 2);
  qkm_cartan_destroy(a2);

  qkm_cartan* c = nullptr;
  CHECK(qkm_cartan_create(nullptr, 1, &c) == QKM_ERR_INVALID);
  CHECK(c == nullptr);

  int bad_rank[] = {2};
  CHECK(qkm_cartan_create(bad_rank, 0, &c) == QKM_ERR_INVALID);
  CHECK(std::string(qkm_last_error()).find("rank") != std::string::npos);

  int asym[] = {2, -1, -2, 2};
  CHECK(qkm_cartan_create(asym, 2, &c) == QKM_ERR_INVALID);
  CHECK(std::string(qkm_last_error()).find("symmetric") != std::string::npos);

  int pos_off[] = {2, 1, 1, 2};
  CHECK(qkm_cartan_create(pos_off, 2, &c) == QKM_ERR_INVALID);

  int bad_diag[] = {1};
  CHECK(qkm_cartan_create(bad_diag, 1, &c) == QKM_ERR_INVALID);

  std::vector<int> big(17 * 17, 0);
  for (int i = 0; i < 17; ++i) big[i * 17 + i] = 2;
  CHECK(qkm_cartan_create(big.data(), 17, &c) == QKM_ERR_COST);
  CHECK(std::string(qkm_last_error()).find("limit") != std::string::npos);
  CHECK(c == nullptr);

  CHECK(qkm_cartan_rank(nullptr) == -1);
  qkm_cartan_destroy(nullptr);  // must be a no-op
}

TEST_CASE("cartan from JSON") {
  qkm_cartan* c = nullptr;
  REQUIRE(qkm_cartan_from_json(
              R"({"rank": 2, "matrix": [[2, -1], [-1, 2]]})", &c) == QKM_OK);
  CHECK(qkm_cartan_rank(c) == 2);
  qkm_cartan_destroy(c);
  c = nullptr;

  // rank member optional
  REQUIRE(qkm_cartan_from_json(R"({"matrix": [[2]]})", &c) == QKM_OK);
  CHECK(qkm_cartan_rank(c) == 1);
  qkm_cartan_destroy(c);
  c = nullptr;

  CHECK(qkm_cartan_from_json("not json", &c) == QKM_ERR_INVALID);
  CHECK(qkm_cartan_from_json(R"({"rank": 2})", &c) == QKM_ERR_INVALID);
  CHECK(qkm_cartan_from_json(R"({"rank": 3, "matrix": [[2]]})", &c) ==
        QKM_ERR_INVALID);
  CHECK(qkm_cartan_from_json(R"({"matrix": [[2, -1]]})", &c) ==
        QKM_ERR_INVALID);
  CHECK(qkm_cartan_from_json(R"({"matrix": [[2.5]]})", &c) ==
        QKM_ERR_INVALID);
  CHECK(qkm_cartan_from_json(R"({"matrix": []})", &c) == QKM_ERR_INVALID);
  CHECK(c == nullptr);
}

TEST_CASE("suite run, report retrieval, and error text lifecycle") {
  qkm_cartan* a1 = make_cartan({2}, 1);

  qkm_report* rep = nullptr;
  REQUIRE(qkm_suite_run(a1, 1, 1, 1, "r2, R6", 1, 0, 0, &rep) == QKM_OK);
  REQUIRE(rep != nullptr);
  CHECK(qkm_report_all_pass(rep) == 1);
  CHECK(std::string(qkm_last_error()).empty());

  char* text = nullptr;
  REQUIRE(qkm_report_text(rep, &text) == QKM_OK);
  std::string text_s = take(text);
  CHECK(text_s.find("PASS R2") != std::string::npos);
  CHECK(text_s.find("PASS R6") != std::string::npos);

  char* json = nullptr;
  REQUIRE(qkm_report_json(rep, &json) == QKM_OK);
  std::string json_s = take(json);
  CHECK(json_s.back() == '\n');
  nlohmann::json doc = nlohmann::json::parse(json_s);
  CHECK(doc["all_pass"] == true);
  REQUIRE(doc["fragments"].size() == 2);
  CHECK(doc["fragments"][0]["relation"] == "R2");
  CHECK(doc["fragments"][1]["relation"] == "R6");
  CHECK(doc["fragments"][0]["status"] == "pass");
  CHECK(doc.contains("wall_seconds"));

  // repeated serialization is stable
  char* json2 = nullptr;
  REQUIRE(qkm_report_json(rep, &json2) == QKM_OK);
  CHECK(take(json2) == json_s);
  qkm_report_destroy(rep);

  // bad arguments
  rep = nullptr;
  CHECK(qkm_suite_run(nullptr, 1, 1, 1, nullptr, 1, 0, 0, &rep) ==
        QKM_ERR_INVALID);
  CHECK(qkm_suite_run(a1, 1, 1, 1, "R2,BOGUS", 1, 0, 0, &rep) ==
        QKM_ERR_INVALID);
  CHECK(std::string(qkm_last_error()).find("BOGUS") != std::string::npos);
  CHECK(qkm_suite_run(a1, 1, 1, 1, "R2,,R6", 1, 0, 0, &rep) ==
        QKM_ERR_INVALID);
  CHECK(qkm_suite_run(a1, -1, 1, 1, nullptr, 1, 0, 0, &rep) ==
        QKM_ERR_INVALID);
  CHECK(qkm_suite_run(a1, 1, 1, 1, nullptr, 0, 0, 0, &rep) ==
        QKM_ERR_INVALID);
  CHECK(rep == nullptr);

  // success clears the error text
  qkm_report* ok = nullptr;
  REQUIRE(qkm_suite_run(a1, 0, 0, 1, "R2", 1, 0, 0, &ok) == QKM_OK);
  CHECK(std::string(qkm_last_error()).empty());
  qkm_report_destroy(ok);

  CHECK(qkm_report_all_pass(nullptr) == 0);
  qkm_report_destroy(nullptr);  // must be a no-op
  qkm_string_free(nullptr);     // must be a no-op
  qkm_cartan_destroy(a1);
}

TEST_CASE("mutated vertex normalization makes the suite fail") {
  qkm_cartan* a1 = make_cartan({2}, 1);
  qkm_report* rep = nullptr;
  REQUIRE(qkm_suite_run(a1, 2, 1, 2, "R6,R8", 1, 0, 1, &rep) == QKM_OK);
  CHECK(qkm_report_all_pass(rep) == 0);
  char* json = nullptr;
  REQUIRE(qkm_report_json(rep, &json) == QKM_OK);
  nlohmann::json doc = nlohmann::json::parse(take(json));
  CHECK(doc["all_pass"] == false);
  bool witnessed = false;
  for (const auto& frag : doc["fragments"])
    if (frag["status"] == "fail" && !frag["witnesses"].empty())
      witnessed = true;
  CHECK(witnessed);
  qkm_report_destroy(rep);
  qkm_cartan_destroy(a1);
}

TEST_CASE("identity checks") {
  int holds = -1;
  char* message = nullptr;

  REQUIRE(qkm_identity_check("ser2", 2, &holds, &message) == QKM_OK);
  CHECK(holds == 1);
  CHECK(take(message).find("zero") != std::string::npos);

  REQUIRE(qkm_identity_check("SER3", 2, &holds, nullptr) == QKM_OK);
  CHECK(holds == 1);

  REQUIRE(qkm_identity_check("serre-coeff", 3, &holds, &message) == QKM_OK);
  CHECK(holds == 1);
  qkm_string_free(message);

  REQUIRE(qkm_identity_check("binom", 4, &holds, &message) == QKM_OK);
  CHECK(holds == 1);
  CHECK(take(message).find("1..4") != std::string::npos);

  REQUIRE(qkm_identity_check("diff", 2, &holds, &message) == QKM_OK);
  CHECK(holds == 1);
  qkm_string_free(message);

  CHECK(qkm_identity_check("nope", 2, &holds, nullptr) == QKM_ERR_INVALID);
  CHECK(std::string(qkm_last_error()).find("unknown identity") !=
        std::string::npos);
  CHECK(qkm_identity_check("ser2", 0, &holds, nullptr) == QKM_ERR_INVALID);
  CHECK(qkm_identity_check("ser2", 7, &holds, nullptr) == QKM_ERR_COST);
  CHECK(qkm_identity_check("ser3", 7, &holds, nullptr) == QKM_ERR_COST);
  CHECK(qkm_identity_check("diff", 13, &holds, nullptr) == QKM_ERR_COST);
  CHECK(qkm_identity_check("binom", 65, &holds, nullptr) == QKM_ERR_COST);
  CHECK(qkm_identity_check(nullptr, 2, &holds, nullptr) == QKM_ERR_INVALID);
}

TEST_CASE("Hall-Littlewood text endpoints") {
  char* out = nullptr;
  REQUIRE(qkm_hl_poly_text("1,1", 2, &out) == QKM_OK);
  CHECK(take(out) == "z1 z2");
  REQUIRE(qkm_hl_poly_text("", 2, &out) == QKM_OK);
  CHECK(take(out) == "1");
  REQUIRE(qkm_hl_poly_text("0", 1, &out) == QKM_OK);
  CHECK(take(out) == "1");

  CHECK(qkm_hl_poly_text("2,,1", 2, &out) == QKM_ERR_INVALID);
  CHECK(qkm_hl_poly_text("1,2", 2, &out) == QKM_ERR_INVALID);
  CHECK(qkm_hl_poly_text("1,1,1", 2, &out) == QKM_ERR_INVALID);
  CHECK(qkm_hl_poly_text("1", 9, &out) == QKM_ERR_COST);
  CHECK(qkm_hl_poly_text("25", 2, &out) == QKM_ERR_COST);
  CHECK(qkm_hl_poly_text("1", 0, &out) == QKM_ERR_INVALID);

  const char* square = R"({
    "vars": 2,
    "terms": [
      {"exp": [2, 0], "coeff": [[0, "1"]]},
      {"exp": [1, 1], "coeff": [[0, "2"]]},
      {"exp": [0, 2], "coeff": [[0, "1"]]}
    ]})";
  REQUIRE(qkm_hl_expand_text(square, &out) == QKM_OK);
  CHECK(take(out) == "2: 1\n1,1: 1 + 1*q^2\n");

  // non-canonical rational input is normalized on the way in
  const char* scaled = R"({
    "vars": 2,
    "terms": [{"exp": [1, 0], "coeff": [[2, "2/4"]]},
              {"exp": [0, 1], "coeff": [[2, "1/2"]]}]})";
  REQUIRE(qkm_hl_expand_text(scaled, &out) == QKM_OK);
  CHECK(take(out) == "1: 1/2*q^1\n");

  REQUIRE(qkm_hl_expand_text(R"({"vars": 2, "terms": []})", &out) == QKM_OK);
  CHECK(take(out) == "0\n");

  // cancelling coefficients also give the zero polynomial
  const char* cancel = R"({
    "vars": 1,
    "terms": [{"exp": [3], "coeff": [[0, "1"], [0, "-1"]]}]})";
  REQUIRE(qkm_hl_expand_text(cancel, &out) == QKM_OK);
  CHECK(take(out) == "0\n");

  CHECK(qkm_hl_expand_text("not json", &out) == QKM_ERR_INVALID);
  CHECK(qkm_hl_expand_text(R"({"vars": 2})", &out) == QKM_ERR_INVALID);
  CHECK(qkm_hl_expand_text(
            R"({"vars": 0, "terms": []})", &out) == QKM_ERR_INVALID);
  CHECK(qkm_hl_expand_text(
            R"({"vars": 9, "terms": []})", &out) == QKM_ERR_COST);
  // asymmetric polynomial is rejected by the expander
  CHECK(qkm_hl_expand_text(
            R"({"vars": 2, "terms": [{"exp": [1, 0], "coeff": [[0, "1"]]}]})",
            &out) == QKM_ERR_INVALID);
  // malformed pieces
  CHECK(qkm_hl_expand_text(
            R"({"vars": 2, "terms": [{"exp": [1], "coeff": [[0, "1"]]}]})",
            &out) == QKM_ERR_INVALID);
  CHECK(qkm_hl_expand_text(
            R"({"vars": 1, "terms": [{"exp": [1], "coeff": [[0, "x"]]}]})",
            &out) == QKM_ERR_INVALID);
  CHECK(qkm_hl_expand_text(
            R"({"vars": 1, "terms": [{"exp": [1], "coeff": [0]}]})", &out) ==
        QKM_ERR_INVALID);
  CHECK(qkm_hl_expand_text(
            R"({"vars": 1, "terms": [{"exp": [25], "coeff": [[0, "1"]]}]})",
            &out) == QKM_ERR_COST);
}
