#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ddeg/ddeg.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::vector<json> records(const ddeg_result* r) {
  std::vector<json> out;
  std::istringstream in(ddeg_result_records(r));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

struct Result {
  ddeg_result* r = nullptr;
  ~Result() { ddeg_result_free(r); }
};

struct Endo {
  ddeg_endo* f = nullptr;
  ~Endo() { ddeg_endo_free(f); }
};

struct Config {
  ddeg_config* c = ddeg_config_new();
  ~Config() { ddeg_config_free(c); }
};

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strlen(ddeg_version()) > 0);
  CHECK(std::string(ddeg_status_name(DDEG_OK)) != std::string(ddeg_status_name(DDEG_EINPUT)));
}

TEST_CASE("configuration") {
  Config cfg;
  char buf[64];
  REQUIRE(ddeg_config_get(cfg.c, "digits", buf, sizeof buf) == DDEG_OK);
  CHECK(std::string(buf) == "30");
  CHECK(ddeg_config_set(cfg.c, "digits", "12") == DDEG_OK);
  ddeg_config_get(cfg.c, "digits", buf, sizeof buf);
  CHECK(std::string(buf) == "12");
  CHECK(ddeg_config_set(cfg.c, "tolerance", "1e-4") == DDEG_OK);
  CHECK(ddeg_config_set(cfg.c, "no_such_key", "1") == DDEG_EARG);
  CHECK(std::strlen(ddeg_last_error()) > 0);
  CHECK(ddeg_config_set(cfg.c, "digits", "many") == DDEG_EARG);
  CHECK(ddeg_config_set(nullptr, "digits", "1") == DDEG_EARG);
  char tiny[1];
  CHECK(ddeg_config_get(cfg.c, "digits", tiny, sizeof tiny) == DDEG_EARG);
}

TEST_CASE("compute round trip") {
  Config cfg;
  Result res;
  REQUIRE(ddeg_compute(cfg.c, "(x3 + x1*x2^3, x1, x2)", &res.r) == DDEG_OK);
  CHECK(ddeg_result_exit_code(res.r) == 0);
  auto recs = records(res.r);
  REQUIRE(recs.size() == 1);
  const json& j = recs[0];
  CHECK(j["schema"] == "ddeg/1");
  CHECK(j["kind"] == "result");
  CHECK(j["exact"] == true);
  CHECK(j["value"]["defining"] == json::array({-3, -1, 1}));
  CHECK(j["config"]["digits"] == 30);
  CHECK(std::string(ddeg_result_table(res.r)).find("2.30277") != std::string::npos);

  // identical calls give identical records
  Result again;
  ddeg_compute(cfg.c, "(x3 + x1*x2^3, x1, x2)", &again.r);
  CHECK(std::string(ddeg_result_records(res.r)) == ddeg_result_records(again.r));
}

TEST_CASE("error statuses") {
  Config cfg;
  {
    Result r;
    CHECK(ddeg_compute(cfg.c, "(x1 +, x2)", &r.r) == DDEG_EINPUT);
    REQUIRE(r.r);
    CHECK(ddeg_result_exit_code(r.r) == 3);
    auto recs = records(r.r);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["kind"] == "error");
  }
  {
    Result r;
    CHECK(ddeg_compute(cfg.c, "(x1, x1^2)", &r.r) == DDEG_EDOMAIN);
    CHECK(ddeg_result_exit_code(r.r) == 3);
  }
  {
    Result r;
    CHECK(ddeg_classify(cfg.c, "x^2 + 1", nullptr, &r.r) != DDEG_OK);
    CHECK(ddeg_result_exit_code(r.r) == 3);
  }
  {
    Result r;
    CHECK(ddeg_enumerate(cfg.c, "nonsense", 3, &r.r) != DDEG_OK);
  }
  Result r;
  CHECK(ddeg_compute(cfg.c, nullptr, &r.r) == DDEG_EARG);
  CHECK(ddeg_compute(cfg.c, "(x1)", nullptr) == DDEG_EARG);
}

TEST_CASE("resource budget") {
  Config cfg;
  Result r;
  CHECK(ddeg_oracle(cfg.c, "(x1^1000, x1 + x2^3)", 8, &r.r) == DDEG_ERESOURCE);
  CHECK(ddeg_result_exit_code(r.r) == 4);
  auto recs = records(r.r);
  REQUIRE(recs.size() == 4);
  CHECK(recs[2]["degree"] == 1000000000);
  CHECK(recs[3]["truncated"] == true);

  // a tiny term budget only pushes the oracle onto its modular fallback
  ddeg_config_set(cfg.c, "budget_terms", "10");
  Result small;
  CHECK(ddeg_oracle(cfg.c, "(x2 + x1^2 + x3^3, x3 + x1*x2, x1 + x2^2)", 6, &small.r) == DDEG_OK);
  CHECK(records(small.r)[5]["degree"] == 138);
}

TEST_CASE("other jobs") {
  Config cfg;
  {
    Result r;
    REQUIRE(ddeg_enumerate(cfg.c, "theorem1", 3, &r.r) == DDEG_OK);
    CHECK(records(r.r).size() > 5);
  }
  {
    Result r;
    REQUIRE(ddeg_classify(cfg.c, "x^2 - 3*x + 1", nullptr, &r.r) == DDEG_OK);
    auto recs = records(r.r);
    REQUIRE(!recs.empty());
    CHECK(recs[0]["minimal_dimension"] == 4);
  }
  {
    Result r;
    REQUIRE(ddeg_realize(cfg.c, "x^2 - 3*x + 1", nullptr, "[[1,1],[1,2]]", &r.r) == DDEG_OK);
    CHECK(records(r.r)[0]["dimension"] == 4);
  }
  {
    Result r;
    REQUIRE(ddeg_examplerst(cfg.c, 2, 3, 1, &r.r) == DDEG_OK);
    CHECK(records(r.r)[0]["rst"] == json::array({2, 3, 1}));
  }
  {
    Result r;
    REQUIRE(ddeg_oracle(cfg.c, "(x1^2 + x2, x1)", 6, &r.r) == DDEG_OK);
    auto recs = records(r.r);
    REQUIRE(recs.size() == 7);
    for (int k = 0; k < 6; ++k) CHECK(recs[k]["degree"] == 1 << (k + 1));
    CHECK(recs[6]["kind"] == "oracle-summary");
  }
  {
    Result r;
    CHECK(ddeg_examplerst(cfg.c, 0, 1, 1, &r.r) != DDEG_OK);
  }
}

TEST_CASE("endomorphism handles") {
  Endo f, g, fg, f3, fff;
  REQUIRE(ddeg_endo_parse("(x1^2 + x2, x1)", &f.f) == DDEG_OK);
  REQUIRE(ddeg_endo_parse("(x2, x1)", &g.f) == DDEG_OK);
  CHECK(ddeg_endo_arity(f.f) == 2);
  CHECK(ddeg_endo_degree(f.f) == 2);
  Endo reparsed;
  REQUIRE(ddeg_endo_parse(ddeg_endo_str(f.f), &reparsed.f) == DDEG_OK);
  CHECK(ddeg_endo_equal(f.f, reparsed.f) == 1);
  REQUIRE(ddeg_endo_compose(f.f, g.f, &fg.f) == DDEG_OK);
  Endo expected;
  ddeg_endo_parse("(x2^2 + x1, x2)", &expected.f);
  CHECK(ddeg_endo_equal(fg.f, expected.f) == 1);
  REQUIRE(ddeg_endo_iterate(f.f, 3, &f3.f) == DDEG_OK);
  Endo ff;
  ddeg_endo_compose(f.f, f.f, &ff.f);
  ddeg_endo_compose(f.f, ff.f, &fff.f);
  CHECK(ddeg_endo_equal(f3.f, fff.f) == 1);
  CHECK(ddeg_endo_equal(f.f, g.f) == 0);
  CHECK(ddeg_endo_degree(f3.f) == 8);

  Endo bad, zero, h;
  CHECK(ddeg_endo_parse("(x1^, x2)", &bad.f) == DDEG_EINPUT);
  CHECK(bad.f == nullptr);
  REQUIRE(ddeg_endo_parse("(0, 0)", &zero.f) == DDEG_OK);
  CHECK(ddeg_endo_degree(zero.f) == -1);
  Endo three;
  ddeg_endo_parse("(x1, x2, x3)", &three.f);
  CHECK(ddeg_endo_compose(f.f, three.f, &h.f) != DDEG_OK);
}
