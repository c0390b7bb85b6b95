#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdkernel.h"
#include "cdkernel/report.hpp"

#include <cstring>
#include <string>

namespace {

struct Out {
  char* s = nullptr;
  ~Out() { cdk_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

}  // namespace

TEST_CASE("kernel lifecycle and errors") {
  cdk_kernel* k = nullptr;
  CHECK(cdk_kernel_create("disc", 1.0, 0, &k) == CDK_OK);
  REQUIRE(k != nullptr);
  cdk_kernel_destroy(k);

  cdk_kernel* bad = nullptr;
  cdk_status st = cdk_kernel_create("lens:3", 1.0, 0, &bad);
  CHECK(st == CDK_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::strlen(cdk_last_error()) > 0);

  CHECK(cdk_kernel_create("disc", -1.0, 0, &bad) != CDK_OK);
}

TEST_CASE("evaluation and reports") {
  cdk_kernel* k = nullptr;
  REQUIRE(cdk_kernel_create("matrix-ball:2x2", 1.0, 0, &k) == CDK_OK);

  Out v;
  CHECK(cdk_eval(k, "0,0,0,0", "0,0,0,0", &v.s) == CDK_OK);
  auto jv = nlohmann::json::parse(v.str());
  CHECK(jv["value"]["re"].get<double>() == doctest::Approx(1.0));
  CHECK(jv["value"]["im"].get<double>() == doctest::Approx(0.0));

  Out c;
  CHECK(cdk_curvature(k, "0,0,0,0", &c.s) == CDK_OK);
  auto jc = nlohmann::json::parse(c.str());
  auto h = cdk::matrix_from_json(jc["H"]);
  for (int i = 0; i < 4; ++i)
    CHECK(h(i, i).real() == doctest::Approx(4.0));

  Out g;
  CHECK(cdk_jet_gram(k, "0,0,0,0", 1, &g.s) == CDK_OK);
  auto jg = nlohmann::json::parse(g.str());
  CHECK(jg["order"] == 1);
  CHECK(jg["index_list"].size() == 5);

  Out t;
  CHECK(cdk_local_tuple(k, "0,0,0,0", &t.s) == CDK_OK);
  auto jt = nlohmann::json::parse(t.str());
  CHECK(jt["N"].size() == 4);

  Out w;
  CHECK(cdk_wallach(k, "0,0,0,0", 2, &w.s) == CDK_OK);
  auto jw = nlohmann::json::parse(w.str());
  CHECK(jw["index"] == 2);
  CHECK(jw["saturated"] == true);

  // exterior point maps to a domain error
  Out bad;
  CHECK(cdk_eval(k, "1,0,0,1", "0,0,0,0", &bad.s) == CDK_ERR_DOMAIN);
  CHECK(bad.s == nullptr);

  cdk_kernel_destroy(k);
}

TEST_CASE("contract and norm entry points") {
  Out r;
  CHECK(cdk_contract_test("omega3-contract", 0.3, &r.s) == CDK_OK);
  auto j = nlohmann::json::parse(r.str());
  CHECK(j["verdict"] == true);
  CHECK(j["computed_threshold"].get<double>() == doctest::Approx(0.25));

  Out p;
  CHECK(cdk_pa_norm("1,0,0,0", 1.0, 2, 2, &p.s) == CDK_OK);
  auto jp = nlohmann::json::parse(p.str());
  CHECK(jp["formula"].get<double>() == doctest::Approx(1.0));
  CHECK(jp["direct"].get<double>() == doctest::Approx(1.0));

  Out m;
  CHECK(cdk_check_transform("0.3", "0.1", "0.2", &m.s) == CDK_OK);
  CHECK(nlohmann::json::parse(m.str())["residual"].get<double>() < 1e-12);

  Out d;
  CHECK(cdk_det_expansion(2, 2, "0.1,0.2,0.05,0.1i", &d.s) == CDK_OK);
  auto jd = nlohmann::json::parse(d.str());
  CHECK(jd["remainder"].get<double>() ==
        doctest::Approx(jd["closed_r2"].get<double>()).epsilon(1e-12));

  Out bad;
  CHECK(cdk_contract_test("nope", 1.0, &bad.s) == CDK_ERR_PARSE);
}

TEST_CASE("reports are deterministic and round-trip") {
  cdk_kernel* k = nullptr;
  REQUIRE(cdk_kernel_create("omega2", 0.8, 0, &k) == CDK_OK);
  Out a, b;
  CHECK(cdk_curvature(k, "0.2+0.1i,0.1", &a.s) == CDK_OK);
  CHECK(cdk_curvature(k, "0.2+0.1i,0.1", &b.s) == CDK_OK);
  CHECK(a.str() == b.str());

  auto j = nlohmann::json::parse(a.str());
  auto h = cdk::matrix_from_json(j["H"]);
  auto again = cdk::to_json(h);
  CHECK(cdk::dump_deterministic(again) == cdk::dump_deterministic(j["H"]));
  cdk_kernel_destroy(k);
}

TEST_CASE("null argument handling") {
  Out o;
  CHECK(cdk_eval(nullptr, "0", "0", &o.s) == CDK_ERR_ARGUMENT);
  cdk_kernel* k = nullptr;
  REQUIRE(cdk_kernel_create("disc", 1.0, 0, &k) == CDK_OK);
  CHECK(cdk_eval(k, nullptr, "0", &o.s) == CDK_ERR_ARGUMENT);
  CHECK(cdk_jet_gram(k, "0", 9, &o.s) == CDK_ERR_UNSUPPORTED_ORDER);
  cdk_kernel_destroy(k);
}
