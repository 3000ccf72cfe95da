#include <doctest.h>

#include <string>

#include <json.hpp>

#include "hermitia/hermitia.h"

namespace {

struct Session {
    hm_session* h = hm_session_new();
    ~Session() { hm_session_free(h); }
    nlohmann::json result() const { return nlohmann::json::parse(hm_result_json(h)); }
    std::string error() const { return hm_last_error(h); }
};

}  // namespace

TEST_CASE("capi alpha") {
    Session s;
    REQUIRE(hm_alpha(s.h, 1, 1, "3") == HM_OK);
    CHECK(s.result()["alpha"] == "20");
    REQUIRE(hm_alpha(s.h, 1, 3, "3") == HM_OK);
    CHECK(s.result()["alpha"] == "68");

    CHECK(hm_alpha(s.h, 1, 1, "4") == HM_ERR_PRECONDITION);
    CHECK(s.error().find("4 = N(2)") != std::string::npos);
    CHECK(s.result().is_null());

    CHECK(hm_alpha(s.h, 5, 1, "3") == HM_ERR_PRECONDITION);
    CHECK(hm_alpha(s.h, 1, 1, "3x") == HM_ERR_ARGUMENT);
    CHECK(hm_alpha(s.h, 1, 1, nullptr) == HM_ERR_ARGUMENT);
    CHECK(hm_alpha(nullptr, 1, 1, "3") == HM_ERR_ARGUMENT);
}

TEST_CASE("capi precision and seed") {
    Session s;
    CHECK(hm_precision(s.h) == 128);
    CHECK(hm_set_precision(s.h, 63) == HM_ERR_PRECONDITION);
    CHECK(hm_precision(s.h) == 128);
    CHECK(hm_set_precision(s.h, 256) == HM_OK);
    REQUIRE(hm_lvalue(s.h, 1, 3, 0) == HM_OK);
    CHECK(s.result()["precision_bits"] == 256);

    hm_set_seed(s.h, 5);
    REQUIRE(hm_hconst(s.h, 2, 3, 5, 10) == HM_OK);
    auto a = s.result();
    REQUIRE(hm_hconst(s.h, 2, 3, 5, 10) == HM_OK);
    CHECK(s.result() == a);
    hm_set_seed(s.h, 6);
    REQUIRE(hm_hconst(s.h, 2, 3, 5, 10) == HM_OK);
    CHECK(s.result() != a);
}

TEST_CASE("capi lvalue") {
    Session s;
    REQUIRE(hm_lvalue(s.h, 1, -2, 0) == HM_OK);
    CHECK(s.result()["exact"] == "-1/2");
    REQUIRE(hm_lvalue(s.h, 1, -4, 0) == HM_OK);
    CHECK(s.result()["exact"] == "5/2");
    REQUIRE(hm_lvalue(s.h, 1, 3, 0) == HM_OK);
    CHECK(s.result()["coefficient"] == "1/32");
    CHECK(s.result()["pi_power"] == 3);
    CHECK(std::string(s.result()["numeric"]).rfind("0.96894614", 0) == 0);
    CHECK(hm_lvalue(s.h, 2, 5, 0) == HM_ERR_PRECONDITION);
    CHECK(s.error().find("out of theorem scope") != std::string::npos);
    CHECK(hm_lvalue(s.h, 1, -2, 4) == HM_ERR_PRECONDITION);
}

TEST_CASE("capi theta, rcount, is_norm") {
    Session s;
    REQUIRE(hm_theta(s.h, 1, 3, 2) == HM_OK);
    CHECK(s.result()["theta"] == "5/6");
    REQUIRE(hm_theta(s.h, 1, 3, 4) == HM_OK);
    CHECK(s.result()["theta"] == "425/432");
    REQUIRE(hm_rcount(s.h, 1, -3, 2) == HM_OK);
    CHECK(s.result()["r"] == 2);
    CHECK(hm_rcount(s.h, 1, -3, 0) == HM_ERR_PRECONDITION);

    int norm = -1;
    REQUIRE(hm_is_norm(s.h, 1, "4", &norm) == HM_OK);
    CHECK(norm == 1);
    REQUIRE(hm_is_norm(s.h, 1, "3", &norm) == HM_OK);
    CHECK(norm == 0);
    CHECK(s.result()["witness"].is_null());
}

TEST_CASE("capi hconst, cfrac, dims, basis, expandp, selftest") {
    Session s;
    REQUIRE(hm_hconst(s.h, 1, 1, 3, 100) == HM_OK);
    CHECK(s.result()["equal"] == 100);
    CHECK(s.result()["pass"] == true);
    REQUIRE(hm_hconst(s.h, 3, 5, 2, 20) == HM_OK);
    CHECK(s.result()["pass"] == true);

    REQUIRE(hm_cfrac(s.h, 1, "1/2", "0", 10, 0) == HM_OK);
    CHECK(s.result()["alphas"].size() == 2);
    CHECK(s.result()["terminated"] == true);
    CHECK(hm_cfrac(s.h, 1, "1/0", "0", 10, 0) != HM_OK);

    REQUIRE(hm_dims(s.h, 1, 1, 7, 1) == HM_OK);
    auto rows = s.result();
    REQUIRE(rows.size() == 4);
    CHECK(rows[3]["k"] == 7);
    CHECK(rows[3]["report"]["dim_W"] == 3);
    CHECK(rows[3]["table_match"] == true);

    REQUIRE(hm_basis(s.h, 2, 5) == HM_OK);
    CHECK(s.result()["basis"].size() == 3);

    REQUIRE(hm_expandp(s.h, 7, 3, "3") == HM_OK);
    CHECK(s.result()["membership"]["member"] == true);
    CHECK(s.result()["identities"]["d7_identity"] == true);

    CHECK(hm_selftest(s.h) == HM_OK);
}

TEST_CASE("capi bench") {
    Session s;
    long deltas[] = {3, 6};
    REQUIRE(hm_bench(s.h, 1, -2, deltas, 2, 2) == HM_OK);
    auto rows = s.result();
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) CHECK(r.contains("micros"));
    CHECK(hm_bench(s.h, 1, -2, nullptr, 0, 2) == HM_ERR_PRECONDITION);
}
