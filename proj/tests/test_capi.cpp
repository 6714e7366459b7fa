#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "np3/np3.h"

using nlohmann::json;

namespace {

struct Ctx {
    np3_context* c = np3_context_new();
    ~Ctx() { np3_context_free(c); }
};

}  // namespace

TEST_CASE("catalog listing through the C interface") {
    Ctx ctx;
    REQUIRE(ctx.c != nullptr);
    const int rc = np3_run(ctx.c, R"({"command": "catalog_list"})");
    CHECK(rc == NP3_OK);
    const std::string out = np3_output(ctx.c);
    const json j = json::parse(out);
    CHECK(j.at("results").size() == 6);
    CHECK(out.find("euclidean") != std::string::npos);
    CHECK(out.find("berger") != std::string::npos);
    CHECK(std::string(np3_error(ctx.c)).empty());
    CHECK(j.contains("version"));
}

TEST_CASE("verify runs are byte-identical for identical configs") {
    Ctx ctx;
    const char* cfg = R"({"command": "verify", "manifold": "s3_round",
                          "field": "hopf", "samples": 5, "seed": 7})";
    REQUIRE(np3_run(ctx.c, cfg) == NP3_OK);
    const std::string first = np3_output(ctx.c);
    REQUIRE(np3_run(ctx.c, cfg) == NP3_OK);
    const std::string second = np3_output(ctx.c);
    CHECK(first == second);
    CHECK(!first.empty());
    const json j = json::parse(first);
    CHECK(j.at("summary").at("all_pass").get<bool>());
}

TEST_CASE("analyze reports vanishing coefficients on flat space") {
    Ctx ctx;
    const int rc = np3_run(ctx.c,
                           R"({"command": "analyze", "manifold": "euclidean",
                               "field": "constant"})");
    REQUIRE(rc == NP3_OK);
    const json j = json::parse(np3_output(ctx.c));
    const auto& co = j.at("results").at("coefficients");
    for (const char* name : {"kappa", "rho", "sigma", "epsilon", "beta"}) {
        CHECK(std::abs(co.at(name).at("re").get<double>()) < 1e-10);
        CHECK(std::abs(co.at(name).at("im").get<double>()) < 1e-10);
    }
    CHECK(j.at("results").at("classification").at("killing").get<bool>());
}

TEST_CASE("flow runs produce the CSV trace schema") {
    Ctx ctx;
    const int rc = np3_run(ctx.c,
                           R"({"command": "flow", "manifold": "h3",
                               "field": "radial", "length": 0.1,
                               "step": 0.01})");
    REQUIRE(rc == NP3_OK);
    const std::string csv = np3_csv(ctx.c);
    CHECK(csv.rfind("t,u1,u2,u3,v1,v2,v3,div_direct,div_transported,"
                    "omega_direct,omega_transported,shear_mag2,S\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);  // header + 11
}

TEST_CASE("errors map to status codes with diagnostics") {
    Ctx ctx;
    CHECK(np3_run(ctx.c, "not json") == NP3_USAGE);
    CHECK(!std::string(np3_error(ctx.c)).empty());

    CHECK(np3_run(ctx.c, R"({"command": "verify", "manifold": "torus",
                             "field": "x"})") == NP3_USAGE);
    CHECK(std::string(np3_error(ctx.c)).find("UnknownManifold") !=
          std::string::npos);

    CHECK(np3_run(ctx.c, R"({"command": "flow", "manifold": "euclidean",
                             "field": "radial_out", "point": [0, 0, 0]})") ==
          NP3_NUMERIC);

    CHECK(np3_run(ctx.c, nullptr) == NP3_USAGE);
    CHECK(np3_run(nullptr, "{}") == NP3_USAGE);
}

TEST_CASE("hypothesis gates exit with the usage status") {
    Ctx ctx;
    const int rc = np3_run(ctx.c,
                           R"({"command": "principal",
                               "manifold": "euclidean",
                               "field": "constant", "samples": 5})");
    CHECK(rc == NP3_USAGE);
    CHECK(std::string(np3_error(ctx.c)).find("HypothesesViolated") !=
          std::string::npos);
}

TEST_CASE("version strings are exposed") {
    CHECK(std::string(np3_version()).find("np3") != std::string::npos);
}
