#include <doctest.h>

#include "ballgreen/cli.hpp"
#include "ballgreen/geometry.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

using ballgreen::pi;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = ballgreen::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("eval: centered Poisson source") {
    const auto r = run({"eval", "--dim", "3", "--z", "0,0,0", "--x", "1,0,0"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["problem"] == "poisson");
    CHECK(j["dim"] == 3);
    CHECK(j["radius"] == 1.0);
    CHECK(j["value"].get<double>() == doctest::Approx(-3 / (8 * pi<double>())).epsilon(1e-15));
    CHECK(j["method"] == "closed_form");
    CHECK(j["flags"] == json::array({"centered_source"}));
    CHECK_FALSE(j.contains("moment"));
}

TEST_CASE("eval: dipole") {
    const auto r = run({"eval", "--dim", "3", "--z", "0.5,0,0", "--moment", "1,0,0", "--x", "0,1,0"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["problem"] == "eeg");
    CHECK(j["moment"] == json::array({1.0, 0.0, 0.0}));
    CHECK(j["value"].get<double>() == doctest::Approx(0.085411505210061247017).epsilon(1e-14));
}

TEST_CASE("eval: numbers round-trip") {
    const auto r = run({"eval", "--dim", "2", "--z", "0.1,0.3", "--x", "-0.7,0.2", "--radius", "1.5"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", j["value"].get<double>());
    CHECK(r.out.find(std::string("\"value\": ") + buf) != std::string::npos);
    CHECK(j["z"][1].get<double>() == 0.3);
}

TEST_CASE("eval: errors") {
    CHECK(run({"eval", "--dim", "3", "--z", "0.5,0,0", "--x", "0.5,0,0"}).code == 3);
    CHECK(run({"eval", "--dim", "3", "--z", "0,0,0", "--moment", "1,0,0", "--x", "0.5,0,0"}).code == 3);
    CHECK(run({"eval", "--dim", "3", "--z", "0.5,0", "--x", "0.5,0,0"}).code == 2);
    CHECK(run({"eval", "--dim", "3", "--z", "0.5,0,abc", "--x", "0.5,0,0"}).code == 2);
    CHECK(run({"eval", "--dim", "2", "--z", "1.5,0", "--x", "0.5,0"}).code == 2);
    CHECK(run({"eval", "--dim", "2", "--z", "0.1,0", "--x", "1.5,0"}).code == 2);
    CHECK(run({"eval", "--dim", "2", "--z", "0.1,0", "--x", "0.5,0", "--radius", "-1"}).code == 2);
    CHECK(run({"eval", "--dim", "2", "--z", "0.1,0", "--moment", "0,0", "--x", "0.5,0"}).code == 2);
    CHECK(run({"eval", "--dim", "2", "--z", "0.1,0"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);
    const auto r = run({"eval", "--dim", "3", "--z", "0.5,0,0", "--x", "0.5,0,0"});
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("grid: one-dimensional csv") {
    const auto r = run({"grid", "--dim", "1", "--z", "0.5", "--resolution", "3", "--bbox", "-1,1"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "x1,value,flags");
    const auto mid = run({"eval", "--dim", "1", "--z", "0.5", "--x", "0"});
    const double g0 = json::parse(mid.out)["value"].get<double>();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", g0);
    CHECK(l[2] == std::string("0,") + buf + ",");
    CHECK(l[1].rfind("-1,", 0) == 0);
    CHECK(l[3].rfind("1,", 0) == 0);
}

TEST_CASE("grid: nodes outside the ball and at the source") {
    const auto r = run({"grid", "--dim", "2", "--z", "0,0", "--resolution", "3", "--bbox", "-1,1"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 10);
    CHECK(l[0] == "x1,x2,value,flags");
    CHECK(l[1] == "-1,-1,,");
    CHECK(l[5] == "0,0,,"); // source node
    CHECK(l[2].rfind("-1,0,", 0) == 0);
    CHECK(l[2] != "-1,0,,");

    const auto outside = run({"grid", "--dim", "2", "--z", "0,0", "--resolution", "2,3", "--bbox", "2,3,2,3"});
    REQUIRE(outside.code == 0);
    const auto lo = lines(outside.out);
    REQUIRE(lo.size() == 7);
    for (std::size_t i = 1; i < lo.size(); ++i) CHECK(lo[i].substr(lo[i].size() - 2) == ",,");
}

TEST_CASE("grid: json and determinism") {
    const std::vector<std::string> args{"grid",         "--dim",    "3",    "--z",      "0.2,0,0", "--moment",
                                        "0,1,0",        "--resolution", "4", "--format", "json"};
    const auto a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(j["rows"].size() == 64);
    CHECK(j["rows"][0]["value"].is_null());
    CHECK(j["problem"] == "eeg");
}

TEST_CASE("grid: invalid specifications") {
    CHECK(run({"grid", "--dim", "4", "--z", "0,0,0,0", "--resolution", "3"}).code == 2);
    CHECK(run({"grid", "--dim", "2", "--z", "0,0", "--resolution", "1"}).code == 2);
    CHECK(run({"grid", "--dim", "2", "--z", "0,0", "--resolution", "2.5"}).code == 2);
    CHECK(run({"grid", "--dim", "2", "--z", "0,0", "--resolution", "3", "--bbox", "1,-1"}).code == 2);
    CHECK(run({"grid", "--dim", "2", "--z", "0,0", "--resolution", "3", "--bbox", "1,2,3"}).code == 2);
    CHECK(run({"grid", "--dim", "2", "--z", "0,0", "--resolution", "3", "--format", "xml"}).code == 2);
}

TEST_CASE("verify: flags") {
    const auto empty = run({"verify", "--dims", ""});
    CHECK(empty.code == 0);
    const auto j = json::parse(empty.out);
    CHECK(j["pass"] == true);
    CHECK(j["checks"].empty());
    CHECK(j["seed"] == 42);
    CHECK(run({"verify", "--abs-tol", "abc"}).code == 2);
    CHECK(run({"verify", "--rel-tol", "-1"}).code == 2);
    CHECK(run({"verify", "--dims", "1,x"}).code == 2);
    CHECK(run({"verify", "--dims", "11"}).code == 2);
    CHECK(run({"verify", "--max-subdivisions", "0"}).code == 2);
}
