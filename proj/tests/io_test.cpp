#include "cascade/io.hpp"

#include "cascade/sl_cascade.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace cascade;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("doubles survive the round trip through text") {
    testutil::Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        const double v = (rng.uniform() - 0.5) * std::exp(30.0 * rng.uniform() - 15.0);
        CHECK(std::strtod(fmt_double(v).c_str(), nullptr) == v);
    }
    CHECK(fmt_double(0.5) == "0.5");
    CHECK(fmt_double(-3.0) == "-3");
}

TEST_CASE("system JSON round trip is lossless") {
    const FinancialSystem sys = testutil::random_mixed_post_trigger(400, 8);
    const FinancialSystem back = system_from_json(system_to_json(sys));
    REQUIRE(back.size() == sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i) {
        CHECK(back.banks[i].Z == sys.banks[i].Z);
        CHECK(back.banks[i].A == sys.banks[i].A);
        CHECK(back.banks[i].C == sys.banks[i].C);
        CHECK(back.banks[i].X == sys.banks[i].X);
        CHECK(back.banks[i].D == sys.banks[i].D);
        CHECK(back.banks[i].E == sys.banks[i].E);
    }
    CHECK(back.exposures == sys.exposures);
}

TEST_CASE("sparse exposure documents load like dense ones") {
    const FinancialSystem sys = testutil::two_bank_fixture();
    nlohmann::json j = system_to_json(sys);
    j["exposures"] = {{"n", 2}, {"triplets", {{0, 1, 10.0}}}};
    const FinancialSystem back = system_from_json(j);
    CHECK(back.exposures == sys.exposures);
}

TEST_CASE("malformed system documents are rejected") {
    nlohmann::json good = system_to_json(testutil::two_bank_fixture());
    SUBCASE("unknown top-level key") {
        good["extra"] = 1;
        CHECK_THROWS_AS(system_from_json(good), ConfigError);
    }
    SUBCASE("unknown bank key") {
        good["banks"][0]["notes"] = "x";
        CHECK_THROWS_AS(system_from_json(good), ConfigError);
    }
    SUBCASE("wrong version") {
        good["version"] = 2;
        CHECK_THROWS_AS(system_from_json(good), ConfigError);
    }
    SUBCASE("missing field") {
        good["banks"][0].erase("D");
        CHECK_THROWS_AS(system_from_json(good), ConfigError);
    }
    SUBCASE("out-of-order ids") {
        good["banks"][0]["id"] = 1;
        CHECK_THROWS_AS(system_from_json(good), ConfigError);
    }
    SUBCASE("ragged dense rows") {
        good["exposures"][0].erase(1);
        CHECK_THROWS_AS(system_from_json(good), ConfigError);
    }
    SUBCASE("triplet out of range") {
        good["exposures"] = {{"n", 2}, {"triplets", {{0, 5, 1.0}}}};
        CHECK_THROWS_AS(system_from_json(good), ConfigError);
    }
}

TEST_CASE("tabular exports carry one row per observation") {
    ModelConfig cfg;
    cfg.model = ModelKind::sl;
    const CascadeTrajectory tr =
        run_sl_cascade(testutil::two_bank_fixture(), cfg);
    REQUIRE(tr.converged);

    const std::string traj = trajectory_csv(tr);
    CHECK(traj.rfind("day,bank,p,p_tilde,q,q_tilde,E,C,delta,sigma\n", 0) == 0);
    CHECK(count_lines(traj) == 1 + static_cast<int>(tr.states.size() * 2));

    const std::string market = market_csv(tr);
    CHECK(market.rfind("day,pi,", 0) == 0);
    CHECK(count_lines(market) == 1 + static_cast<int>(tr.states.size()));

    const std::string jsonl = records_jsonl(tr);
    CHECK(count_lines(jsonl) == static_cast<int>(tr.records.size()));
    std::istringstream lines(jsonl);
    std::string line;
    while (std::getline(lines, line)) {
        const nlohmann::json j = nlohmann::json::parse(line);
        CHECK(j.at("p_dot").size() == 2);
        CHECK(j.at("identity_residual_post").get<double>() < 1e-9);
    }
}

TEST_CASE("file writes are atomic") {
    const std::string path = "io_test_artifact.json";
    atomic_write_file(path, "first\n");
    CHECK(slurp(path) == "first\n");
    atomic_write_file(path, "second\n");
    CHECK(slurp(path) == "second\n");
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    std::remove(path.c_str());

    CHECK_THROWS_AS(atomic_write_file("no_such_dir/x.json", "y"), Error);
}
