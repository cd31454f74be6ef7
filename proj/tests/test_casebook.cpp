#include <doctest.h>

#include <gstower/casebook.hpp>
#include <gstower/errors.hpp>

#include <filesystem>
#include <fstream>
#include <set>

using namespace gstower;

namespace
{

const std::filesystem::path kFixtures = GSTOWER_FIXTURE_DIR;

Json fixture_json(const char *id)
{
    std::ifstream in(kFixtures / (std::string(id) + ".json"));
    return Json::parse(in);
}

std::filesystem::path scratch_dir(const char *name)
{
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("every fixture replays cleanly")
{
    std::set<std::string> ids;
    for (const auto &entry : std::filesystem::directory_iterator(kFixtures)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        CaseFixture cf = load_fixture(entry.path());
        CAPTURE(cf.id);
        CHECK(cf.id == entry.path().stem().string());
        ids.insert(cf.id);
        CertReport report = replay(cf);
        for (const auto &check : report.checks) {
            CAPTURE(check.name);
            CAPTURE(check.detail);
            CHECK(check.pass);
        }
        CHECK_NOTHROW(require_pass(report));
    }
    CHECK(ids.size() == 8);
}

TEST_CASE("specific replays")
{
    CertReport boundary = replay(load_fixture(kFixtures / "boundary-real-8.json"));
    REQUIRE(boundary.verdict);
    CHECK(to_string(*boundary.verdict) == "BOUNDARY_INFINITE at t0=1/4");
    CHECK(boundary.d == 8);
    CHECK(boundary.r == 16);

    CertReport wild = replay(load_fixture(kFixtures / "wild-5460.json"));
    REQUIRE(wild.series);
    CHECK(to_string(*wild.series) == "1 - 5t + 4t^2 + 4t^3 + t^4");
    CHECK(wild.verdict->kind == VerdictKind::Cuttable);

    CertReport mixed = replay(load_fixture(kFixtures / "mixed-163.json"));
    CHECK(mixed.d == 18);
    CHECK(to_string(*mixed.series) == "1 - 18t + 80t^2 + 3t^4");
    REQUIRE(mixed.rd_bound);
    CHECK(mixed.rd_bound->upper() <= parse_rational("2742.95621"));

    CertReport odd = replay(load_fixture(kFixtures / "p-rational-r2-6.json"));
    CHECK(odd.d == 7);
    CHECK_FALSE(odd.rd_bound);
    CHECK_THROWS_AS(fixture_rd_bound(load_fixture(kFixtures / "p-rational-r2-6.json")), PreconditionError);
}

TEST_CASE("replay_all and filtering")
{
    ReplaySummary all = replay_all(kFixtures);
    CHECK(all.ok());
    CHECK(all.passed == 8);
    CHECK(std::is_sorted(all.reports.begin(), all.reports.end(),
                         [](const CertReport &a, const CertReport &b) { return a.id < b.id; }));
    CHECK(summary_text(all).find("8/8 fixtures passed") != std::string::npos);

    ReplaySummary wild = replay_all(kFixtures, std::string("wild-*"));
    REQUIRE(wild.reports.size() == 1);
    CHECK(wild.reports[0].id == "wild-5460");

    ReplaySummary none = replay_all(kFixtures, std::string("nothing-*"));
    CHECK(none.reports.empty());
    CHECK(none.ok());
}

TEST_CASE("replay output is deterministic")
{
    std::string first = summary_text(replay_all(kFixtures));
    std::string second = summary_text(replay_all(kFixtures));
    CHECK(first == second);
    CHECK(summary_json(replay_all(kFixtures)).dump() == summary_json(replay_all(kFixtures)).dump());
}

TEST_CASE("a wrong expectation fails its check without throwing")
{
    Json j = fixture_json("complex-record");
    j["expected"]["series"] = "1 - 7t + 12t^2";
    CertReport report = replay(fixture_from_json(j));
    CHECK_FALSE(report.pass());
    CHECK_THROWS_AS(require_pass(report), ConsistencyError);

    j = fixture_json("complex-record");
    j["expected"]["rd_bound"] = "78.5";
    CHECK_FALSE(replay(fixture_from_json(j)).pass());
}

TEST_CASE("malformed fixtures")
{
    Json j = fixture_json("complex-record");
    j["schema"] = 2;
    CHECK_THROWS_AS(fixture_from_json(j), FixtureError);

    j = fixture_json("complex-record");
    j.erase("ranks");
    CHECK_THROWS_AS(fixture_from_json(j), FixtureError);

    j = fixture_json("complex-record");
    j["cut_ledger"][0]["power"] = 3;
    CHECK_THROWS_AS(fixture_from_json(j), FixtureError);

    j = fixture_json("complex-record");
    j["field"]["r2"] = 5;
    CHECK_THROWS_AS(fixture_from_json(j), FixtureError);

    j = fixture_json("complex-record");
    j["expected"]["verdict"] = "MAYBE";
    CHECK_THROWS_AS(fixture_from_json(j), FixtureError);

    j = fixture_json("complex-record");
    j["places"]["tame"][0]["q"] = 4;
    CHECK_THROWS_AS(fixture_from_json(j), FixtureError);

    auto dir = scratch_dir("gstower-malformed");
    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK_THROWS_AS(load_fixture(dir / "broken.json"), FixtureError);
    ReplaySummary summary = replay_all(dir);
    REQUIRE(summary.reports.size() == 1);
    CHECK(summary.failed == 1);
    CHECK(summary.reports[0].checks[0].name == "error");
    std::filesystem::remove_all(dir);
}
