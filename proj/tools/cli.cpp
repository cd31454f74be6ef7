#include "cli.hpp"

#include <gstower/casebook.hpp>
#include <gstower/cft.hpp>
#include <gstower/errors.hpp>
#include <gstower/json_io.hpp>
#include <gstower/magnus.hpp>
#include <gstower/rdbound.hpp>
#include <gstower/series.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>

namespace gstower::cli
{

namespace
{

Precision default_precision()
{
    if (const char *env = std::getenv("GS_TOWER_PRECISION"); env && *env) {
        return Precision::parse(env);
    }
    return Precision();
}

struct Settings {
    std::string precision_text;
    int digits = 7;
    bool json = false;

    Precision precision() const
    {
        return precision_text.empty() ? default_precision() : Precision::parse(precision_text);
    }
};

int certify(const std::string &series_file, int max_depth, const Settings &settings, std::ostream &out)
{
    GSSeries s = load_series(series_file);
    Verdict v = find_witness(s, max_depth);
    if (settings.json) {
        Json j = {{"series", to_json(s)}, {"verdict", to_json(v)}};
        out << j.dump(2) << '\n';
    } else {
        out << to_string(v) << '\n';
    }
    return v.certifies_infinite() ? kExitOk : kExitFailure;
}

int cut_command(const std::string &series_file, int depth, std::int64_t count, const Settings &settings,
                std::ostream &out)
{
    GSSeries s = cut(load_series(series_file), depth, count);
    if (settings.json) {
        out << to_json(s).dump(2) << '\n';
    } else {
        out << to_string(s) << '\n';
    }
    return kExitOk;
}

int depth_command(const std::string &word, std::uint32_t p, int truncation, int generators, const Settings &settings,
                  std::ostream &out)
{
    FreeWord w = FreeWord::parse(word, generators);
    DepthResult r = depth(w, p, truncation);
    if (settings.json) {
        Json j = {{"word", to_string(w)}, {"p", p}, {"truncation", truncation}, {"depth", to_string(r)}};
        out << j.dump(2) << '\n';
    } else {
        out << to_string(r) << '\n';
    }
    return kExitOk;
}

int ranks_command(const std::string &profile_file, const Settings &settings, std::ostream &out)
{
    RankProfile rp = load_profile(profile_file);
    int d = h1_rank(rp);
    bool all_wild = !rp.S.empty() && rp.tame_count() == 0;
    int r = all_wild ? wild_relation_count(d, rp.r2) : r_upper_bound(rp);
    bool alpha = alpha_test(d, rp.r1, rp.r2, rp.S.empty(), rp.delta_K);
    GSSeries s = GSSeries::quadratic(d, r);
    if (settings.json) {
        Json j = {{"d", d},
                  {"r_bound", r},
                  {"relation_rule", all_wild ? "wild_cd2" : "koch_bound"},
                  {"alpha_test", alpha},
                  {"series", to_json(s)}};
        out << j.dump(2) << '\n';
    } else {
        out << "d = " << d << '\n';
        out << "r <= " << r << (all_wild ? " (d - r2 - 1)" : "") << '\n';
        out << "alpha test " << (alpha ? "passes" : "fails") << '\n';
        out << "series " << to_string(s) << '\n';
    }
    return kExitOk;
}

int rdbound_command(const std::string &fixture_file, const Settings &settings, std::ostream &out)
{
    CaseFixture cf = load_fixture(fixture_file);
    CertifiedReal bound = fixture_rd_bound(cf, settings.precision());
    if (settings.json) {
        out << to_json(bound).dump(2) << '\n';
    } else {
        out << describe_upper(bound, settings.digits) << '\n';
    }
    return kExitOk;
}

int schedule_command(const std::string &series_file, const std::string &t0_text, const std::string &budget_text,
                     std::size_t length, const Settings &settings, std::ostream &out)
{
    GSSeries s = load_series(series_file);
    Rational t0 = parse_rational(t0_text);
    FrobeniusSchedule schedule(s, t0, parse_rational(budget_text));
    std::vector<int> depths;
    for (std::size_t i = 0; i < length; ++i) {
        depths.push_back(schedule.next());
    }
    if (settings.json) {
        Json j = {{"t0", to_string(t0)},
                  {"delta", to_string(schedule.delta())},
                  {"spent", to_string(schedule.spent())},
                  {"depths", depths}};
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "delta = " << to_string(schedule.delta()) << '\n';
    out << "depths";
    for (int k : depths) {
        out << ' ' << k;
    }
    out << '\n' << "spent = " << to_string(schedule.spent()) << '\n';
    return kExitOk;
}

int records_command(bool csv, const std::string &tolerance_text, const Settings &settings, std::ostream &out)
{
    Rational tolerance = tolerance_text.empty() ? kRecordTolerance : parse_rational(tolerance_text);
    auto rows = records_table(settings.precision(), tolerance);
    if (settings.json) {
        Json list = Json::array();
        for (const auto &row : rows) {
            list.push_back({{"signature", row.signature},
                            {"era", row.era},
                            {"rd", row.rd},
                            {"partial", row.quoted_partial},
                            {"recomputed", to_json(row.partial)},
                            {"consistent", row.consistent}});
        }
        out << list.dump(2) << '\n';
    } else {
        out << (csv ? records_csv(rows) : records_text(rows));
    }
    bool consistent = std::all_of(rows.begin(), rows.end(), [](const RecordRow &r) { return r.consistent; });
    return consistent ? kExitOk : kExitFailure;
}

int replay_command(const std::string &filter, const std::string &dir, bool timing, const Settings &settings,
                   std::ostream &out)
{
    ReplayOptions options;
    options.precision = settings.precision();
    options.timing = timing;
    std::optional<std::string> glob;
    if (!filter.empty()) {
        glob = filter;
    }
    ReplaySummary summary = replay_all(dir, glob, options);
    if (settings.json) {
        out << summary_json(summary, timing).dump(2) << '\n';
    } else {
        out << summary_text(summary, timing);
    }
    return summary.ok() ? kExitOk : kExitFailure;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Golod-Shafarevich tower certification"};
    app.require_subcommand(1);
    Settings settings;
    app.add_option("--digits", settings.digits, "decimal digits for certified output")->check(CLI::Range(0, 60));
    app.add_flag("--json", settings.json, "machine readable output");

    std::string series_file, profile_file, fixture_file, word, t0_text, budget_text = "1/2", filter, tolerance_text;
    std::string fixture_dir = GSTOWER_FIXTURE_DIR;
    int max_depth = 12, depth = 2, truncation = kDefaultTruncation, generators = 0;
    std::int64_t count = 1;
    std::uint32_t p = 2;
    std::size_t length = 10;
    bool csv = false, timing = false;

    auto *certify_cmd = app.add_subcommand("certify", "search for a negativity witness");
    certify_cmd->add_option("--series", series_file, "series JSON")->required();
    certify_cmd->add_option("--max-depth", max_depth, "dyadic refinement depth")->check(CLI::Range(0, 64));

    auto *cut_cmd = app.add_subcommand("cut", "add relations of a given depth");
    cut_cmd->add_option("--series", series_file, "series JSON")->required();
    cut_cmd->add_option("--depth", depth, "relation depth")->required();
    cut_cmd->add_option("--count", count, "number of relations")->required();

    auto *depth_cmd = app.add_subcommand("depth", "Zassenhaus depth of a free group word");
    depth_cmd->add_option("--word", word, "word such as \"x0 x1 x0^-1 x1^-1\"")->required();
    depth_cmd->add_option("--p", p, "prime")->required();
    depth_cmd->add_option("--trunc", truncation, "truncation degree");
    depth_cmd->add_option("--d", generators, "number of generators");

    auto *ranks_cmd = app.add_subcommand("ranks", "generator and relation ranks of a profile");
    ranks_cmd->add_option("--profile", profile_file, "rank profile JSON")->required();

    auto *rdbound_cmd = app.add_subcommand("rdbound", "certified root discriminant bound of a fixture");
    rdbound_cmd->add_option("--fixture", fixture_file, "fixture JSON")->required();
    rdbound_cmd->add_option("--precision", settings.precision_text, "relative precision");

    auto *schedule_cmd = app.add_subcommand("schedule", "greedy cut depths that keep P(t0) negative");
    schedule_cmd->add_option("--series", series_file, "series JSON")->required();
    schedule_cmd->add_option("--t0", t0_text, "evaluation point p/q")->required();
    schedule_cmd->add_option("--budget", budget_text, "fraction of the margin to spend");
    schedule_cmd->add_option("--length", length, "number of depths");

    auto *records_cmd = app.add_subcommand("records", "root discriminant records and their distances");
    records_cmd->add_flag("--csv", csv, "CSV output");
    records_cmd->add_option("--tolerance", tolerance_text, "allowed deviation of each distance");
    records_cmd->add_option("--precision", settings.precision_text, "relative precision");

    auto *replay_cmd = app.add_subcommand("replay", "replay the fixture casebook");
    replay_cmd->add_option("--filter", filter, "id glob");
    replay_cmd->add_option("--fixtures", fixture_dir, "fixture directory");
    replay_cmd->add_flag("--timing", timing, "include timings");
    replay_cmd->add_option("--precision", settings.precision_text, "relative precision");

    for (auto *sub : {certify_cmd, cut_cmd, depth_cmd, ranks_cmd, rdbound_cmd, schedule_cmd, records_cmd, replay_cmd}) {
        sub->add_flag("--json", settings.json, "machine readable output");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*certify_cmd) {
            return certify(series_file, max_depth, settings, out);
        }
        if (*cut_cmd) {
            return cut_command(series_file, depth, count, settings, out);
        }
        if (*depth_cmd) {
            return depth_command(word, p, truncation, generators, settings, out);
        }
        if (*ranks_cmd) {
            return ranks_command(profile_file, settings, out);
        }
        if (*rdbound_cmd) {
            return rdbound_command(fixture_file, settings, out);
        }
        if (*schedule_cmd) {
            return schedule_command(series_file, t0_text, budget_text, length, settings, out);
        }
        if (*records_cmd) {
            return records_command(csv, tolerance_text, settings, out);
        }
        if (*replay_cmd) {
            return replay_command(filter, fixture_dir, timing, settings, out);
        }
    } catch (const ConsistencyError &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace gstower::cli
