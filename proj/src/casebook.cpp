#include <gstower/casebook.hpp>

#include <gstower/errors.hpp>
#include <gstower/magnus.hpp>

#include <fnmatch.h>

#include <algorithm>
#include <chrono>
#include <future>
#include <iomanip>
#include <sstream>

namespace gstower
{

std::string to_string(Route route)
{
    switch (route) {
    case Route::AlphaTest:
        return "ALPHA_TEST";
    case Route::PAtT0Zero:
        return "P_AT_T0_ZERO";
    case Route::Witness:
        return "WITNESS";
    }
    return "?";
}

std::string to_string(RelationRule rule)
{
    return rule == RelationRule::KochBound ? "koch_bound" : "wild_cd2";
}

std::string to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::None:
        return "none";
    case BoundKind::Base:
        return "base";
    case BoundKind::Tame:
        return "tame";
    case BoundKind::Wild2:
        return "wild2";
    case BoundKind::Mixed:
        return "mixed";
    }
    return "?";
}

namespace
{

const Json &need(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw FixtureError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

int need_int(const Json &j, const char *key)
{
    const Json &v = need(j, key);
    if (!v.is_number_integer()) {
        throw FixtureError(std::string("field \"") + key + "\" must be an integer");
    }
    return v.get<int>();
}

std::string need_string(const Json &j, const char *key)
{
    const Json &v = need(j, key);
    if (!v.is_string()) {
        throw FixtureError(std::string("field \"") + key + "\" must be a string");
    }
    return v.get<std::string>();
}

std::string optional_string(const Json &j, const char *key)
{
    return j.contains(key) ? need_string(j, key) : std::string();
}

Integer need_integer(const Json &j, const char *key)
{
    const Json &v = need(j, key);
    if (v.is_number_integer()) {
        return Integer(std::to_string(v.get<long long>()));
    }
    if (v.is_string()) {
        Rational q = parse_rational(v.get<std::string>());
        if (is_integer(q)) {
            return q.get_num();
        }
    }
    throw FixtureError(std::string("field \"") + key + "\" must be an integer");
}

VerdictKind verdict_from(const std::string &text)
{
    if (text == "CUTTABLE") {
        return VerdictKind::Cuttable;
    }
    if (text == "BOUNDARY_INFINITE") {
        return VerdictKind::BoundaryInfinite;
    }
    if (text == "INCONCLUSIVE") {
        return VerdictKind::Inconclusive;
    }
    throw FixtureError("unknown verdict " + text);
}

Route route_from(const std::string &text)
{
    if (text == "ALPHA_TEST") {
        return Route::AlphaTest;
    }
    if (text == "P_AT_T0_ZERO") {
        return Route::PAtT0Zero;
    }
    if (text == "WITNESS") {
        return Route::Witness;
    }
    throw FixtureError("unknown route " + text);
}

BoundKind bound_kind_from(const std::string &text)
{
    for (BoundKind kind : {BoundKind::None, BoundKind::Base, BoundKind::Tame, BoundKind::Wild2, BoundKind::Mixed}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    throw FixtureError("unknown bound kind " + text);
}

bool is_power_of(long long value, int p)
{
    if (value < 1) {
        return false;
    }
    while (value % p == 0) {
        value /= p;
    }
    return value == 1;
}

CutEntry cut_from_json(const Json &j, int p)
{
    CutEntry entry;
    entry.description = need_string(j, "description");
    if (j.contains("witness_word")) {
        entry.witness_word = need_string(j, "witness_word");
    }
    if (j.contains("tail")) {
        const Json &t = j.at("tail");
        entry.tail = Tail{rational_from_json(need(t, "coeff"), "coeff"), need_int(t, "start"),
                          rational_from_json(need(t, "ratio"), "ratio")};
        return entry;
    }
    entry.count = need(j, "count").get<std::int64_t>();
    if (entry.count < 0) {
        throw FixtureError("cut count must be nonnegative");
    }

    auto scaled = [&](long base) {
        int power = j.contains("power") ? need_int(j, "power") : 1;
        if (!is_power_of(power, p)) {
            throw FixtureError("cut power must be a power of p");
        }
        return static_cast<int>(base * power);
    };
    if (j.contains("depth")) {
        entry.depth = need_int(j, "depth");
    } else if (j.contains("base_depth")) {
        entry.depth = scaled(need_int(j, "base_depth"));
    } else if (j.contains("rank_equality_level")) {
        entry.depth = scaled(rank_equality_depth(need_int(j, "rank_equality_level")));
    } else if (j.contains("frattini_level")) {
        entry.depth = scaled(frattini_depth_bound(need_int(j, "frattini_level")));
    } else if (j.contains("commutator_of")) {
        const Json &pair = j.at("commutator_of");
        if (!pair.is_array() || pair.size() != 2) {
            throw FixtureError("commutator_of needs two depths");
        }
        entry.depth = pair.at(0).get<int>() + pair.at(1).get<int>();
    } else {
        throw FixtureError("cut entry \"" + entry.description + "\" has no depth rule");
    }
    if (entry.depth < 2) {
        throw FixtureError("cut entry \"" + entry.description + "\" has depth below 2");
    }
    return entry;
}

std::vector<CutEntry> ledger_from_json(const Json &j, int p)
{
    std::vector<CutEntry> ledger;
    if (!j.is_array()) {
        throw FixtureError("cut_ledger must be an array");
    }
    for (const auto &entry : j) {
        ledger.push_back(cut_from_json(entry, p));
    }
    return ledger;
}

PlaceData place_from_json(const Json &j, int p)
{
    PlaceData place;
    place.q = need_integer(j, "q");
    place.e = need_int(j, "e");
    place.f = need_int(j, "f");
    place.p = j.contains("p") ? need_int(j, "p") : p;
    const Json &k = need(j, "k");
    if (!k.is_null()) {
        place.k = k.get<int>();
    }
    place.count = j.contains("count") ? need_int(j, "count") : 1;
    return place;
}

std::vector<PowerFactor> factors_from_json(const Json &j)
{
    std::vector<PowerFactor> factors;
    for (const auto &f : j) {
        factors.push_back({need_integer(f, "base"), rational_from_json(need(f, "exp"), "exp")});
    }
    return factors;
}

FieldData field_from_json(const Json &j)
{
    FieldData fd;
    fd.name = need_string(j, "name");
    fd.degree = need_int(j, "degree");
    fd.r1 = need_int(j, "r1");
    fd.r2 = need_int(j, "r2");
    if (j.contains("rd_base")) {
        const Json &rd = j.at("rd_base");
        if (rd.contains("decimal")) {
            fd.rd_base.decimal = rational_from_json(rd.at("decimal"), "decimal");
        }
        if (rd.contains("radical")) {
            fd.rd_base.radical = factors_from_json(rd.at("radical"));
        }
    }
    if (j.contains("disc_factorization")) {
        for (const auto &f : j.at("disc_factorization")) {
            fd.disc_factorization.emplace_back(need_integer(f, "prime"), need_int(f, "exponent"));
        }
    }
    return fd;
}

CaseFixture fixture_from_json_unchecked(const Json &j)
{
    if (need_int(j, "schema") != 1) {
        throw FixtureError("unsupported fixture schema");
    }
    CaseFixture cf;
    cf.id = need_string(j, "id");
    cf.title = optional_string(j, "title");
    cf.provenance = optional_string(j, "provenance");
    cf.field = field_from_json(need(j, "field"));
    cf.ranks = profile_from_json(need(j, "ranks"));
    int p = cf.ranks.p;

    std::string rule = need_string(j, "relation_rule");
    if (rule == "koch_bound") {
        cf.relation_rule = RelationRule::KochBound;
    } else if (rule == "wild_cd2") {
        cf.relation_rule = RelationRule::WildCd2;
    } else {
        throw FixtureError("unknown relation rule " + rule);
    }

    if (j.contains("places")) {
        const Json &places = j.at("places");
        if (places.contains("tame")) {
            for (const auto &pl : places.at("tame")) {
                cf.tame_places.push_back(place_from_json(pl, p));
            }
        }
        if (places.contains("wild")) {
            for (const auto &pl : places.at("wild")) {
                cf.wild_places.push_back(place_from_json(pl, p));
            }
        }
    }
    if (j.contains("extra_factors")) {
        cf.extra_factors = factors_from_json(j.at("extra_factors"));
    }
    cf.cut_ledger = ledger_from_json(need(j, "cut_ledger"), p);
    if (j.contains("variants")) {
        for (const auto &v : j.at("variants")) {
            CaseVariant variant;
            variant.id = need_string(v, "id");
            variant.description = optional_string(v, "description");
            variant.cut_ledger = ledger_from_json(need(v, "cut_ledger"), p);
            variant.expected_verdict = verdict_from(need_string(v, "expected_verdict"));
            cf.variants.push_back(std::move(variant));
        }
    }

    const Json &expected = need(j, "expected");
    cf.expected.verdict = verdict_from(need_string(expected, "verdict"));
    cf.expected.route = route_from(need_string(expected, "route"));
    if (expected.contains("series")) {
        cf.expected.series = need_string(expected, "series");
    }
    cf.expected.bound_kind = bound_kind_from(need_string(expected, "bound_kind"));
    if (cf.expected.bound_kind != BoundKind::None) {
        cf.expected.rd_bound = need_string(expected, "rd_bound");
        parse_rational(*cf.expected.rd_bound);
    }
    if (expected.contains("tolerance")) {
        cf.expected.tolerance = rational_from_json(expected.at("tolerance"), "tolerance");
    }

    bool has_rd = cf.field.rd_base.decimal || !cf.field.rd_base.radical.empty();
    if (has_rd || cf.expected.bound_kind != BoundKind::None) {
        validate(cf.field);
    } else if (cf.field.r1 + 2 * cf.field.r2 != cf.field.degree) {
        throw FixtureError("field " + cf.field.name + ": signature does not add up to the degree");
    }
    if (cf.field.r1 != cf.ranks.r1 || cf.field.r2 != cf.ranks.r2) {
        throw FixtureError("field signature and rank profile disagree");
    }
    for (const auto &place : cf.tame_places) {
        validate(place, cf.field.degree);
    }
    for (const auto &place : cf.wild_places) {
        validate(place, cf.field.degree);
    }
    return cf;
}

GSSeries apply_ledger(GSSeries s, const std::vector<CutEntry> &ledger)
{
    for (const auto &entry : ledger) {
        if (entry.tail) {
            s = cut_tail(s, entry.tail->start, entry.tail->ratio, entry.tail->coeff);
        } else {
            s = cut(s, entry.depth, entry.count);
        }
    }
    return s;
}

std::string sign_word(const Rational &v)
{
    return v < 0 ? "negative" : (v == 0 ? "zero" : "positive");
}

CaseCheck rd_check(const CertifiedReal &bound, const std::string &quoted_text, const Rational &tolerance)
{
    Rational quoted = parse_rational(quoted_text);
    Rational gap = bound.upper() - quoted;
    gap.canonicalize();
    CaseCheck check{"rd bound", abs(gap) <= tolerance, describe_upper(bound) + " vs quoted " + quoted_text};
    if (gap < 0) {
        check.detail += ", strictly below by " + to_significant_up(-gap, 2);
    } else if (gap > 0) {
        check.detail += ", above by " + to_significant_up(gap, 2);
    } else {
        check.detail += ", equal";
    }
    check.detail += " (tolerance " + to_significant_up(tolerance, 2) + ")";
    return check;
}

} // namespace

CaseFixture fixture_from_json(const Json &j)
{
    try {
        return fixture_from_json_unchecked(j);
    } catch (const nlohmann::json::exception &e) {
        throw FixtureError(e.what());
    }
}

CaseFixture load_fixture(const std::filesystem::path &path)
{
    try {
        return fixture_from_json(read_json_file(path));
    } catch (const FixtureError &e) {
        throw FixtureError(path.filename().string() + ": " + e.what());
    }
}

bool CertReport::pass() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CaseCheck &c) { return c.pass; });
}

CertifiedReal fixture_rd_bound(const CaseFixture &cf, const Precision &precision)
{
    switch (cf.expected.bound_kind) {
    case BoundKind::Base:
        return rd_base_value(cf.field, precision);
    case BoundKind::Tame:
        return tame_bound(cf.field, cf.tame_places, precision);
    case BoundKind::Wild2:
        return wild2_bound(cf.field, cf.wild_places, precision);
    case BoundKind::Mixed:
        return mixed_bound(cf.field, cf.tame_places, cf.wild_places, cf.extra_factors, precision);
    case BoundKind::None:
        break;
    }
    throw PreconditionError("fixture " + cf.id + " states no rd bound");
}

CertReport replay(const CaseFixture &cf, const ReplayOptions &options)
{
    auto start = std::chrono::steady_clock::now();
    CertReport report;
    report.id = cf.id;
    report.title = cf.title;

    const RankProfile &rp = cf.ranks;
    report.d = h1_rank(rp);
    if (rp.measured_d) {
        report.checks.push_back({"rank formula", true,
                                 "d = " + std::to_string(report.d) + " matches the measured rank"});
    }
    report.r = cf.relation_rule == RelationRule::KochBound ? r_upper_bound(rp) : wild_relation_count(report.d, rp.r2);
    GSSeries base = GSSeries::quadratic(report.d, report.r);

    switch (cf.expected.route) {
    case Route::AlphaTest: {
        int theta = rp.S.empty() ? rp.delta_K : 0;
        bool ok = alpha_test(report.d, rp.r1, rp.r2, rp.S.empty(), rp.delta_K);
        report.checks.push_back({"route ALPHA_TEST", ok,
                                 "(d-2)^2 = " + std::to_string((report.d - 2) * (report.d - 2)) +
                                     (ok ? " > " : " <= ") + "4(r1+r2+theta) = " +
                                     std::to_string(4 * (rp.r1 + rp.r2 + theta))});
        break;
    }
    case Route::PAtT0Zero: {
        if (report.r <= 0) {
            report.checks.push_back({"route P_AT_T0_ZERO", false, "no relations, t0 = d/2r undefined"});
            break;
        }
        Rational t0(report.d, 2 * report.r);
        t0.canonicalize();
        Rational v = eval(base, t0);
        report.checks.push_back({"route P_AT_T0_ZERO", v == 0, "P(" + to_string(t0) + ") = " + to_string(v)});
        break;
    }
    case Route::Witness:
        break;
    }

    GSSeries s = apply_ledger(base, cf.cut_ledger);
    for (const auto &entry : cf.cut_ledger) {
        if (!entry.witness_word) {
            continue;
        }
        FreeWord w = FreeWord::parse(*entry.witness_word);
        DepthResult dr = depth(w, static_cast<std::uint32_t>(rp.p), entry.depth);
        bool ok = dr.kind == DepthKind::Infinity || dr.kind == DepthKind::AtLeast || dr.value >= entry.depth;
        report.checks.push_back({"depth " + entry.description, ok,
                                 *entry.witness_word + " has depth " + to_string(dr) + ", need " +
                                     std::to_string(entry.depth)});
    }
    report.series = s;
    if (cf.expected.series) {
        std::string printed = to_string(s);
        report.checks.push_back({"series", printed == *cf.expected.series, printed});
    }

    Verdict verdict = find_witness(s, options.max_depth);
    report.verdict = verdict;
    report.checks.push_back({"verdict", verdict.kind == cf.expected.verdict,
                             to_string(verdict) + " (expected " + to_string(cf.expected.verdict) + ")"});
    if (verdict.t0 && verdict.value) {
        Rational again = eval(s, *verdict.t0);
        bool sign_ok = verdict.kind == VerdictKind::Cuttable ? again < 0 : again == 0;
        report.checks.push_back({"witness recheck", again == *verdict.value && sign_ok,
                                 "P(" + to_string(*verdict.t0) + ") = " + to_string(again) + " is " +
                                     sign_word(again)});
    }

    for (const auto &variant : cf.variants) {
        GSSeries vs = apply_ledger(s, variant.cut_ledger);
        Verdict vv = find_witness(vs, options.max_depth);
        bool ok = vv.kind == variant.expected_verdict;
        if (ok && vv.t0 && vv.kind == VerdictKind::Cuttable) {
            ok = eval(vs, *vv.t0) < 0;
        }
        report.checks.push_back({"variant " + variant.id, ok, to_string(vs) + ": " + to_string(vv)});
    }

    if (cf.expected.bound_kind != BoundKind::None) {
        CertifiedReal bound = fixture_rd_bound(cf, options.precision);
        report.rd_bound = bound;
        report.checks.push_back(rd_check(bound, *cf.expected.rd_bound, cf.expected.tolerance));
    }

    if (options.timing) {
        report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return report;
}

void require_pass(const CertReport &report)
{
    std::string failed;
    for (const auto &check : report.checks) {
        if (!check.pass) {
            failed += (failed.empty() ? "" : "; ") + check.name + ": " + check.detail;
        }
    }
    if (!failed.empty() || report.checks.empty()) {
        throw ConsistencyError(report.id + ": " + (failed.empty() ? "no checks ran" : failed));
    }
}

ReplaySummary replay_all(const std::filesystem::path &dir, const std::optional<std::string> &filter,
                         const ReplayOptions &options)
{
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir)) {
        throw FixtureError("fixture directory not found: " + dir.string());
    }
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    auto failed_report = [](std::string id, std::string what) {
        CertReport r;
        r.id = std::move(id);
        r.checks.push_back({"error", false, std::move(what)});
        return r;
    };

    std::vector<std::future<CertReport>> jobs;
    for (const auto &file : files) {
        std::optional<CaseFixture> cf;
        std::string id = file.stem().string();
        try {
            cf = load_fixture(file);
            id = cf->id;
        } catch (const Error &e) {
            if (!filter || fnmatch(filter->c_str(), id.c_str(), 0) == 0) {
                std::promise<CertReport> ready;
                ready.set_value(failed_report(id, e.what()));
                jobs.push_back(ready.get_future());
            }
            continue;
        }
        if (filter && fnmatch(filter->c_str(), id.c_str(), 0) != 0) {
            continue;
        }
        jobs.push_back(std::async(std::launch::async, [cf = std::move(*cf), &options, failed_report]() {
            try {
                return replay(cf, options);
            } catch (const Error &e) {
                return failed_report(cf.id, e.what());
            }
        }));
    }

    ReplaySummary summary;
    for (auto &job : jobs) {
        summary.reports.push_back(job.get());
    }
    std::sort(summary.reports.begin(), summary.reports.end(),
              [](const CertReport &a, const CertReport &b) { return a.id < b.id; });
    for (const auto &r : summary.reports) {
        (r.pass() ? summary.passed : summary.failed)++;
    }
    return summary;
}

std::string report_text(const CertReport &report, bool with_timing)
{
    std::ostringstream out;
    out << (report.pass() ? "PASS " : "FAIL ") << report.id;
    if (!report.title.empty()) {
        out << "  " << report.title;
    }
    if (with_timing && report.millis) {
        out << "  (" << std::fixed << std::setprecision(2) << *report.millis << " ms)";
    }
    out << '\n';
    if (report.series) {
        out << "  d=" << report.d << " r=" << report.r << "  series " << to_string(*report.series) << '\n';
    }
    if (report.verdict) {
        out << "  verdict " << to_string(*report.verdict) << '\n';
    }
    if (report.rd_bound) {
        out << "  rd " << describe_upper(*report.rd_bound) << '\n';
    }
    for (const auto &check : report.checks) {
        out << "    [" << (check.pass ? "ok" : "FAIL") << "] " << check.name << ": " << check.detail << '\n';
    }
    return out.str();
}

Json report_json(const CertReport &report, bool with_timing)
{
    Json checks = Json::array();
    for (const auto &check : report.checks) {
        checks.push_back({{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
    }
    Json j = {{"id", report.id}, {"title", report.title}, {"pass", report.pass()}};
    j["d"] = report.d;
    j["r"] = report.r;
    j["series"] = report.series ? to_json(*report.series) : Json(nullptr);
    j["verdict"] = report.verdict ? to_json(*report.verdict) : Json(nullptr);
    j["rd_bound"] = report.rd_bound ? to_json(*report.rd_bound) : Json(nullptr);
    j["checks"] = checks;
    if (with_timing && report.millis) {
        j["millis"] = *report.millis;
    }
    return j;
}

std::string summary_text(const ReplaySummary &summary, bool with_timing)
{
    std::string out;
    for (const auto &report : summary.reports) {
        out += report_text(report, with_timing);
    }
    out += std::to_string(summary.passed) + "/" + std::to_string(summary.reports.size()) + " fixtures passed\n";
    return out;
}

Json summary_json(const ReplaySummary &summary, bool with_timing)
{
    Json reports = Json::array();
    for (const auto &report : summary.reports) {
        reports.push_back(report_json(report, with_timing));
    }
    return {{"reports", reports},
            {"summary", {{"total", summary.reports.size()}, {"passed", summary.passed}, {"failed", summary.failed}}}};
}

} // namespace gstower
