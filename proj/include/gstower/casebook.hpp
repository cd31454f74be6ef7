#ifndef GSTOWER_CASEBOOK_HPP
#define GSTOWER_CASEBOOK_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <gstower/certified.hpp>
#include <gstower/cft.hpp>
#include <gstower/json_io.hpp>
#include <gstower/rdbound.hpp>
#include <gstower/series.hpp>

namespace gstower
{

// One line of a cut ledger. Either `depth` relations of a fixed depth, or a
// geometric tail.
struct CutEntry {
    std::string description;
    int depth = 0;
    std::int64_t count = 0;
    std::optional<Tail> tail;

    // Free-group witness for the depth claim: a word whose Magnus depth must
    // reach `depth` (e.g. x0^4 for an inertia generator cut at its 4th power).
    std::optional<std::string> witness_word;
};

struct CaseVariant {
    std::string id;
    std::string description;
    std::vector<CutEntry> cut_ledger;
    VerdictKind expected_verdict = VerdictKind::Cuttable;
};

enum class Route { AlphaTest, PAtT0Zero, Witness };
enum class RelationRule { KochBound, WildCd2 };
enum class BoundKind { None, Base, Tame, Wild2, Mixed };

std::string to_string(Route route);
std::string to_string(RelationRule rule);
std::string to_string(BoundKind kind);

struct CaseExpectation {
    VerdictKind verdict = VerdictKind::Cuttable;
    Route route = Route::Witness;
    std::optional<std::string> series; // printed form of the final series
    BoundKind bound_kind = BoundKind::None;
    std::optional<std::string> rd_bound; // quoted decimal
    Rational tolerance{1, 2000};
};

struct CaseFixture {
    std::string id;
    std::string title;
    std::string provenance;
    FieldData field;
    RankProfile ranks;
    RelationRule relation_rule = RelationRule::KochBound;
    std::vector<PlaceData> tame_places;
    std::vector<PlaceData> wild_places;
    std::vector<PowerFactor> extra_factors;
    std::vector<CutEntry> cut_ledger;
    std::vector<CaseVariant> variants;
    CaseExpectation expected;
};

// FixtureError on any schema violation, including an unsupported "schema".
CaseFixture fixture_from_json(const Json &j);
CaseFixture load_fixture(const std::filesystem::path &path);

// The rd bound selected by expected.bound_kind; PreconditionError for none.
CertifiedReal fixture_rd_bound(const CaseFixture &cf, const Precision &precision = Precision());

struct CaseCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CertReport {
    std::string id;
    std::string title;
    int d = 0;
    std::int64_t r = 0;
    std::optional<GSSeries> series;
    std::optional<Verdict> verdict;
    std::optional<CertifiedReal> rd_bound;
    std::vector<CaseCheck> checks;
    std::optional<double> millis;

    bool pass() const;
};

struct ReplayOptions {
    Precision precision;
    int max_depth = 12;
    bool timing = false;
};

// Replays one fixture end to end. Expectations that are not met show up as
// failing checks; errors raised by the underlying computations propagate.
CertReport replay(const CaseFixture &cf, const ReplayOptions &options = {});

// ConsistencyError listing every failing check.
void require_pass(const CertReport &report);

struct ReplaySummary {
    std::vector<CertReport> reports; // sorted by id
    std::size_t passed = 0;
    std::size_t failed = 0;

    bool ok() const { return failed == 0; }
};

// Loads every *.json fixture under `dir` whose id matches the glob and
// replays them in parallel. A fixture that fails to load or throws becomes a
// failing report.
ReplaySummary replay_all(const std::filesystem::path &dir, const std::optional<std::string> &filter = std::nullopt,
                         const ReplayOptions &options = {});

std::string report_text(const CertReport &report, bool with_timing = false);
Json report_json(const CertReport &report, bool with_timing = false);
std::string summary_text(const ReplaySummary &summary, bool with_timing = false);
Json summary_json(const ReplaySummary &summary, bool with_timing = false);

} // namespace gstower

#endif
