#ifndef GSTOWER_RDBOUND_HPP
#define GSTOWER_RDBOUND_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gstower/certified.hpp>
#include <gstower/rational.hpp>

namespace gstower
{

// base^exponent with an integer base and a rational exponent.
struct PowerFactor {
    Integer base;
    Rational exponent;
};

// Upper bound for rd_K: either a decimal quoted by a number-field package
// ("rd_K < 68.3636") or an exact product of rational powers.
struct RdBase {
    std::optional<Rational> decimal;
    std::vector<PowerFactor> radical;
};

struct FieldData {
    std::string name;
    int degree = 1;
    int r1 = 0;
    int r2 = 0;
    RdBase rd_base;
    // |Disc(K)| as (prime, exponent) pairs, when known.
    std::vector<std::pair<Integer, int>> disc_factorization;

    bool totally_real() const { return r2 == 0; }
    bool totally_complex() const { return r1 == 0; }
};

// Places of K above the rational prime q, all with the same (e, f). Cutting
// inertia by its p^k-th power bounds the ramification exponent by p^k;
// k = nullopt means no bound (the full tame tower).
struct PlaceData {
    Integer q;
    int e = 1;
    int f = 1;
    int p = 2;
    std::optional<int> k;
    int count = 1;

    Integer norm() const;
    bool wild() const { return q == p; }
};

// Throws FixtureError when r1 + 2 r2 != n, the rd data is missing or
// nonpositive, or a disc factorization disagrees with an exact rd_base.
void validate(const FieldData &fd, const Precision &precision = Precision());
void validate(const PlaceData &place, int degree);

CertifiedReal rd_base_value(const FieldData &fd, const Precision &precision);

// Exponent map of every rational power contributing to a bound, merged per
// base. rd_base given as a decimal contributes nothing here.
using ExponentMap = std::map<Integer, Rational>;

ExponentMap tame_exponents(const FieldData &fd, const std::vector<PlaceData> &places);
ExponentMap wild2_exponents(const FieldData &fd, const std::vector<PlaceData> &places);

// sum_v f_v (2 + 1/e_v - 2^(-e_v f_v)) / [K:Q], exact.
Rational wild2_exponent(const FieldData &fd, const std::vector<PlaceData> &places);

// rd_K * prod N(p)^((1/n)(1 - p^-k)); DomainError on a wild place.
CertifiedReal tame_bound(const FieldData &fd, const std::vector<PlaceData> &places,
                         const Precision &precision = Precision());

// rd_K * 2^(wild2_exponent); DomainError unless p = 2 and every place lies over 2.
CertifiedReal wild2_bound(const FieldData &fd, const std::vector<PlaceData> &places,
                          const Precision &precision = Precision());

// rd_K times tame and wild factors times explicit extra factors, with every
// exponent merged per base before exponentiation.
CertifiedReal mixed_bound(const FieldData &fd, const std::vector<PlaceData> &tame_places,
                          const std::vector<PlaceData> &wild_places, const std::vector<PowerFactor> &extra = {},
                          const Precision &precision = Precision());

ExponentMap mixed_exponents(const FieldData &fd, const std::vector<PlaceData> &tame_places,
                            const std::vector<PlaceData> &wild_places, const std::vector<PowerFactor> &extra = {});

CertifiedReal product_of_powers(const ExponentMap &exponents, const Precision &precision);

// GRH asymptotic lower bounds as quoted decimals.
Rational grh_alpha(bool totally_real);

// High precision values of 8 pi e^gamma and 8 pi e^(gamma + pi/2), as decimal strings.
std::pair<std::string, std::string> grh_constants_high_precision(int digits = 30);

// log(rd / alpha); DomainError if rd <= alpha.
CertifiedReal grh_distance(const CertifiedReal &rd, bool totally_real,
                                const Precision &precision = Precision());

// 100 * (old - new) / old; DomainError unless old >= new > 0.
CertifiedReal improvement_pct(const CertifiedReal &old_partial, const CertifiedReal &new_partial);

struct RecordRow {
    std::string signature; // "tot. compl." or "tot. real"
    std::string era;
    std::string rd;            // as quoted
    std::string quoted_partial; // as quoted
    CertifiedReal partial;     // recomputed
    Rational deviation;        // |recomputed midpoint - quoted|, rounded outward
    bool consistent = false;
};

inline const Rational kRecordTolerance{1, 2000}; // 5e-4

std::vector<RecordRow> records_table(const Precision &precision = Precision(),
                                     const Rational &tolerance = kRecordTolerance);

// ConsistencyError naming every row whose recomputed partial is off.
void check_records(const std::vector<RecordRow> &rows);

std::string records_text(const std::vector<RecordRow> &rows);
std::string records_csv(const std::vector<RecordRow> &rows);

} // namespace gstower

#endif
