#include <gstower/rdbound.hpp>

#include <gstower/errors.hpp>
#include <gstower/magnus.hpp>

#include <mpfr.h>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace gstower
{

namespace
{

bool is_prime_integer(const Integer &q)
{
    return q > 1 && mpz_probab_prime_p(q.get_mpz_t(), 30) > 0;
}

void merge(ExponentMap &into, const Integer &base, const Rational &exponent)
{
    if (exponent == 0) {
        return;
    }
    Rational &slot = into[base];
    slot += exponent;
    slot.canonicalize();
    if (slot == 0) {
        into.erase(base);
    }
}

void merge_radical(ExponentMap &into, const FieldData &fd)
{
    for (const auto &factor : fd.rd_base.radical) {
        merge(into, factor.base, factor.exponent);
    }
}

Rational tame_exponent(const PlaceData &place, int degree)
{
    Rational share(place.count * place.f, degree);
    if (!place.k) {
        return share;
    }
    Rational cut = 1 - Rational(1) / pow(Rational(place.p), *place.k);
    return share * cut;
}

} // namespace

Integer PlaceData::norm() const
{
    Integer n;
    mpz_pow_ui(n.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(f));
    return n;
}

void validate(const FieldData &fd, const Precision &precision)
{
    if (fd.degree < 1 || fd.r1 < 0 || fd.r2 < 0 || fd.r1 + 2 * fd.r2 != fd.degree) {
        throw FixtureError("field " + fd.name + ": signature does not add up to the degree");
    }
    if (fd.rd_base.decimal && fd.rd_base.decimal <= 0) {
        throw FixtureError("field " + fd.name + ": rd must be positive");
    }
    if (!fd.rd_base.decimal && fd.rd_base.radical.empty()) {
        throw FixtureError("field " + fd.name + ": no rd data");
    }
    for (const auto &factor : fd.rd_base.radical) {
        if (factor.base < 1) {
            throw FixtureError("field " + fd.name + ": radical base must be positive");
        }
    }
    if (fd.disc_factorization.empty()) {
        return;
    }
    ExponentMap from_disc;
    for (const auto &[prime, exponent] : fd.disc_factorization) {
        if (!is_prime_integer(prime) || exponent < 1) {
            throw FixtureError("field " + fd.name + ": malformed discriminant factorization");
        }
        merge(from_disc, prime, Rational(exponent, fd.degree));
    }
    if (!fd.rd_base.decimal) {
        ExponentMap from_radical;
        merge_radical(from_radical, fd);
        Integer common = 1;
        for (const auto *map : {&from_radical, &from_disc}) {
            for (const auto &[base, exponent] : *map) {
                mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), exponent.get_den_mpz_t());
            }
        }
        auto raised = [&common](const ExponentMap &map) {
            Rational value = 1;
            for (const auto &[base, exponent] : map) {
                Rational scaled = exponent * Rational(common);
                value *= pow(Rational(base), scaled.get_num().get_si());
            }
            return value;
        };
        if (raised(from_radical) != raised(from_disc)) {
            throw FixtureError("field " + fd.name + ": rd radical disagrees with |Disc|^(1/n)");
        }
        return;
    }
    CertifiedReal rd = product_of_powers(from_disc, precision);
    const Rational &quoted = *fd.rd_base.decimal;
    if (rd.lower() > quoted || quoted > rd.upper() * Rational(1001, 1000)) {
        throw FixtureError("field " + fd.name + ": quoted rd is not a close upper bound for |Disc|^(1/n)");
    }
}

void validate(const PlaceData &place, int degree)
{
    if (!is_prime_integer(place.q) || !is_prime(static_cast<std::uint64_t>(std::max(place.p, 0)))) {
        throw FixtureError("place: residue characteristic and p must be prime");
    }
    if (place.e < 1 || place.f < 1 || place.count < 1) {
        throw FixtureError("place: e, f and count must be positive");
    }
    if (place.e * place.f > degree) {
        throw FixtureError("place: e f exceeds the degree");
    }
    if (place.k && *place.k < 0) {
        throw FixtureError("place: k must be nonnegative");
    }
}

CertifiedReal rd_base_value(const FieldData &fd, const Precision &precision)
{
    if (fd.rd_base.decimal) {
        return CertifiedReal::exact(*fd.rd_base.decimal);
    }
    ExponentMap exponents;
    merge_radical(exponents, fd);
    return product_of_powers(exponents, precision);
}

CertifiedReal product_of_powers(const ExponentMap &exponents, const Precision &precision)
{
    CertifiedReal result = CertifiedReal::exact(1);
    for (const auto &[base, exponent] : exponents) {
        result = round_outward(result * pow(Rational(base), exponent, precision), precision.working_bits());
    }
    return result;
}

ExponentMap tame_exponents(const FieldData &fd, const std::vector<PlaceData> &places)
{
    ExponentMap exponents;
    for (const auto &place : places) {
        if (place.wild()) {
            throw DomainError("tame bound given a place above p");
        }
        merge(exponents, place.q, tame_exponent(place, fd.degree));
    }
    return exponents;
}

Rational wild2_exponent(const FieldData &fd, const std::vector<PlaceData> &places)
{
    Rational total = 0;
    for (const auto &place : places) {
        if (place.p != 2 || place.q != 2) {
            throw DomainError("wild bound is only available for p = 2 at places above 2");
        }
        Rational inner = 2 + Rational(1, place.e) - Rational(1) / pow(Rational(2), place.e * place.f);
        total += Rational(place.count * place.f, fd.degree) * inner;
    }
    total.canonicalize();
    return total;
}

ExponentMap wild2_exponents(const FieldData &fd, const std::vector<PlaceData> &places)
{
    ExponentMap exponents;
    merge(exponents, 2, wild2_exponent(fd, places));
    return exponents;
}

ExponentMap mixed_exponents(const FieldData &fd, const std::vector<PlaceData> &tame_places,
                            const std::vector<PlaceData> &wild_places, const std::vector<PowerFactor> &extra)
{
    ExponentMap exponents;
    merge_radical(exponents, fd);
    for (const auto &[base, exponent] : tame_exponents(fd, tame_places)) {
        merge(exponents, base, exponent);
    }
    if (!wild_places.empty()) {
        merge(exponents, 2, wild2_exponent(fd, wild_places));
    }
    for (const auto &factor : extra) {
        merge(exponents, factor.base, factor.exponent);
    }
    return exponents;
}

CertifiedReal tame_bound(const FieldData &fd, const std::vector<PlaceData> &places, const Precision &precision)
{
    return mixed_bound(fd, places, {}, {}, precision);
}

CertifiedReal wild2_bound(const FieldData &fd, const std::vector<PlaceData> &places, const Precision &precision)
{
    return mixed_bound(fd, {}, places, {}, precision);
}

CertifiedReal mixed_bound(const FieldData &fd, const std::vector<PlaceData> &tame_places,
                          const std::vector<PlaceData> &wild_places, const std::vector<PowerFactor> &extra,
                          const Precision &precision)
{
    ExponentMap exponents = mixed_exponents(fd, tame_places, wild_places, extra);
    CertifiedReal value = product_of_powers(exponents, precision);
    if (fd.rd_base.decimal) {
        value = round_outward(value * CertifiedReal::exact(*fd.rd_base.decimal), precision.working_bits());
    }
    return value;
}

Rational grh_alpha(bool totally_real)
{
    return totally_real ? Rational(21533, 100) : Rational(44763, 1000);
}

std::pair<std::string, std::string> grh_constants_high_precision(int digits)
{
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 64);
    mpfr_t pi, gamma, complex_alpha, real_alpha, half_pi;
    mpfr_inits2(prec, pi, gamma, complex_alpha, real_alpha, half_pi, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_const_euler(gamma, MPFR_RNDN);

    mpfr_exp(complex_alpha, gamma, MPFR_RNDN);
    mpfr_mul(complex_alpha, complex_alpha, pi, MPFR_RNDN);
    mpfr_mul_ui(complex_alpha, complex_alpha, 8, MPFR_RNDN);

    mpfr_div_ui(half_pi, pi, 2, MPFR_RNDN);
    mpfr_add(real_alpha, gamma, half_pi, MPFR_RNDN);
    mpfr_exp(real_alpha, real_alpha, MPFR_RNDN);
    mpfr_mul(real_alpha, real_alpha, pi, MPFR_RNDN);
    mpfr_mul_ui(real_alpha, real_alpha, 8, MPFR_RNDN);

    auto render = [digits](mpfr_t x) {
        std::vector<char> buffer(static_cast<std::size_t>(digits) + 64);
        mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rf", digits, x);
        return std::string(buffer.data());
    };
    std::pair<std::string, std::string> result{render(complex_alpha), render(real_alpha)};
    mpfr_clears(pi, gamma, complex_alpha, real_alpha, half_pi, static_cast<mpfr_ptr>(nullptr));
    return result;
}

CertifiedReal grh_distance(const CertifiedReal &rd, bool totally_real, const Precision &precision)
{
    Rational alpha = grh_alpha(totally_real);
    if (rd.lower() <= alpha) {
        throw DomainError("root discriminant does not exceed the GRH constant");
    }
    return log(rd / CertifiedReal::exact(alpha), precision);
}

CertifiedReal improvement_pct(const CertifiedReal &old_partial, const CertifiedReal &new_partial)
{
    if (new_partial.lower() <= 0 || old_partial.lower() < new_partial.upper()) {
        throw DomainError("improvement needs old >= new > 0");
    }
    CertifiedReal hundred = CertifiedReal::exact(100);
    return hundred * (old_partial - new_partial) / old_partial;
}

std::vector<RecordRow> records_table(const Precision &precision, const Rational &tolerance)
{
    struct Quoted {
        const char *signature;
        const char *era;
        const char *rd;
        const char *partial;
    };
    static const Quoted quoted[] = {
        {"tot. compl.", "1978", "92.368", "0.7244"},
        {"tot. compl.", "2002", "82.1004", "0.6066"},
        {"tot. compl.", "current", "78.427", "0.5608"},
        {"tot. real", "1978", "1058.565", "1.592"},
        {"tot. real", "2002", "954.293", "1.488"},
        {"tot. real", "2006", "913.493", "1.445"},
        {"tot. real", "current", "857.567", "1.382"},
    };
    std::vector<RecordRow> rows;
    for (const auto &q : quoted) {
        RecordRow row;
        row.signature = q.signature;
        row.era = q.era;
        row.rd = q.rd;
        row.quoted_partial = q.partial;
        bool real = row.signature == "tot. real";
        row.partial = grh_distance(CertifiedReal::exact(parse_rational(q.rd)), real, precision);
        Rational stated = parse_rational(q.partial);
        Rational low_gap = abs(row.partial.lower() - stated);
        Rational high_gap = abs(row.partial.upper() - stated);
        row.deviation = std::max(low_gap, high_gap);
        row.deviation.canonicalize();
        row.consistent = row.deviation <= tolerance;
        rows.push_back(std::move(row));
    }
    return rows;
}

void check_records(const std::vector<RecordRow> &rows)
{
    std::string failed;
    for (const auto &row : rows) {
        if (!row.consistent) {
            failed += (failed.empty() ? "" : ", ") + row.signature + " " + row.rd + " (quoted " + row.quoted_partial +
                      ", computed " + describe_interval(row.partial, 6) + ")";
        }
    }
    if (!failed.empty()) {
        throw ConsistencyError("records table mismatch: " + failed);
    }
}

std::string records_text(const std::vector<RecordRow> &rows)
{
    std::ostringstream out;
    out << std::left << std::setw(13) << "signature" << std::setw(20) << "era" << std::setw(10) << "rd"
        << std::setw(9) << "partial" << std::setw(26) << "recomputed" << "status\n";
    for (const auto &row : rows) {
        out << std::setw(13) << row.signature << std::setw(20) << row.era << std::setw(10) << row.rd << std::setw(9)
            << row.quoted_partial << std::setw(26) << describe_interval(row.partial, 6)
            << (row.consistent ? "ok" : "MISMATCH (off by " + to_significant_up(row.deviation, 2) + ")") << '\n';
    }
    return out.str();
}

std::string records_csv(const std::vector<RecordRow> &rows)
{
    std::string out = "signature,era,rd,partial\n";
    for (const auto &row : rows) {
        out += row.signature + "," + row.era + "," + row.rd + "," + row.quoted_partial + "\n";
    }
    return out;
}

} // namespace gstower
