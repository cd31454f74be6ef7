#include <doctest.h>

#include <gstower/certified.hpp>
#include <gstower/errors.hpp>
#include <gstower/json_io.hpp>

#include "oracles.hpp"

#include <random>

using namespace gstower;

namespace
{

bool encloses(const CertifiedReal &x, const oracle::Reference &ref)
{
    return x.lower() <= ref.value + ref.radius && x.upper() >= ref.value - ref.radius;
}

Rational random_positive(std::mt19937 &rng)
{
    std::uniform_int_distribution<long> num(1, 5000), den(1, 300);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

} // namespace

TEST_CASE("precision")
{
    Precision def;
    CHECK(def.relative() == Rational(1, 100000000));
    CHECK(def.bits() == 27);
    CHECK(def.working_bits() == 70);
    CHECK(Precision::parse("1e-4").relative() == Rational(1, 10000));
    CHECK(Precision::parse("1/1024").bits() == 10);
    CHECK_THROWS_AS(Precision(Rational(0)), PreconditionError);
    CHECK_THROWS_AS(Precision(Rational(1)), PreconditionError);
    CHECK_THROWS_AS(Precision::parse("abc"), FixtureError);
}

TEST_CASE("interval arithmetic encloses exact results")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        Rational a = random_positive(rng), b = random_positive(rng), c = random_positive(rng),
                 e = random_positive(rng);
        Rational a_lo = std::min(a, b), a_hi = std::max(a, b);
        Rational b_lo = std::min(c, e), b_hi = std::max(c, e);
        CertifiedReal x(a_lo, a_hi), y(b_lo - 3, b_hi - 3);
        Rational px = (a_lo + a_hi) / 2, py = (b_lo + b_hi) / 2 - 3;
        CHECK((x + y).contains(px + py));
        CHECK((x - y).contains(px - py));
        CHECK((x * y).contains(px * py));
        if (!y.contains(0)) {
            CHECK((x / y).contains(px / py));
        } else {
            CHECK_THROWS_AS(x / y, DomainError);
        }
        CertifiedReal rounded = round_outward(x * y, 20);
        CHECK(rounded.lower() <= (x * y).lower());
        CHECK(rounded.upper() >= (x * y).upper());
    }
    CHECK_THROWS_AS(CertifiedReal(Rational(2), Rational(1)), PreconditionError);
}

TEST_CASE("rational powers agree with MPFR")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> exp_num(-9, 9), exp_den(1, 12);
    Precision precision;
    for (int trial = 0; trial < 200; ++trial) {
        Rational base = random_positive(rng);
        Rational exponent(exp_num(rng), exp_den(rng));
        exponent.canonicalize();
        CertifiedReal r = pow(base, exponent, precision);
        CAPTURE(to_string(base));
        CAPTURE(to_string(exponent));
        CHECK(encloses(r, oracle::mpfr_pow(base, exponent)));
        CHECK(r.meets(precision));
    }
}

TEST_CASE("cube root of 163 squared against bisection")
{
    CertifiedReal r = pow(Rational(163), Rational(2, 3), Precision());
    auto [lo, hi] = oracle::bisect_root(163 * 163, 3);
    CHECK(r.lower() <= hi);
    CHECK(r.upper() >= lo);
    CHECK(r.lower() > Rational(298395, 10000));
    CHECK(r.upper() < Rational(298396, 10000));
}

TEST_CASE("exact powers stay exact")
{
    CHECK(pow(Rational(4), Rational(1, 2), Precision()) == CertifiedReal::exact(2));
    CHECK(pow(Rational(9, 4), Rational(1, 2), Precision()) == CertifiedReal::exact(Rational(3, 2)));
    CHECK(pow(Rational(2), Rational(3), Precision()) == CertifiedReal::exact(8));
    CHECK(pow(Rational(2), Rational(-2), Precision()) == CertifiedReal::exact(Rational(1, 4)));
    CHECK(pow(Rational(7), Rational(0), Precision()) == CertifiedReal::exact(1));
    CHECK_THROWS_AS(pow(Rational(0), Rational(1, 2), Precision()), DomainError);
    CHECK_THROWS_AS(pow(Rational(-2), Rational(1, 3), Precision()), DomainError);
}

TEST_CASE("logarithms agree with MPFR")
{
    std::mt19937 rng(9);
    Precision precision;
    for (int trial = 0; trial < 200; ++trial) {
        Rational x = random_positive(rng);
        CertifiedReal r = log(x, precision);
        CAPTURE(to_string(x));
        CHECK(encloses(r, oracle::mpfr_log(x)));
        CHECK(r.width() <= precision.relative() * abs(r.upper()) + Rational(1, 1000000000));
    }
    CHECK(log(Rational(1), precision) == CertifiedReal::exact(0));
    CHECK_THROWS_AS(log(Rational(0), precision), DomainError);
    CHECK_THROWS_AS(log(CertifiedReal(Rational(-1), Rational(2)), precision), DomainError);
}

TEST_CASE("exponentials agree with MPFR")
{
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> num(-40000, 40000), den(1, 997);
    Precision precision;
    for (int trial = 0; trial < 200; ++trial) {
        Rational x(num(rng), den(rng));
        x.canonicalize();
        CertifiedReal r = exp(CertifiedReal::exact(x), precision);
        CAPTURE(to_string(x));
        CHECK(encloses(r, oracle::mpfr_exp(x)));
        CHECK(r.meets(precision));
    }
    CHECK(exp(CertifiedReal::exact(0), precision) == CertifiedReal::exact(1));
    CertifiedReal span = exp(CertifiedReal(Rational(1), Rational(2)), precision);
    CHECK(span.lower() < Rational(2719, 1000));
    CHECK(span.upper() > Rational(7389, 1000));
}

TEST_CASE("powers with large exponents")
{
    Precision precision;
    for (int k : {16, 30, 40}) {
        Rational exponent = (1 - Rational(1, Integer(1) << k)) / 6;
        exponent.canonicalize();
        CertifiedReal r = pow(Rational(3), exponent, precision);
        CAPTURE(k);
        CHECK(encloses(r, oracle::mpfr_pow(3, exponent)));
        CHECK(r.meets(precision));
    }
    Rational big(123456789, 1000);
    CertifiedReal r = pow(Rational(7, 5), big, precision);
    CHECK(encloses(r, oracle::mpfr_pow(Rational(7, 5), big)));
    CHECK(r.meets(precision));
}

TEST_CASE("tighter precision narrows results")
{
    Rational base(68, 1);
    for (const char *eps : {"1e-6", "1e-8", "1e-12", "1e-20"}) {
        Precision precision = Precision::parse(eps);
        Precision finer(precision.relative() / 2);
        CertifiedReal coarse = pow(base, Rational(1, 16), precision);
        CertifiedReal fine = pow(base, Rational(1, 16), finer);
        CHECK(fine.width() * 2 <= coarse.width());
        CertifiedReal log_coarse = log(Rational(1752, 1000), precision);
        CertifiedReal log_fine = log(Rational(1752, 1000), finer);
        CHECK(log_fine.width() * 2 <= log_coarse.width());
    }
}

TEST_CASE("display")
{
    CertifiedReal x(Rational(784269058, 10000000), Rational(784269059, 10000000));
    CHECK(describe_upper(x) == "< 78.4269059 (certified)");
    CHECK(describe_upper(x, 3) == "< 78.427 (certified)");
    CHECK(describe_interval(CertifiedReal(Rational(1, 3), Rational(2, 3)), 4) == "[0.3333, 0.6667]");
}

TEST_CASE("certified real JSON")
{
    CertifiedReal x(Rational(1, 3), Rational(1, 2));
    Json j = to_json(x);
    CHECK(j.dump() == R"({"lower":"1/3","upper":"1/2"})");
    CHECK(certified_from_json(j) == x);
    CHECK_THROWS_AS(certified_from_json(Json::parse(R"({"lower":"1","upper":"0"})")), FixtureError);
}
