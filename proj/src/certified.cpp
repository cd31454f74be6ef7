#include <gstower/certified.hpp>

#include <gstower/errors.hpp>

#include <algorithm>
#include <cmath>

namespace gstower
{

namespace
{

Integer pow2(unsigned long k)
{
    Integer r = 1;
    r <<= k;
    return r;
}

// Rough base-2 exponent: |x| lies in [2^(e-1), 2^(e+1)].
long log2_estimate(const Rational &x)
{
    long num_bits = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
    return num_bits - den_bits;
}

Rational floor_to_grid(const Rational &x, long scale_bits)
{
    if (scale_bits >= 0) {
        Integer s = pow2(static_cast<unsigned long>(scale_bits));
        return Rational(floor(x * Rational(s)), s);
    }
    Integer s = pow2(static_cast<unsigned long>(-scale_bits));
    return Rational(floor(x / Rational(s)) * s);
}

Rational ceil_to_grid(const Rational &x, long scale_bits)
{
    if (scale_bits >= 0) {
        Integer s = pow2(static_cast<unsigned long>(scale_bits));
        return Rational(ceil(x * Rational(s)), s);
    }
    Integer s = pow2(static_cast<unsigned long>(-scale_bits));
    return Rational(ceil(x / Rational(s)) * s);
}

Rational canonical(Rational q)
{
    q.canonicalize();
    return q;
}

// 2 * atanh(s) = log((1+s)/(1-s)) for |s| < 1/2, bracketed with the
// geometric remainder bound 2|s|^(2J+1) / ((2J+1)(1 - s^2)).
CertifiedReal two_atanh(const Rational &s, int bits)
{
    Rational s2 = s * s;
    Rational term = s; // s^(2j+1)
    Rational sum = 0;
    Rational tolerance(Integer(1), pow2(static_cast<unsigned long>(bits + 4)));
    for (long j = 0;; ++j) {
        sum += 2 * term / (2 * j + 1);
        term *= s2;
        Rational remainder = 2 * abs(term) / ((2 * j + 3) * (1 - s2));
        if (remainder <= tolerance) {
            CertifiedReal exact_part = round_outward(CertifiedReal(sum - remainder, sum + remainder), bits + 8);
            return exact_part;
        }
    }
}

CertifiedReal log_at_bits(const Rational &x, int bits)
{
    if (x <= 0) {
        throw DomainError("log of a nonpositive number");
    }
    if (x == 1) {
        return CertifiedReal::exact(0);
    }

    // x = 2^e * y with y in roughly [1/2, 2].
    long e = log2_estimate(x);
    Rational y = x;
    if (e > 0) {
        y /= Rational(pow2(static_cast<unsigned long>(e)));
    } else if (e < 0) {
        y *= Rational(pow2(static_cast<unsigned long>(-e)));
    }
    y.canonicalize();

    CertifiedReal log_y = two_atanh(canonical((y - 1) / (y + 1)), bits + 8);
    if (e == 0) {
        return round_outward(log_y, bits);
    }
    CertifiedReal ln2 = two_atanh(Rational(1, 3), bits + 8 + static_cast<int>(mpz_sizeinbase(Integer(e).get_mpz_t(), 2)));
    CertifiedReal scaled = CertifiedReal::exact(Rational(Integer(e))) * ln2;
    return round_outward(scaled + log_y, bits);
}

// exp(y) = exp(y / 2^s)^(2^s) with |y / 2^s| <= 1/2, Taylor remainder bounded
// by twice the first omitted term.
CertifiedReal exp_at_bits(const Rational &y, int bits)
{
    if (y == 0) {
        return CertifiedReal::exact(1);
    }
    long s = std::max<long>(0, log2_estimate(abs(y)) + 2);
    Rational z = canonical(y / Rational(pow2(static_cast<unsigned long>(s))));
    int inner = bits + static_cast<int>(s) + 8;
    Rational tolerance(Integer(1), pow2(static_cast<unsigned long>(inner + 4)));
    Rational sum = 0;
    Rational term = 1;
    for (long n = 0;; ++n) {
        sum += term;
        term = canonical(term * z / (n + 1));
        if (2 * abs(term) <= tolerance) {
            break;
        }
    }
    Rational remainder = 2 * abs(term);
    CertifiedReal r = round_outward(CertifiedReal(canonical(sum - remainder), canonical(sum + remainder)), inner);
    for (long i = 0; i < s; ++i) {
        r = round_outward(r * r, inner);
    }
    return round_outward(r, bits);
}

// Bit size of the integers the exact root path would handle.
constexpr double kRootCostLimit = 1 << 16;

double root_cost(const Rational &base, const Rational &exponent, int bits)
{
    double num_bits = static_cast<double>(mpz_sizeinbase(exponent.get_num_mpz_t(), 2));
    double den_bits = static_cast<double>(mpz_sizeinbase(exponent.get_den_mpz_t(), 2));
    if (num_bits > 40 || den_bits > 40) {
        return kRootCostLimit + 1;
    }
    double a = std::abs(exponent.get_num().get_d());
    double b = exponent.get_den().get_d();
    double base_bits = static_cast<double>(mpz_sizeinbase(base.get_num_mpz_t(), 2) +
                                           mpz_sizeinbase(base.get_den_mpz_t(), 2));
    return a * base_bits + b * bits;
}

} // namespace

Precision::Precision() : Precision(Rational(1, 100000000)) {}

Precision::Precision(Rational relative) : relative_(std::move(relative))
{
    if (relative_ <= 0 || relative_ >= 1) {
        throw PreconditionError("precision must lie in ]0,1[");
    }
    bits_ = 0;
    Rational p = 1;
    while (p > relative_) {
        p /= 2;
        ++bits_;
    }
}

Precision Precision::parse(const std::string &text)
{
    return Precision(parse_rational(text));
}

CertifiedReal::CertifiedReal(Rational lower, Rational upper) : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (lower_ > upper_) {
        throw PreconditionError("interval lower end exceeds upper end");
    }
}

bool CertifiedReal::meets(const Precision &precision) const
{
    return width() <= precision.relative() * abs(upper_);
}

CertifiedReal operator+(const CertifiedReal &a, const CertifiedReal &b)
{
    return CertifiedReal(canonical(a.lower() + b.lower()), canonical(a.upper() + b.upper()));
}

CertifiedReal operator-(const CertifiedReal &a, const CertifiedReal &b)
{
    return CertifiedReal(canonical(a.lower() - b.upper()), canonical(a.upper() - b.lower()));
}

CertifiedReal operator*(const CertifiedReal &a, const CertifiedReal &b)
{
    Rational c[4] = {canonical(a.lower() * b.lower()), canonical(a.lower() * b.upper()),
                     canonical(a.upper() * b.lower()), canonical(a.upper() * b.upper())};
    return CertifiedReal(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

CertifiedReal operator/(const CertifiedReal &a, const CertifiedReal &b)
{
    if (b.lower() <= 0 && b.upper() >= 0) {
        throw DomainError("interval division by an interval containing zero");
    }
    CertifiedReal inv(canonical(1 / b.upper()), canonical(1 / b.lower()));
    return a * inv;
}

CertifiedReal round_outward(const CertifiedReal &x, int bits)
{
    Rational mag = std::max(abs(x.lower()), abs(x.upper()));
    if (mag == 0) {
        return x;
    }
    long scale = bits - log2_estimate(mag);
    Rational lo = floor_to_grid(x.lower(), scale);
    Rational hi = ceil_to_grid(x.upper(), scale);
    // Keep exact values exact when the grid already represents them.
    if (x.is_exact() && lo == hi) {
        return x;
    }
    return CertifiedReal(canonical(lo), canonical(hi));
}

CertifiedReal pow(const Rational &base, const Rational &exponent, const Precision &precision)
{
    if (base <= 0) {
        throw DomainError("rational power needs a positive base");
    }
    int bits = precision.working_bits();
    if (root_cost(base, exponent, bits) > kRootCostLimit) {
        // Large exponents: exp(exponent * log(base)) instead of an exact power and a huge root.
        Rational magnitude = abs(exponent) * (std::abs(log2_estimate(base)) + 2);
        int guard = static_cast<int>(std::max<long>(0, log2_estimate(magnitude))) + 8;
        CertifiedReal y = round_outward(log_at_bits(base, bits + guard) * CertifiedReal::exact(exponent),
                                        bits + 2 * guard);
        return round_outward(CertifiedReal(exp_at_bits(y.lower(), bits + guard).lower(),
                                           exp_at_bits(y.upper(), bits + guard).upper()),
                             bits);
    }
    long a = exponent.get_num().get_si();
    unsigned long b = exponent.get_den().get_ui();
    Rational x = pow(base, a);
    if (b == 1) {
        return CertifiedReal::exact(x);
    }

    // Root of x scaled by 2^k should have at least `bits` bits.
    long l2 = log2_estimate(x);
    long k = std::max<long>(0, bits - l2 / static_cast<long>(b) + 2);
    Integer scaled_num = x.get_num() << static_cast<mp_bitcnt_t>(k * static_cast<long>(b));
    Integer m;
    mpz_fdiv_q(m.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den_mpz_t());
    Integer r;
    int is_exact_root = mpz_root(r.get_mpz_t(), m.get_mpz_t(), b);
    Integer denom = pow2(static_cast<unsigned long>(k));

    bool scaled_is_integer = mpz_divisible_p(scaled_num.get_mpz_t(), x.get_den_mpz_t()) != 0;
    if (is_exact_root && scaled_is_integer) {
        return CertifiedReal::exact(canonical(Rational(r, denom)));
    }
    return CertifiedReal(canonical(Rational(r, denom)), canonical(Rational(r + 1, denom)));
}

CertifiedReal log(const Rational &x, const Precision &precision)
{
    return log_at_bits(x, precision.working_bits());
}

CertifiedReal exp(const CertifiedReal &x, const Precision &precision)
{
    int bits = precision.working_bits();
    Rational mag = std::max(abs(x.lower()), abs(x.upper()));
    int guard = static_cast<int>(std::max<long>(0, log2_estimate(mag + 1))) + 8;
    return round_outward(
        CertifiedReal(exp_at_bits(x.lower(), bits + guard).lower(), exp_at_bits(x.upper(), bits + guard).upper()),
        bits);
}

CertifiedReal log(const CertifiedReal &x, const Precision &precision)
{
    if (x.lower() <= 0) {
        throw DomainError("log of an interval reaching zero or below");
    }
    if (x.is_exact()) {
        return log(x.lower(), precision);
    }
    CertifiedReal lo = log(x.lower(), precision);
    CertifiedReal hi = log(x.upper(), precision);
    return CertifiedReal(lo.lower(), hi.upper());
}

std::string describe_upper(const CertifiedReal &x, int digits)
{
    return "< " + to_decimal_up(x.upper(), digits) + " (certified)";
}

std::string describe_interval(const CertifiedReal &x, int digits)
{
    return "[" + to_decimal_down(x.lower(), digits) + ", " + to_decimal_up(x.upper(), digits) + "]";
}

} // namespace gstower
