#include <gstower/rational.hpp>

#include <gstower/errors.hpp>

#include <cctype>
#include <string>

namespace gstower
{

namespace
{

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw FixtureError("malformed rational: '" + std::string(whole) + "'");
    }
    Integer z(std::string(s), 10);
    return negative ? Integer(-z) : z;
}

Integer pow10(unsigned long k)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw FixtureError("empty rational");
    }

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash), text);
        std::string_view den_text = text.substr(slash + 1);
        if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
            throw FixtureError("denominator must be unsigned: '" + std::string(text) + "'");
        }
        Integer den = parse_integer(den_text, text);
        if (den == 0) {
            throw FixtureError("zero denominator: '" + std::string(text) + "'");
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    // Decimal with optional exponent.
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        Integer ez = parse_integer(text.substr(e + 1), text);
        if (!ez.fits_slong_p() || ez > 100000 || ez < -100000) {
            throw FixtureError("exponent out of range: '" + std::string(text) + "'");
        }
        exponent = ez.get_si();
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        std::string_view ip = mantissa.substr(0, dot);
        std::string_view fp = mantissa.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
            throw FixtureError("malformed rational: '" + std::string(text) + "'");
        }
        digits = std::string(ip) + std::string(fp);
        frac_digits = static_cast<long>(fp.size());
    } else {
        if (!all_digits(mantissa)) {
            throw FixtureError("malformed rational: '" + std::string(text) + "'");
        }
        digits = std::string(mantissa);
    }
    Rational q{Integer(digits, 10)};
    long shift = exponent - frac_digits;
    if (shift > 0) {
        q *= Rational(pow10(static_cast<unsigned long>(shift)));
    } else if (shift < 0) {
        q /= Rational(pow10(static_cast<unsigned long>(-shift)));
    }
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational &q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor(const Rational &q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational &q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

namespace
{

std::string render_scaled(const Integer &scaled, int digits)
{
    bool negative = scaled < 0;
    Integer a = abs(scaled);
    std::string s = a.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) {
            s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + s : s;
}

} // namespace

std::string to_decimal_up(const Rational &q, int digits)
{
    Rational scaled = q * Rational(pow10(static_cast<unsigned long>(digits)));
    return render_scaled(ceil(scaled), digits);
}

std::string to_decimal_down(const Rational &q, int digits)
{
    Rational scaled = q * Rational(pow10(static_cast<unsigned long>(digits)));
    return render_scaled(floor(scaled), digits);
}

std::string to_significant_up(const Rational &q, int significant)
{
    if (q == 0) {
        return "0";
    }
    // Number of integer digits of |q|.
    Rational a = abs(q);
    int int_digits = 0;
    if (a >= 1) {
        int_digits = static_cast<int>(floor(a).get_str().size());
    } else {
        Rational x = a;
        while (x < Rational(1, 10)) {
            x *= 10;
            --int_digits;
        }
    }
    int after = significant - int_digits;
    if (after < 0) {
        after = 0;
    }
    return to_decimal_up(q, after);
}

Rational pow(const Rational &base, long exponent)
{
    if (exponent < 0) {
        if (base == 0) {
            throw DomainError("zero to a negative power");
        }
        Rational inv = 1 / base;
        return pow(inv, -exponent);
    }
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    r.canonicalize();
    return r;
}

} // namespace gstower
