#ifndef GSTOWER_CERTIFIED_HPP
#define GSTOWER_CERTIFIED_HPP

#include <string>

#include <gstower/rational.hpp>

namespace gstower
{

// Requested relative width of a certified result. Internally every
// computation runs with working_bits() bits, which is about twice the bit
// length of 1/relative plus guard bits.
class Precision
{
  public:
    Precision();
    explicit Precision(Rational relative);

    static Precision parse(const std::string &text);

    const Rational &relative() const noexcept { return relative_; }
    int bits() const noexcept { return bits_; }
    int working_bits() const noexcept { return 2 * bits_ + 16; }

  private:
    Rational relative_;
    int bits_;
};

// Closed rational interval [lower, upper] known to contain a real number.
class CertifiedReal
{
  public:
    CertifiedReal() = default;
    CertifiedReal(Rational lower, Rational upper);

    static CertifiedReal exact(const Rational &value) { return CertifiedReal(value, value); }

    const Rational &lower() const noexcept { return lower_; }
    const Rational &upper() const noexcept { return upper_; }
    Rational width() const { return upper_ - lower_; }
    Rational midpoint() const { return (lower_ + upper_) / 2; }
    bool is_exact() const { return lower_ == upper_; }
    bool contains(const Rational &x) const { return lower_ <= x && x <= upper_; }
    bool is_positive() const { return lower_ > 0; }

    // width <= relative * |upper|
    bool meets(const Precision &precision) const;

    friend bool operator==(const CertifiedReal &, const CertifiedReal &) = default;

  private:
    Rational lower_{0};
    Rational upper_{0};
};

CertifiedReal operator+(const CertifiedReal &a, const CertifiedReal &b);
CertifiedReal operator-(const CertifiedReal &a, const CertifiedReal &b);
CertifiedReal operator*(const CertifiedReal &a, const CertifiedReal &b);
CertifiedReal operator/(const CertifiedReal &a, const CertifiedReal &b);

// Snaps both ends outward to a dyadic grid with `bits` bits relative to the
// magnitude, so repeated products do not grow huge denominators.
CertifiedReal round_outward(const CertifiedReal &x, int bits);

// base^exponent for base > 0 and a rational exponent a/b: base^a exactly,
// then the b-th root bracketed by integer roots. Exponents too large for
// that go through exp(exponent * log(base)).
CertifiedReal pow(const Rational &base, const Rational &exponent, const Precision &precision);

// Natural logarithm of a positive rational or interval.
CertifiedReal log(const Rational &x, const Precision &precision);
CertifiedReal log(const CertifiedReal &x, const Precision &precision);

CertifiedReal exp(const CertifiedReal &x, const Precision &precision);

// "< 78.4269059 (certified)" style: upper end rounded up.
std::string describe_upper(const CertifiedReal &x, int digits = 7);
// "[lower, upper]" in decimals rounded outward.
std::string describe_interval(const CertifiedReal &x, int digits = 10);

} // namespace gstower

#endif
