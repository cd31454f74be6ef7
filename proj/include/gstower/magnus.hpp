#ifndef GSTOWER_MAGNUS_HPP
#define GSTOWER_MAGNUS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gstower
{

// A letter x_i^e of a free group word, e != 0.
struct Letter {
    int generator = 0;
    long exponent = 1;

    friend bool operator==(const Letter &, const Letter &) = default;
};

// Element of the free group on d generators, kept freely reduced: adjacent
// letters always have distinct generators and no exponent is zero.
class FreeWord
{
  public:
    FreeWord() = default;
    explicit FreeWord(int generators);
    FreeWord(int generators, std::vector<Letter> letters);

    static FreeWord generator(int generators, int index, long exponent = 1);

    // Parses "x0 x1 x0^-1 x1^-1", "[x0,x1]", "x0^4", "[x0 x1, x2]^2".
    // The rank is max index + 1 unless `generators` is given and larger.
    static FreeWord parse(std::string_view text, int generators = 0);

    int generators() const noexcept { return d_; }
    const std::vector<Letter> &letters() const noexcept { return letters_; }
    bool is_identity() const noexcept { return letters_.empty(); }
    std::size_t size() const noexcept { return letters_.size(); }

    FreeWord inverse() const;
    FreeWord power(long n) const;

    friend FreeWord operator*(const FreeWord &a, const FreeWord &b);
    friend bool operator==(const FreeWord &, const FreeWord &) = default;

  private:
    void push(Letter letter);

    int d_ = 0;
    std::vector<Letter> letters_;
};

// [a, b] = a b a^-1 b^-1
FreeWord commutator(const FreeWord &a, const FreeWord &b);

std::string to_string(const FreeWord &w);

// Monomial in noncommuting X_0 .. X_{d-1}, packed four bits per letter
// (letter index + 1, first letter in the low nibble). Limits: d <= 15 and
// length <= 16.
using Monomial = std::uint64_t;

inline constexpr int kMaxMagnusGenerators = 15;
inline constexpr int kMaxMagnusTruncation = 16;
inline constexpr std::size_t kDefaultTermCap = 10'000'000;
inline constexpr int kDefaultTruncation = 12;

int monomial_length(Monomial m) noexcept;
Monomial monomial_from(const std::vector<int> &letters);
std::vector<int> monomial_letters(Monomial m);

// Truncated power series in F_p<<X_0, ..., X_{d-1}>> modulo terms of degree
// > N. No zero coefficient is ever stored.
class NCSeries
{
  public:
    NCSeries(std::uint32_t p, int generators, int truncation);

    static NCSeries one(std::uint32_t p, int generators, int truncation);

    std::uint32_t prime() const noexcept { return p_; }
    int generators() const noexcept { return d_; }
    int truncation() const noexcept { return n_; }
    std::size_t size() const noexcept { return terms_.size(); }
    const std::unordered_map<Monomial, std::uint32_t> &terms() const noexcept { return terms_; }

    std::uint32_t coefficient(Monomial m) const;
    std::uint32_t coefficient(const std::vector<int> &letters) const;
    void set(Monomial m, std::uint32_t value);
    void add(Monomial m, std::uint64_t value);

    // Right multiplication by a univariate series sum_k c_k X_i^k.
    NCSeries times_letter(int generator, const std::vector<std::uint32_t> &coeffs,
                          std::size_t term_cap = kDefaultTermCap) const;

    // Lowest degree of a nonzero term of (this - 1), or -1 if there is none.
    int lowest_nonconstant_degree() const;

    NCSeries operator-(const NCSeries &other) const;
    friend NCSeries multiply(const NCSeries &a, const NCSeries &b, std::size_t term_cap);
    NCSeries operator*(const NCSeries &other) const { return multiply(*this, other, kDefaultTermCap); }

    friend bool operator==(const NCSeries &a, const NCSeries &b);

  private:
    void check_compatible(const NCSeries &other) const;

    std::uint32_t p_;
    int d_;
    int n_;
    std::unordered_map<Monomial, std::uint32_t> terms_;
};

NCSeries multiply(const NCSeries &a, const NCSeries &b, std::size_t term_cap);

// Terms sorted by (degree, letters) with runs of a letter collapsed, e.g.
// "1 + X0 + X0^2 + X0X1".
std::string to_string(const NCSeries &s);

// (1 + X)^e mod (p, X^{N+1}) as a coefficient vector of length N + 1.
std::vector<std::uint32_t> binomial_series(long exponent, std::uint32_t p, int truncation);

// Image of w under x_i -> 1 + X_i, truncated at degree N.
NCSeries embed(const FreeWord &w, std::uint32_t p, int truncation, std::size_t term_cap = kDefaultTermCap);

enum class DepthKind { Exact, AtLeast, Infinity };

struct DepthResult {
    DepthKind kind = DepthKind::Infinity;
    int value = 0; // n for Exact(n), N+1 for AtLeast(N+1)

    static DepthResult exact(int n) { return {DepthKind::Exact, n}; }
    static DepthResult at_least(int n) { return {DepthKind::AtLeast, n}; }
    static DepthResult infinity() { return {DepthKind::Infinity, 0}; }

    friend bool operator==(const DepthResult &, const DepthResult &) = default;
};

std::string to_string(const DepthResult &r);

// Zassenhaus depth of w in the free pro-p group: the lowest degree of a
// nonzero term of embed(w) - 1.
DepthResult depth(const FreeWord &w, std::uint32_t p, int truncation = kDefaultTruncation,
                  std::size_t term_cap = kDefaultTermCap);

// g in Phi_n(G) forces depth >= 2^(n-1) for any lift.
long frattini_depth_bound(int n);

// Equal p-ranks with and without ramification at Frattini level n put the
// tame inertia generator at depth >= 2^n.
long rank_equality_depth(int n);

bool is_prime(std::uint64_t n);

} // namespace gstower

#endif
