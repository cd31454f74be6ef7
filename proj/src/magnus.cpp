#include <gstower/magnus.hpp>

#include <gstower/errors.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <sstream>

namespace gstower
{

// ---------------------------------------------------------------- FreeWord

FreeWord::FreeWord(int generators) : d_(generators)
{
    if (generators < 0) {
        throw PreconditionError("generator count must be nonnegative");
    }
}

FreeWord::FreeWord(int generators, std::vector<Letter> letters) : FreeWord(generators)
{
    for (const auto &l : letters) {
        push(l);
    }
}

FreeWord FreeWord::generator(int generators, int index, long exponent)
{
    FreeWord w(generators);
    w.push(Letter{index, exponent});
    return w;
}

void FreeWord::push(Letter letter)
{
    if (letter.generator < 0 || letter.generator >= d_) {
        throw PreconditionError("generator index " + std::to_string(letter.generator) + " outside [0,"
                                + std::to_string(d_) + ")");
    }
    if (letter.exponent == 0) {
        return;
    }
    if (!letters_.empty() && letters_.back().generator == letter.generator) {
        letters_.back().exponent += letter.exponent;
        if (letters_.back().exponent == 0) {
            letters_.pop_back();
        }
        return;
    }
    letters_.push_back(letter);
}

FreeWord FreeWord::inverse() const
{
    FreeWord w(d_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
        w.push(Letter{it->generator, -it->exponent});
    }
    return w;
}

FreeWord FreeWord::power(long n) const
{
    FreeWord base = n < 0 ? inverse() : *this;
    FreeWord out(d_);
    for (long i = 0; i < (n < 0 ? -n : n); ++i) {
        out = out * base;
    }
    return out;
}

FreeWord operator*(const FreeWord &a, const FreeWord &b)
{
    FreeWord w(std::max(a.d_, b.d_));
    for (const auto &l : a.letters_) {
        w.push(l);
    }
    for (const auto &l : b.letters_) {
        w.push(l);
    }
    return w;
}

FreeWord commutator(const FreeWord &a, const FreeWord &b)
{
    return a * b * a.inverse() * b.inverse();
}

std::string to_string(const FreeWord &w)
{
    if (w.is_identity()) {
        return "1";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &l : w.letters()) {
        if (!first) {
            os << ' ';
        }
        first = false;
        os << 'x' << l.generator;
        if (l.exponent != 1) {
            os << '^' << l.exponent;
        }
    }
    return os.str();
}

namespace
{

class WordParser
{
  public:
    explicit WordParser(std::string_view text) : text_(text) {}

    // Parses with a placeholder rank, then the caller rebuilds at the final rank.
    std::vector<Letter> parse_all()
    {
        auto letters = word({});
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return letters;
    }

    int max_index() const { return max_index_; }

  private:
    using Letters = std::vector<Letter>;

    static Letters invert(const Letters &w)
    {
        Letters out;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            out.push_back(Letter{it->generator, -it->exponent});
        }
        return out;
    }

    static Letters power(const Letters &w, long n)
    {
        Letters base = n < 0 ? invert(w) : w;
        Letters out;
        for (long i = 0; i < (n < 0 ? -n : n); ++i) {
            out.insert(out.end(), base.begin(), base.end());
        }
        return out;
    }

    Letters word(std::string_view terminators)
    {
        Letters out;
        while (true) {
            skip_ws();
            if (pos_ == text_.size() || terminators.find(text_[pos_]) != std::string_view::npos) {
                return out;
            }
            if (text_[pos_] == '*' || text_[pos_] == '.') {
                ++pos_;
                continue;
            }
            Letters it = item();
            out.insert(out.end(), it.begin(), it.end());
        }
    }

    Letters item()
    {
        Letters base;
        char c = text_[pos_];
        if (c == 'x' || c == 'X') {
            ++pos_;
            long index = integer(false);
            if (index > kMaxIndex) {
                fail("generator index too large");
            }
            max_index_ = std::max(max_index_, static_cast<int>(index));
            base.push_back(Letter{static_cast<int>(index), 1});
        } else if (c == '[') {
            ++pos_;
            Letters a = word(",");
            expect(',');
            Letters b = word("]");
            expect(']');
            base = a;
            base.insert(base.end(), b.begin(), b.end());
            Letters ai = invert(a), bi = invert(b);
            base.insert(base.end(), ai.begin(), ai.end());
            base.insert(base.end(), bi.begin(), bi.end());
        } else if (c == '(') {
            ++pos_;
            base = word(")");
            expect(')');
        } else {
            fail("unexpected '" + std::string(1, c) + "'");
        }
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            skip_ws();
            long e = integer(true);
            if (e > kMaxPower || e < -kMaxPower) {
                fail("exponent too large");
            }
            if (base.size() == 1) {
                base.front().exponent *= e;
                if (e == 0) {
                    base.clear();
                }
            } else {
                base = power(base, e);
            }
        }
        return base;
    }

    long integer(bool allow_sign)
    {
        bool negative = false;
        if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        std::size_t start = pos_;
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > std::numeric_limits<int>::max()) {
                fail("number too large");
            }
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        return negative ? -value : value;
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string &why) const
    {
        throw PreconditionError("cannot parse word '" + std::string(text_) + "' at offset " + std::to_string(pos_)
                                + ": " + why);
    }

    static constexpr long kMaxIndex = 1000;
    static constexpr long kMaxPower = 1'000'000;

    std::string_view text_;
    std::size_t pos_ = 0;
    int max_index_ = -1;
};

} // namespace

FreeWord FreeWord::parse(std::string_view text, int generators)
{
    WordParser parser(text);
    auto letters = parser.parse_all();
    int d = std::max(generators, parser.max_index() + 1);
    return FreeWord(d, std::move(letters));
}

// ---------------------------------------------------------------- monomials

int monomial_length(Monomial m) noexcept
{
    if (m == 0) {
        return 0;
    }
    int bits = 64 - __builtin_clzll(m);
    return (bits + 3) / 4;
}

Monomial monomial_from(const std::vector<int> &letters)
{
    if (letters.size() > static_cast<std::size_t>(kMaxMagnusTruncation)) {
        throw PreconditionError("monomial longer than 16 letters");
    }
    Monomial m = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (letters[i] < 0 || letters[i] >= kMaxMagnusGenerators) {
            throw PreconditionError("monomial letter out of range");
        }
        m |= static_cast<Monomial>(letters[i] + 1) << (4 * i);
    }
    return m;
}

std::vector<int> monomial_letters(Monomial m)
{
    std::vector<int> out;
    while (m != 0) {
        out.push_back(static_cast<int>(m & 0xF) - 1);
        m >>= 4;
    }
    return out;
}

namespace
{

// u followed by v, where u has length len_u. The caller guarantees the
// total length is at most 16.
inline Monomial concat(Monomial u, int len_u, Monomial v) noexcept
{
    return len_u >= 16 ? u : (u | (v << (4 * len_u)));
}

std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p) noexcept
{
    return static_cast<std::uint32_t>((a * b) % p);
}

} // namespace

// ---------------------------------------------------------------- NCSeries

NCSeries::NCSeries(std::uint32_t p, int generators, int truncation) : p_(p), d_(generators), n_(truncation)
{
    if (!is_prime(p)) {
        throw PreconditionError(std::to_string(p) + " is not prime");
    }
    if (generators < 0 || generators > kMaxMagnusGenerators) {
        throw PreconditionError("Magnus embedding supports at most 15 generators");
    }
    if (truncation < 1 || truncation > kMaxMagnusTruncation) {
        throw PreconditionError("truncation must lie in [1, 16]");
    }
}

NCSeries NCSeries::one(std::uint32_t p, int generators, int truncation)
{
    NCSeries s(p, generators, truncation);
    s.terms_.emplace(Monomial{0}, 1u);
    return s;
}

std::uint32_t NCSeries::coefficient(Monomial m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

std::uint32_t NCSeries::coefficient(const std::vector<int> &letters) const
{
    return coefficient(monomial_from(letters));
}

void NCSeries::set(Monomial m, std::uint32_t value)
{
    if (monomial_length(m) > n_) {
        return;
    }
    value %= p_;
    if (value == 0) {
        terms_.erase(m);
    } else {
        terms_[m] = value;
    }
}

void NCSeries::add(Monomial m, std::uint64_t value)
{
    if (monomial_length(m) > n_) {
        return;
    }
    std::uint32_t v = static_cast<std::uint32_t>((coefficient(m) + value % p_) % p_);
    set(m, v);
}

void NCSeries::check_compatible(const NCSeries &other) const
{
    if (p_ != other.p_ || n_ != other.n_) {
        throw PreconditionError("series over different primes or truncations");
    }
}

NCSeries NCSeries::times_letter(int generator, const std::vector<std::uint32_t> &coeffs, std::size_t term_cap) const
{
    if (generator < 0 || generator >= d_) {
        throw PreconditionError("generator index out of range");
    }
    std::array<Monomial, kMaxMagnusTruncation + 1> run{};
    for (int k = 1; k <= n_; ++k) {
        run[k] = run[k - 1] | (static_cast<Monomial>(generator + 1) << (4 * (k - 1)));
    }

    std::unordered_map<Monomial, std::uint64_t> acc;
    acc.reserve(terms_.size() * 2);
    for (const auto &[m, c] : terms_) {
        int len = monomial_length(m);
        int top = std::min<int>(n_ - len, static_cast<int>(coeffs.size()) - 1);
        for (int k = 0; k <= top; ++k) {
            if (coeffs[k] == 0) {
                continue;
            }
            Monomial key = k == 0 ? m : concat(m, len, run[k]);
            auto &slot = acc[key];
            slot = (slot + mulmod(c, coeffs[k], p_)) % p_;
        }
        if (acc.size() > term_cap) {
            throw ResourceError("Magnus series exceeds the term cap of " + std::to_string(term_cap));
        }
    }

    NCSeries out(p_, d_, n_);
    out.terms_.reserve(acc.size());
    for (const auto &[m, c] : acc) {
        if (c != 0) {
            out.terms_.emplace(m, static_cast<std::uint32_t>(c));
        }
    }
    return out;
}

int NCSeries::lowest_nonconstant_degree() const
{
    int best = -1;
    for (const auto &[m, c] : terms_) {
        if (m == 0) {
            if (c != 1) {
                return 0;
            }
            continue;
        }
        int len = monomial_length(m);
        if (best < 0 || len < best) {
            best = len;
        }
    }
    return best;
}

NCSeries NCSeries::operator-(const NCSeries &other) const
{
    check_compatible(other);
    NCSeries out = *this;
    out.d_ = std::max(d_, other.d_);
    for (const auto &[m, c] : other.terms_) {
        out.add(m, p_ - c);
    }
    return out;
}

NCSeries multiply(const NCSeries &a, const NCSeries &b, std::size_t term_cap)
{
    a.check_compatible(b);
    const int n = a.n_;
    const std::uint32_t p = a.p_;

    std::vector<std::vector<std::pair<Monomial, std::uint32_t>>> by_degree(static_cast<std::size_t>(n) + 1);
    for (const auto &[m, c] : b.terms_) {
        by_degree[static_cast<std::size_t>(monomial_length(m))].emplace_back(m, c);
    }

    std::unordered_map<Monomial, std::uint64_t> acc;
    for (const auto &[ma, ca] : a.terms_) {
        int la = monomial_length(ma);
        for (int db = 0; db + la <= n; ++db) {
            for (const auto &[mb, cb] : by_degree[static_cast<std::size_t>(db)]) {
                auto &slot = acc[concat(ma, la, mb)];
                slot = (slot + mulmod(ca, cb, p)) % p;
            }
        }
        if (acc.size() > term_cap) {
            throw ResourceError("Magnus series exceeds the term cap of " + std::to_string(term_cap));
        }
    }

    NCSeries out(p, std::max(a.d_, b.d_), n);
    for (const auto &[m, c] : acc) {
        if (c != 0) {
            out.terms_.emplace(m, static_cast<std::uint32_t>(c));
        }
    }
    return out;
}

bool operator==(const NCSeries &a, const NCSeries &b)
{
    return a.p_ == b.p_ && a.n_ == b.n_ && a.terms_ == b.terms_;
}

std::string to_string(const NCSeries &s)
{
    std::vector<std::pair<std::vector<int>, std::uint32_t>> sorted;
    sorted.reserve(s.size());
    for (const auto &[m, c] : s.terms()) {
        sorted.emplace_back(monomial_letters(m), c);
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y) {
        if (x.first.size() != y.first.size()) {
            return x.first.size() < y.first.size();
        }
        return x.first < y.first;
    });
    if (sorted.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[letters, c] : sorted) {
        if (!first) {
            os << " + ";
        }
        first = false;
        if (letters.empty()) {
            os << c;
            continue;
        }
        if (c != 1) {
            os << c << "*";
        }
        for (std::size_t i = 0; i < letters.size();) {
            std::size_t j = i;
            while (j < letters.size() && letters[j] == letters[i]) {
                ++j;
            }
            os << 'X' << letters[i];
            if (j - i > 1) {
                os << '^' << (j - i);
            }
            i = j;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- embedding

namespace
{

std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b,
                                    std::uint32_t p, int n)
{
    std::vector<std::uint32_t> out(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + mulmod(a[i], b[j], p)) % p);
        }
    }
    return out;
}

} // namespace

std::vector<std::uint32_t> binomial_series(long exponent, std::uint32_t p, int truncation)
{
    const auto len = static_cast<std::size_t>(truncation) + 1;
    std::vector<std::uint32_t> base(len, 0);
    base[0] = 1 % p;
    if (exponent >= 0) {
        if (len > 1) {
            base[1] = 1 % p;
        }
    } else {
        // (1 + X)^-1 = 1 - X + X^2 - ...
        for (std::size_t k = 1; k < len; ++k) {
            base[k] = (k % 2 == 0) ? 1 % p : p - 1;
        }
    }
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    std::vector<std::uint32_t> result(len, 0);
    result[0] = 1 % p;
    while (e > 0) {
        if (e & 1UL) {
            result = poly_mul(result, base, p, truncation);
        }
        e >>= 1;
        if (e > 0) {
            base = poly_mul(base, base, p, truncation);
        }
    }
    return result;
}

NCSeries embed(const FreeWord &w, std::uint32_t p, int truncation, std::size_t term_cap)
{
    NCSeries s = NCSeries::one(p, w.generators(), truncation);
    for (const auto &letter : w.letters()) {
        s = s.times_letter(letter.generator, binomial_series(letter.exponent, p, truncation), term_cap);
    }
    return s;
}

std::string to_string(const DepthResult &r)
{
    switch (r.kind) {
    case DepthKind::Exact:
        return "Exact(" + std::to_string(r.value) + ")";
    case DepthKind::AtLeast:
        return "AtLeast(" + std::to_string(r.value) + ")";
    case DepthKind::Infinity:
        return "Infinity";
    }
    return "?";
}

DepthResult depth(const FreeWord &w, std::uint32_t p, int truncation, std::size_t term_cap)
{
    if (w.is_identity()) {
        // Still validate p and N so bad input is rejected uniformly.
        NCSeries check(p, w.generators(), truncation);
        return DepthResult::infinity();
    }
    NCSeries s = embed(w, p, truncation, term_cap);
    int lowest = s.lowest_nonconstant_degree();
    if (lowest < 0) {
        return DepthResult::at_least(truncation + 1);
    }
    return DepthResult::exact(lowest);
}

long frattini_depth_bound(int n)
{
    if (n < 1) {
        throw PreconditionError("Frattini level must be >= 1");
    }
    if (n > 62) {
        throw ResourceError("Frattini level too large");
    }
    return 1L << (n - 1);
}

long rank_equality_depth(int n)
{
    if (n < 1) {
        throw PreconditionError("rank-equality level must be >= 1");
    }
    if (n > 61) {
        throw ResourceError("rank-equality level too large");
    }
    return 1L << n;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            return false;
        }
    }
    return true;
}

} // namespace gstower
