#ifndef GSTOWER_SERIES_HPP
#define GSTOWER_SERIES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gstower/rational.hpp>

namespace gstower
{

// c * t^start / (1 - ratio * t) = sum_{j >= 0} c * ratio^j * t^{start + j}.
struct Tail {
    Rational coeff;
    int start = 2;
    Rational ratio;

    friend bool operator==(const Tail &, const Tail &) = default;
};

// Golod-Shafarevich series of a minimal presentation:
//
//     P(t) = 1 - d t + sum_k r_k t^k + sum (tails)
//
// Relation depths are >= 2 because relations of a minimal presentation lie
// in the second Zassenhaus subgroup. Counts are merged per depth.
class GSSeries
{
  public:
    GSSeries() = default;
    explicit GSSeries(int generators);

    // Series 1 - d t + r t^2.
    static GSSeries quadratic(int generators, std::int64_t relations);

    int generators() const noexcept { return d_; }
    const std::map<int, std::int64_t> &relations() const noexcept { return relations_; }
    const std::vector<Tail> &tails() const noexcept { return tails_; }

    std::int64_t relation_count(int depth) const;
    std::int64_t total_relations() const;

    // Adds `count` relations of the given depth. Throws DepthError for depth < 2.
    void add_relations(int depth, std::int64_t count);
    void add_tail(const Tail &tail);

    // Polynomial-only with every relation at depth 2 (or no relation at all).
    bool is_quadratic() const;

    friend bool operator==(const GSSeries &, const GSSeries &) = default;

  private:
    int d_ = 0;
    std::map<int, std::int64_t> relations_;
    std::vector<Tail> tails_;
};

// Human readable form, e.g. "1 - 7t + 12t^2 + t^4 + 1*t^5/(1 - 1*t)".
std::string to_string(const GSSeries &s);

enum class VerdictKind { Cuttable, BoundaryInfinite, Inconclusive };

// Result of a negativity search. Cuttable and BoundaryInfinite both certify
// that the group is infinite; only Cuttable leaves a strict margin that
// further cuts can consume.
struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<Rational> t0;
    std::optional<Rational> value;
    // Set only for Inconclusive on a quadratic series whose discriminant
    // d^2 - 4r is negative: the series is then positive on all of ]0,1[.
    bool provably_positive = false;

    bool certifies_infinite() const noexcept { return kind != VerdictKind::Inconclusive; }
};

std::string to_string(VerdictKind kind);
std::string to_string(const Verdict &v);

// Exact value of the series at t. Requires 0 < t < 1 and ratio*t < 1 for
// every tail, else DomainError.
Rational eval(const GSSeries &s, const Rational &t);

// Tries t0 = d / (2 r_total) first, then the dyadic grid j / 2^n for
// n = 1 .. max_depth. The first negative point wins; a zero found with no
// negative point gives BoundaryInfinite.
Verdict find_witness(const GSSeries &s, int max_depth = 12);

// s with `count` extra relations at `depth`. DepthError if depth < 2,
// PreconditionError if count < 0.
GSSeries cut(const GSSeries &s, int depth, std::int64_t count);

// s with a geometric tail coeff * t^k_start / (1 - ratio t) appended.
GSSeries cut_tail(const GSSeries &s, int k_start, const Rational &ratio, const Rational &coeff = Rational(1));

// Smallest k >= 2 with (d/2r)^k < d^2/(4r) - 1, by exact power iteration.
// Requires 2r > d and 4r < d^2.
int min_single_cut_depth(int d, std::int64_t r);

struct LambdaM {
    Rational a;          // 2r / d
    std::int64_t lambda; // floor(a), or a - 1 when a is an integer
    int m;               // least m >= 2 with 1 - d^2/4r + (lambda/a)^m / (1 - lambda/a) < 0
};

// lambda alone; requires only a = 2r/d > 1.
std::int64_t tail_lambda(int d, std::int64_t r);

// Requires 4r < d^2 and a > 1.
LambdaM lambda_m(int d, std::int64_t r);

// Appends sum_{k >= 0} lambda^{m+k} t^{m+k} to s.
GSSeries cut_lambda_tail(const GSSeries &s, const LambdaM &params);

// Greedy generator of cut depths k_1 <= k_2 <= ... that can be imposed one
// after the other without the series at t0 rising above -(1 - budget) * delta,
// where eval(s, t0) = -delta. Each k_i is the least depth >= max(2, k_{i-1})
// with t0^k_i <= (1 - t0) * remaining, so a full tail t0^k / (1 - t0) would
// still fit in what is left of the budget.
class FrobeniusSchedule
{
  public:
    FrobeniusSchedule(const GSSeries &s, Rational t0, Rational budget_fraction = Rational(1, 2));

    int next();

    const Rational &delta() const noexcept { return delta_; }
    const Rational &remaining() const noexcept { return remaining_; }
    const Rational &spent() const noexcept { return spent_; }

  private:
    Rational t0_;
    Rational delta_;
    Rational remaining_;
    Rational spent_;
    int depth_ = 2;
    Rational power_; // t0^depth_
};

std::vector<int> frobenius_schedule(const GSSeries &s, const Rational &t0,
                                    const Rational &budget_fraction, std::size_t length);

// Cap on power-iteration loops (k0, m, schedule steps).
inline constexpr int kIterationCap = 1'000'000;

} // namespace gstower

#endif
