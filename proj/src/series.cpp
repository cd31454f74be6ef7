#include <gstower/series.hpp>

#include <gstower/errors.hpp>

#include <sstream>

namespace gstower
{

GSSeries::GSSeries(int generators) : d_(generators)
{
    if (generators < 0) {
        throw PreconditionError("generator count must be nonnegative");
    }
}

GSSeries GSSeries::quadratic(int generators, std::int64_t relations)
{
    GSSeries s(generators);
    s.add_relations(2, relations);
    return s;
}

std::int64_t GSSeries::relation_count(int depth) const
{
    auto it = relations_.find(depth);
    return it == relations_.end() ? 0 : it->second;
}

std::int64_t GSSeries::total_relations() const
{
    std::int64_t total = 0;
    for (const auto &[depth, count] : relations_) {
        total += count;
    }
    return total;
}

void GSSeries::add_relations(int depth, std::int64_t count)
{
    if (depth < 2) {
        throw DepthError("relation depth must be >= 2, got " + std::to_string(depth));
    }
    if (count < 0) {
        throw PreconditionError("relation count must be nonnegative");
    }
    if (count == 0) {
        return;
    }
    relations_[depth] += count;
}

void GSSeries::add_tail(const Tail &tail)
{
    if (tail.start < 2) {
        throw DepthError("tail must start at degree >= 2, got " + std::to_string(tail.start));
    }
    if (tail.ratio < 0) {
        throw PreconditionError("tail ratio must be nonnegative");
    }
    if (tail.coeff <= 0) {
        throw PreconditionError("tail coefficient must be positive");
    }
    tails_.push_back(tail);
}

bool GSSeries::is_quadratic() const
{
    if (!tails_.empty()) {
        return false;
    }
    for (const auto &[depth, count] : relations_) {
        if (depth != 2 && count != 0) {
            return false;
        }
    }
    return true;
}

std::string to_string(const GSSeries &s)
{
    std::ostringstream os;
    os << "1";
    auto term = [&os](const std::string &coeff, int degree) {
        os << " + ";
        if (coeff != "1") {
            os << coeff;
        }
        os << "t";
        if (degree != 1) {
            os << "^" << degree;
        }
    };
    if (s.generators() != 0) {
        os << " - ";
        if (s.generators() != 1) {
            os << s.generators();
        }
        os << "t";
    }
    for (const auto &[depth, count] : s.relations()) {
        term(std::to_string(count), depth);
    }
    for (const auto &tail : s.tails()) {
        os << " + (" << tail.coeff.get_str() << ")t^" << tail.start << "/(1 - (" << tail.ratio.get_str() << ")t)";
    }
    return os.str();
}

std::string to_string(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::Cuttable:
        return "CUTTABLE";
    case VerdictKind::BoundaryInfinite:
        return "BOUNDARY_INFINITE";
    case VerdictKind::Inconclusive:
        return "INCONCLUSIVE";
    }
    return "?";
}

std::string to_string(const Verdict &v)
{
    std::string out = to_string(v.kind);
    if (v.t0) {
        out += " at t0=" + to_string(*v.t0);
    }
    if (v.kind == VerdictKind::Cuttable && v.value) {
        out += " value=" + to_string(*v.value);
    }
    if (v.provably_positive) {
        out += " (PROVABLY_POSITIVE)";
    }
    return out;
}

namespace
{

void require_unit_interval(const Rational &t)
{
    if (t <= 0 || t >= 1) {
        throw DomainError("evaluation point must lie in ]0,1[, got " + to_string(t));
    }
}

bool tails_evaluable(const GSSeries &s, const Rational &t)
{
    for (const auto &tail : s.tails()) {
        if (tail.ratio * t >= 1) {
            return false;
        }
    }
    return true;
}

// Exact positivity of 1 - d t + r t^2 on ]0,1[.
bool quadratic_positive(int d, std::int64_t r)
{
    if (d == 0) {
        return true;
    }
    if (r == 0) {
        return d <= 1;
    }
    Integer disc = Integer(d) * d - Integer(4) * r;
    if (disc < 0) {
        return true;
    }
    // Vertex d/2r at or beyond 1: decreasing on ]0,1[, infimum is P(1).
    if (d >= 2 * r) {
        return 1 - Integer(d) + Integer(r) >= 0;
    }
    return false;
}

} // namespace

Rational eval(const GSSeries &s, const Rational &t)
{
    require_unit_interval(t);
    for (const auto &tail : s.tails()) {
        if (tail.ratio * t >= 1) {
            throw DomainError("tail ratio " + to_string(tail.ratio) + " times t=" + to_string(t)
                              + " is >= 1; the tail diverges there");
        }
    }
    Rational value = 1 - Rational(s.generators()) * t;
    for (const auto &[depth, count] : s.relations()) {
        value += Rational(Integer(count)) * pow(t, depth);
    }
    for (const auto &tail : s.tails()) {
        value += tail.coeff * pow(t, tail.start) / (1 - tail.ratio * t);
    }
    return value;
}

Verdict find_witness(const GSSeries &s, int max_depth)
{
    std::optional<Rational> boundary;

    auto probe = [&](const Rational &t) -> std::optional<Verdict> {
        if (!tails_evaluable(s, t)) {
            return std::nullopt;
        }
        Rational v = eval(s, t);
        if (v < 0) {
            return Verdict{VerdictKind::Cuttable, t, v, false};
        }
        if (v == 0 && !boundary) {
            boundary = t;
        }
        return std::nullopt;
    };

    std::int64_t r_total = s.total_relations();
    if (r_total > 0 && s.generators() > 0) {
        Rational t(Integer(s.generators()), Integer(2 * r_total));
        t.canonicalize();
        if (t > 0 && t < 1) {
            if (auto v = probe(t)) {
                return *v;
            }
        }
    }

    for (int n = 1; n <= max_depth; ++n) {
        Integer denom = Integer(1) << n;
        for (Integer j = 1; j < denom; j += 2) {
            Rational t(j, denom);
            if (auto v = probe(t)) {
                return *v;
            }
        }
    }

    if (boundary) {
        return Verdict{VerdictKind::BoundaryInfinite, boundary, Rational(0), false};
    }
    Verdict v;
    v.provably_positive = s.is_quadratic() && quadratic_positive(s.generators(), s.relation_count(2));
    return v;
}

GSSeries cut(const GSSeries &s, int depth, std::int64_t count)
{
    if (depth < 2) {
        throw DepthError("cutting by elements of depth " + std::to_string(depth)
                         + " would change the generator rank; depth must be >= 2");
    }
    GSSeries out = s;
    out.add_relations(depth, count);
    return out;
}

GSSeries cut_tail(const GSSeries &s, int k_start, const Rational &ratio, const Rational &coeff)
{
    GSSeries out = s;
    out.add_tail(Tail{coeff, k_start, ratio});
    return out;
}

int min_single_cut_depth(int d, std::int64_t r)
{
    if (d <= 0 || r <= 0) {
        throw PreconditionError("need d > 0 and r > 0");
    }
    if (Integer(2) * r <= d) {
        throw PreconditionError("need 2r > d so that d/2r lies in ]0,1[");
    }
    if (Integer(4) * r >= Integer(d) * d) {
        throw PreconditionError("need r < d^2/4 (strict margin at t0 = d/2r)");
    }
    Rational t(Integer(d), Integer(2 * r));
    t.canonicalize();
    Rational margin = Rational(Integer(d) * d, Integer(4 * r)) - 1;
    margin.canonicalize();

    int k = 2;
    Rational power = t * t;
    while (!(power < margin)) {
        if (++k > kIterationCap) {
            throw ResourceError("k0 iteration exceeded cap");
        }
        power *= t;
    }
    return k;
}

std::int64_t tail_lambda(int d, std::int64_t r)
{
    if (d <= 0) {
        throw PreconditionError("need d > 0");
    }
    Rational a(Integer(2 * r), Integer(d));
    a.canonicalize();
    if (a <= 1) {
        throw PreconditionError("need a = 2r/d > 1");
    }
    Integer lam = is_integer(a) ? Integer(a.get_num() - 1) : floor(a);
    return lam.get_si();
}

LambdaM lambda_m(int d, std::int64_t r)
{
    std::int64_t lam = tail_lambda(d, r);
    if (Integer(4) * r >= Integer(d) * d) {
        throw PreconditionError("need r < d^2/4");
    }
    Rational a(Integer(2 * r), Integer(d));
    a.canonicalize();
    Rational x = Rational(Integer(lam)) / a;
    Rational margin = Rational(Integer(d) * d, Integer(4 * r)) - 1; // > 0
    margin.canonicalize();
    Rational scale = 1 / (1 - x);

    int m = 2;
    Rational power = x * x;
    while (!(power * scale < margin)) {
        if (++m > kIterationCap) {
            throw ResourceError("m iteration exceeded cap");
        }
        power *= x;
    }
    return LambdaM{a, lam, m};
}

GSSeries cut_lambda_tail(const GSSeries &s, const LambdaM &params)
{
    Rational lam{Integer(params.lambda)};
    return cut_tail(s, params.m, lam, pow(lam, params.m));
}

FrobeniusSchedule::FrobeniusSchedule(const GSSeries &s, Rational t0, Rational budget_fraction)
    : t0_(std::move(t0))
{
    if (budget_fraction <= 0 || budget_fraction >= 1) {
        throw PreconditionError("budget fraction must lie in ]0,1[");
    }
    Rational value = eval(s, t0_);
    if (value >= 0) {
        throw PreconditionError("series is not negative at t0=" + to_string(t0_));
    }
    delta_ = -value;
    remaining_ = budget_fraction * delta_;
    spent_ = 0;
    power_ = t0_ * t0_;
}

int FrobeniusSchedule::next()
{
    Rational allowance = (1 - t0_) * remaining_;
    int steps = 0;
    while (power_ > allowance) {
        if (++steps > kIterationCap) {
            throw ResourceError("schedule iteration exceeded cap");
        }
        power_ *= t0_;
        ++depth_;
    }
    remaining_ -= power_;
    spent_ += power_;
    return depth_;
}

std::vector<int> frobenius_schedule(const GSSeries &s, const Rational &t0, const Rational &budget_fraction,
                                    std::size_t length)
{
    FrobeniusSchedule schedule(s, t0, budget_fraction);
    std::vector<int> depths;
    depths.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        depths.push_back(schedule.next());
    }
    return depths;
}

} // namespace gstower
