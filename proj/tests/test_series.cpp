#include <doctest.h>

#include <gstower/errors.hpp>
#include <gstower/json_io.hpp>
#include <gstower/series.hpp>

#include "oracles.hpp"

#include <random>

using namespace gstower;

namespace
{

GSSeries series(int d, std::initializer_list<std::pair<int, std::int64_t>> relations)
{
    GSSeries s(d);
    for (auto [depth, count] : relations) {
        s.add_relations(depth, count);
    }
    return s;
}

std::vector<mpq_class> dense(const GSSeries &s)
{
    int top = 1;
    for (const auto &[depth, count] : s.relations()) {
        top = std::max(top, depth);
    }
    std::vector<mpq_class> c(top + 1, 0);
    c[0] = 1;
    c[1] = -s.generators();
    for (const auto &[depth, count] : s.relations()) {
        c[depth] += count;
    }
    return c;
}

} // namespace

TEST_CASE("evaluation matches Horner on random polynomials")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d_dist(0, 30), depth_dist(2, 9), count_dist(0, 40), den_dist(2, 97);
    for (int trial = 0; trial < 500; ++trial) {
        GSSeries s(d_dist(rng));
        for (int i = 0; i < 4; ++i) {
            s.add_relations(depth_dist(rng), count_dist(rng));
        }
        int den = den_dist(rng);
        std::uniform_int_distribution<int> num_dist(1, den - 1);
        mpq_class t(num_dist(rng), den);
        t.canonicalize();
        CHECK(eval(s, t) == oracle::horner(dense(s), t));
    }
}

TEST_CASE("boundary series vanishes at d/2r")
{
    GSSeries boundary = GSSeries::quadratic(8, 16);
    CHECK(eval(boundary, Rational(1, 4)) == 0);
    Verdict v = find_witness(boundary);
    CHECK(v.kind == VerdictKind::BoundaryInfinite);
    CHECK(*v.t0 == Rational(1, 4));
    CHECK(to_string(v) == "BOUNDARY_INFINITE at t0=1/4");
}

TEST_CASE("evaluation domain")
{
    GSSeries s = GSSeries::quadratic(5, 6);
    CHECK_THROWS_AS(eval(s, Rational(0)), DomainError);
    CHECK_THROWS_AS(eval(s, Rational(1)), DomainError);
    CHECK_THROWS_AS(eval(s, Rational(3, 2)), DomainError);
    GSSeries tailed = cut_tail(s, 3, Rational(4));
    CHECK_THROWS_AS(eval(tailed, Rational(1, 4)), DomainError);
    CHECK_NOTHROW(eval(tailed, Rational(1, 5)));
}

TEST_CASE("tails evaluate as geometric sums")
{
    GSSeries s = cut_tail(GSSeries::quadratic(3, 2), 4, Rational(2), Rational(5));
    Rational t(1, 7);
    Rational expected = oracle::horner({1, -3, 2}, t) + 5 * pow(t, 4) / (1 - 2 * t);
    CHECK(eval(s, t) == expected);
}

TEST_CASE("witness suite")
{
    struct Case {
        GSSeries s;
        const char *printed;
    };
    std::vector<Case> cases = {
        {series(5, {{2, 6}, {4, 1}}), "1 - 5t + 6t^2 + t^4"},
        {series(7, {{2, 12}}), "1 - 7t + 12t^2"},
        {series(7, {{2, 12}, {4, 1}}), "1 - 7t + 12t^2 + t^4"},
        {series(9, {{2, 20}}), "1 - 9t + 20t^2"},
        {series(9, {{2, 20}, {4, 1}}), "1 - 9t + 20t^2 + t^4"},
        {series(5, {{2, 4}, {3, 4}, {4, 1}}), "1 - 5t + 4t^2 + 4t^3 + t^4"},
        {series(18, {{2, 80}, {4, 3}}), "1 - 18t + 80t^2 + 3t^4"},
    };
    for (const auto &c : cases) {
        CAPTURE(c.printed);
        CHECK(to_string(c.s) == c.printed);
        Verdict v = find_witness(c.s);
        REQUIRE(v.kind == VerdictKind::Cuttable);
        CHECK(*v.value < 0);
        CHECK(eval(c.s, *v.t0) == *v.value);
        CHECK(oracle::horner(dense(c.s), *v.t0) == *v.value);
    }
}

TEST_CASE("canonical witness")
{
    Verdict v = find_witness(GSSeries::quadratic(7, 12));
    CHECK(to_string(v) == "CUTTABLE at t0=7/24 value=-1/48");
}

TEST_CASE("positive quadratics are proved positive")
{
    for (auto [d, r] : std::vector<std::pair<int, int>>{{9, 21}, {6, 12}, {4, 6}, {7, 13}}) {
        Verdict v = find_witness(GSSeries::quadratic(d, r));
        CHECK(v.kind == VerdictKind::Inconclusive);
        CHECK(v.provably_positive);
    }
    Verdict quartic = find_witness(series(9, {{2, 21}, {4, 1}}));
    CHECK(quartic.kind == VerdictKind::Inconclusive);
    CHECK_FALSE(quartic.provably_positive);
    CHECK(find_witness(GSSeries::quadratic(1, 0)).provably_positive);
    CHECK_FALSE(find_witness(GSSeries::quadratic(2, 0)).provably_positive);
}

TEST_CASE("cuts")
{
    GSSeries s = GSSeries::quadratic(7, 12);
    CHECK_THROWS_AS(cut(s, 1, 1), DepthError);
    CHECK_THROWS_AS(cut(s, 0, 1), DepthError);
    CHECK_THROWS_AS(cut(s, 4, -1), PreconditionError);
    GSSeries c = cut(cut(s, 4, 1), 4, 2);
    CHECK(c.relation_count(4) == 3);
    CHECK(c.total_relations() == 15);
    CHECK_FALSE(c.is_quadratic());
    CHECK(s.is_quadratic());
}

TEST_CASE("single cut depth against the brute force scan")
{
    CHECK(min_single_cut_depth(5, 6) == 4);
    CHECK(min_single_cut_depth(9, 20) == 3);
    for (int d = 1; d <= 12; ++d) {
        for (long r = 1; 4 * r < d * d; ++r) {
            if (2 * r <= d) {
                continue;
            }
            CAPTURE(d);
            CAPTURE(r);
            CHECK(min_single_cut_depth(d, r) == oracle::brute_k0(d, r));
        }
    }
    CHECK_THROWS_AS(min_single_cut_depth(8, 16), PreconditionError);
    CHECK_THROWS_AS(min_single_cut_depth(5, 2), PreconditionError);
}

TEST_CASE("lambda and m")
{
    LambdaM lm = lambda_m(9, 20);
    CHECK(lm.lambda == 4);
    CHECK(lm.m == 64);
    CHECK(lm.m == oracle::brute_m(9, 20, 4));
    CHECK(lm.a == Rational(40, 9));

    LambdaM lm2 = lambda_m(6, 8);
    CHECK(lm2.lambda == 2);
    CHECK(lm2.m == 13);

    CHECK(tail_lambda(6, 9) == 2);
    CHECK(tail_lambda(4, 4) == 1);
    CHECK_THROWS_AS(lambda_m(4, 4), PreconditionError);
    CHECK_THROWS_AS(tail_lambda(4, 2), PreconditionError);

    GSSeries tailed = cut_lambda_tail(GSSeries::quadratic(9, 20), lm);
    CHECK(eval(tailed, Rational(9, 40)) < 0);
    GSSeries early = cut_lambda_tail(GSSeries::quadratic(9, 20), LambdaM{lm.a, lm.lambda, lm.m - 1});
    CHECK(eval(early, Rational(9, 40)) >= 0);
}

TEST_CASE("frobenius schedule")
{
    GSSeries s = GSSeries::quadratic(7, 12);
    Rational t0(7, 24);
    std::vector<int> depths = frobenius_schedule(s, t0, Rational(1, 2), 20);
    REQUIRE(depths.size() == 20);
    CHECK(std::is_sorted(depths.begin(), depths.end()));
    CHECK(depths.front() >= 2);

    GSSeries cut_series = s;
    for (int k : depths) {
        cut_series = cut(cut_series, k, 1);
    }
    Rational delta = -eval(s, t0);
    CHECK(eval(cut_series, t0) <= -delta / 2);

    FrobeniusSchedule sched(s, t0);
    CHECK(sched.delta() == Rational(1, 48));
    sched.next();
    CHECK(sched.spent() + sched.remaining() == sched.delta() / 2);

    CHECK_THROWS_AS(FrobeniusSchedule(GSSeries::quadratic(8, 16), Rational(1, 4)), PreconditionError);
    CHECK_THROWS_AS(FrobeniusSchedule(s, t0, Rational(1)), PreconditionError);
}

TEST_CASE("series JSON round trip")
{
    GSSeries s = cut_tail(series(5, {{2, 4}, {3, 4}, {4, 1}}), 6, Rational(3, 2), Rational(1, 3));
    Json j = to_json(s);
    CHECK(j["d"] == 5);
    CHECK(j["tails"][0]["ratio"] == "3/2");
    CHECK(series_from_json(j) == s);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"relations": []})")), FixtureError);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"d": 3, "relations": [{"depth": 1, "count": 1}]})")),
                    DepthError);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"d": "x"})")), FixtureError);
}
