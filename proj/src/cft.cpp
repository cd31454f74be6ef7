#include <gstower/cft.hpp>

#include <gstower/errors.hpp>

namespace gstower
{

bool RankProfile::has_wild() const
{
    return wild_count() > 0;
}

int RankProfile::tame_count() const
{
    int n = 0;
    for (const auto &v : S) {
        n += v.tame ? 1 : 0;
    }
    return n;
}

int RankProfile::wild_count() const
{
    return static_cast<int>(S.size()) - tame_count();
}

void validate(const RankProfile &rp)
{
    auto flag = [](int v, const char *what) {
        if (v != 0 && v != 1) {
            throw PreconditionError(std::string(what) + " must be 0 or 1");
        }
    };
    if (rp.p < 2) {
        throw PreconditionError("p must be a prime");
    }
    if (rp.r1 < 0 || rp.r2 < 0 || rp.B_S_rank < 0) {
        throw PreconditionError("ranks and signature must be nonnegative");
    }
    if (rp.measured_d && *rp.measured_d < 0) {
        throw PreconditionError("measured rank must be nonnegative");
    }
    flag(rp.delta_K, "delta_K");
    if (rp.p == 2 && rp.delta_K != 1) {
        throw PreconditionError("delta_K = 1 always holds for p = 2");
    }
    for (const auto &v : rp.S) {
        flag(v.delta_v, "delta_v");
        if (!v.tame && v.local_degree < 1) {
            throw PreconditionError("wild place needs a positive local degree");
        }
        if (rp.p == 2 && v.delta_v != 1) {
            throw PreconditionError("delta_v = 1 always holds for p = 2");
        }
    }
}

namespace
{

int formula_without_b(const RankProfile &rp)
{
    int local = 0;
    int deltas = 0;
    for (const auto &v : rp.S) {
        if (!v.tame) {
            local += v.local_degree;
        }
        deltas += v.delta_v;
    }
    return local - rp.delta_K + deltas - (rp.r1 + rp.r2) + 1;
}

} // namespace

int h1_rank(const RankProfile &rp)
{
    validate(rp);
    int d = formula_without_b(rp) + rp.B_S_rank;
    if (rp.measured_d && *rp.measured_d != d) {
        throw ConsistencyError("rank formula gives d = " + std::to_string(d) + " but measured d = "
                               + std::to_string(*rp.measured_d));
    }
    return d;
}

int b_rank_from_measured(const RankProfile &rp, int measured_d)
{
    validate(rp);
    int b = measured_d - formula_without_b(rp);
    if (b < 0) {
        throw ConsistencyError("measured d = " + std::to_string(measured_d) + " would force a negative B_S rank");
    }
    return b;
}

int r_upper_bound(const RankProfile &rp)
{
    validate(rp);
    if (rp.S.empty()) {
        return rp.B_S_rank;
    }
    if (rp.tame_count() == 0) {
        throw BranchError("S consists of wild places only; use wild_relation_count");
    }
    return rp.B_S_rank + static_cast<int>(rp.S.size()) - rp.delta_K;
}

int wild_relation_count(int d, int r2)
{
    if (r2 < 0 || d < r2 + 1) {
        throw PreconditionError("need d >= r2 + 1");
    }
    return d - r2 - 1;
}

bool alpha_test(int d, int r1, int r2, bool S_empty, int delta_K)
{
    if (d < 0 || r1 < 0 || r2 < 0 || delta_K < 0) {
        throw PreconditionError("alpha test inputs must be nonnegative");
    }
    long theta = S_empty ? delta_K : 0;
    if (d <= 2) {
        return false;
    }
    long gap = d - 2;
    return gap * gap > 4 * (static_cast<long>(r1) + r2 + theta);
}

} // namespace gstower
