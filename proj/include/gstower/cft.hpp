#ifndef GSTOWER_CFT_HPP
#define GSTOWER_CFT_HPP

#include <optional>
#include <string>
#include <vector>

namespace gstower
{

// A place of S as seen by the rank formula.
struct RankPlace {
    std::string norm;      // label only, e.g. "9" or "43^2"
    int delta_v = 0;       // 1 iff mu_p lies in the completion K_v
    bool tame = true;
    int local_degree = 0;  // [K_v : Q_p], wild places only
};

// Measured p-rank data of G_S for a number field K. B_S_rank is always a
// measured input (d_p of the dual of V_S / K^{x p}); nothing here computes
// class groups.
struct RankProfile {
    int p = 2;
    int r1 = 0;
    int r2 = 0;
    int delta_K = 0;
    std::vector<RankPlace> S;
    int B_S_rank = 0;
    std::optional<int> measured_d;
    std::string provenance;

    bool has_wild() const;
    int tame_count() const;
    int wild_count() const;
};

// Throws PreconditionError on flags outside {0,1}, negative ranks, or
// p = 2 with delta_K = 0.
void validate(const RankProfile &rp);

// Generator rank from the Koch rank formula. Throws ConsistencyError when a
// measured rank is present and differs.
int h1_rank(const RankProfile &rp);

// Inverts the rank formula for B_S given a measured d.
int b_rank_from_measured(const RankProfile &rp, int measured_d);

// r(G_S) <= B_S                 when S is empty,
//          B_S + |S| - delta_K  otherwise.
// Throws BranchError when every place of a nonempty S is wild; use
// wild_relation_count there.
int r_upper_bound(const RankProfile &rp);

// r = d - r2 - 1 for S = S_p (cohomological dimension 2).
int wild_relation_count(int d, int r2);

// d > 2 + 2 sqrt(r1 + r2 + theta), theta = delta_K if S is empty else 0,
// decided in integers.
bool alpha_test(int d, int r1, int r2, bool S_empty, int delta_K);

} // namespace gstower

#endif
