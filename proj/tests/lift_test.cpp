#include <gtest/gtest.h>

#include "polymatroid/lift.hpp"
#include "test_support.hpp"

using namespace polymatroid;
namespace ts = testing_support;

namespace {

const std::vector<std::vector<int>> kTypes = {{2, 1}, {2, 2}, {2, 1, 1}, {3, 1}, {0, 2, 1}};

/// Largest I ⊆ S whose projection is an independence point of P.
int lift_rank_oracle(const Polymatroid& p, const GroundMap& pi, Subset s) {
    int best = 0;
    for (Subset i = s;; i = (i - 1) & s) {
        LatticePoint x(static_cast<std::size_t>(pi.n()), 0);
        for (int j : elements_of(i)) x[static_cast<std::size_t>(j)] = 1;
        if (ts::in_independence(p, pi.project(x))) best = std::max(best, cardinality(i));
        if (i == 0) break;
    }
    return best;
}

}  // namespace

TEST(GroundMap, Fibers) {
    const GroundMap pi({2, 1});
    EXPECT_EQ(pi.n(), 3);
    EXPECT_EQ(pi.fiber(0), 0b011u);
    EXPECT_EQ(pi.fiber(1), 0b100u);
    EXPECT_EQ(pi(0), 0);
    EXPECT_EQ(pi(2), 1);
    EXPECT_EQ(pi.preimage(0b10), 0b100u);
    EXPECT_EQ(pi.image(0b101), 0b11u);
    EXPECT_EQ(pi.project({1, 1, 1}), (std::vector<int>{2, 1}));
    const GroundMap with_zero({0, 2});
    EXPECT_EQ(with_zero.fiber(0), 0u);
    EXPECT_EQ(with_zero.preimage(0b11), 0b11u);
}

TEST(Expand, RankIsComposition) {
    const GroundData g({2, 1});
    const auto p = validate({0, 2, 1, 2}, g);
    const GroundMap pi(g.type());
    const auto e = expand(p, pi);
    EXPECT_EQ(e.ground().type(), (std::vector<int>{2, 2, 1}));
    for (Subset s = 0; s <= full_set(3); ++s) EXPECT_EQ(e.rank(s), p.rank(pi.image(s)));
    EXPECT_THROW(expand(p, GroundMap({1, 1})), Error);
}

TEST(MsymLift, MatchesIndependenceOracle) {
    for (const auto& type : kTypes) {
        const GroundMap pi(type);
        for (const auto& p : ts::brute_force_tables(pi.base())) {
            const auto lift = msym_lift(p, pi);
            ASSERT_TRUE(lift.is_matroid());
            EXPECT_EQ(lift.rank(), p.rank());
            for (Subset s = 0; s <= full_set(pi.n()); ++s) ASSERT_EQ(lift.rank(s), lift_rank_oracle(p, pi, s));
        }
    }
}

TEST(MsymLift, DualityRecoveryAndSymmetry) {
    for (const auto& type : kTypes) {
        const GroundMap pi(type);
        for (const auto& p : ts::brute_force_tables(pi.base())) {
            const auto lift = msym_lift(p, pi);
            EXPECT_EQ(msym_lift(dual(p), pi), dual(lift));
            for (Subset s = 0; s <= pi.base().full(); ++s) EXPECT_EQ(lift.rank(pi.preimage(s)), p.rank(s));
            // rank depends only on how many elements of each fiber are chosen
            for (Subset s = 0; s <= full_set(pi.n()); ++s)
                for (Subset t = 0; t <= full_set(pi.n()); ++t) {
                    bool same = true;
                    for (int i = 0; i < pi.m(); ++i)
                        same = same && cardinality(s & pi.fiber(i)) == cardinality(t & pi.fiber(i));
                    if (same) ASSERT_EQ(lift.rank(s), lift.rank(t));
                }
        }
    }
}

TEST(MsymLift, UnitTypeIsIdentity) {
    const GroundMap pi({1, 1, 1});
    for (const auto& p : ts::brute_force_tables(pi.base())) EXPECT_EQ(msym_lift(p, pi), p);
}

TEST(GeometricFlat, LargestPreimageInsideFlat) {
    for (const auto& type : kTypes) {
        const GroundMap pi(type);
        for (const auto& p : ts::brute_force_tables(pi.base())) {
            const auto lift = msym_lift(p, pi);
            for (Subset f = 0; f <= full_set(pi.n()); ++f) {
                if (!is_flat(lift, f)) {
                    try {
                        max_geometric_flat(lift, pi, f);
                        FAIL() << "non-flat accepted";
                    } catch (const Error& e) {
                        EXPECT_EQ(e.kind(), ErrorKind::NotAFlat);
                    }
                    continue;
                }
                const Subset g = max_geometric_flat(lift, pi, f);
                EXPECT_TRUE(is_subset(g, f));
                EXPECT_TRUE(is_flat(lift, g));
                EXPECT_EQ(pi.preimage(pi.image(g)), g);
                for (Subset a = 0; a <= pi.base().full(); ++a) {
                    const Subset pre = pi.preimage(a);
                    if (is_subset(pre, f) && is_flat(lift, pre)) EXPECT_TRUE(is_subset(pre, g));
                }
            }
        }
    }
}

TEST(GeometricFlat, P0Witness) {
    const GroundMap pi({2, 1});
    const auto lift = msym_lift(validate({0, 2, 1, 2}, pi.base()), pi);
    EXPECT_FALSE(is_flat(lift, 0b011));
    EXPECT_EQ(max_geometric_flat(lift, pi, 0b111), 0b111u);
    EXPECT_EQ(max_geometric_flat(lift, pi, 0b100), 0b100u);
    EXPECT_EQ(max_geometric_flat(lift, pi, 0), 0u);
}
