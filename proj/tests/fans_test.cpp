#include <gtest/gtest.h>

#include <random>
#include <set>

#include "polymatroid/fans.hpp"
#include "test_support.hpp"

using namespace polymatroid;
namespace ts = testing_support;

namespace {

/// Membership in a simplicial cone by solving for ray coordinates.
bool in_cone_by_elimination(const WeightedFan& fan, const ConeLabel& c, const RationalPoint& x) {
    const auto rays = fan.rays(c);
    const std::size_t n = x.size();
    Matrix<Rational> a(n, std::vector<Rational>(rays.size() + 1, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < rays.size(); ++k) a[j][k] = rays[k][j];
        a[j][rays.size()] = x[j];
    }
    const auto pivots = rref(a);
    if (!pivots.empty() && pivots.back() == rays.size()) return false;  // inconsistent
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (a[i][rays.size()] < 0) return false;
    return true;
}

/// Matroid augmented Bergman fan: I independent, chain of proper flats, I ⊆ F_1.
std::set<ConeLabel> matroid_fan_oracle(const Polymatroid& m) {
    std::vector<Subset> proper;
    for (Subset f : flats(m).flats)
        if (f != m.ground().full()) proper.push_back(f);
    std::set<ConeLabel> out;
    for (const auto& chain : detail::chains_from(proper))
        for (Subset i = 0; i <= m.ground().full(); ++i) {
            if (m.rank(i) != cardinality(i)) continue;
            const Subset first = chain.empty() ? m.ground().full() : chain.front();
            if (is_subset(i, first)) out.insert(ConeLabel{i, chain});
        }
    return out;
}

std::set<ConeLabel> labels(const WeightedFan& fan) {
    std::set<ConeLabel> out;
    for (const auto& [c, w] : fan.cones()) out.insert(c);
    return out;
}

}  // namespace

TEST(Polystell, TypeOne) {
    const auto fan = polystell_fan(GroundMap({1}));
    EXPECT_EQ(fan.size(), 3u);
    EXPECT_EQ(f_polynomial(fan), (FPoly{1, 2}));
    EXPECT_TRUE(fan.is_pure());
    EXPECT_TRUE(is_balanced(fan).balanced);
}

TEST(Polystell, PureBalancedFullDimensional) {
    for (const auto& type : {std::vector<int>{2}, std::vector<int>{1, 1}, std::vector<int>{2, 1}, std::vector<int>{1, 1, 1}}) {
        const GroundMap pi(type);
        const auto fan = polystell_fan(pi);
        EXPECT_EQ(fan.dim(), pi.n());
        EXPECT_TRUE(fan.is_pure());
        EXPECT_TRUE(is_balanced(fan).balanced);
        EXPECT_EQ(polystell_fan(pi, 1).dim(), 1);
    }
}

TEST(Polypermutohedral, TypeOneOne) {
    const auto star = polypermutohedral_fan(GroundMap({1, 1}));
    EXPECT_TRUE(star.quotient());
    EXPECT_EQ(f_polynomial(star), (FPoly{1, 2}));
    EXPECT_TRUE(is_balanced(star).balanced);
}

TEST(Hpoly, IdentityHolds) {
    for (const auto& type : {std::vector<int>{1}, std::vector<int>{3}, std::vector<int>{1, 1}, std::vector<int>{2, 1},
                             std::vector<int>{1, 2}, std::vector<int>{1, 1, 1}})
        EXPECT_TRUE(hpoly_identity_check(GroundMap(type)));
}

TEST(AugBergman, MatroidSpecialization) {
    for (const auto& type : {std::vector<int>{1, 1}, std::vector<int>{1, 1, 1}, std::vector<int>{1, 1, 1, 1}})
        for (const auto& m : ts::brute_force_tables(GroundData(type)))
            EXPECT_EQ(labels(aug_bergman_fan(m)), matroid_fan_oracle(m));
}

TEST(AugBergman, BooleanIsPolystell) {
    for (const auto& type : {std::vector<int>{2}, std::vector<int>{2, 1}, std::vector<int>{2, 2}, std::vector<int>{1, 2, 1}}) {
        const GroundMap pi(type);
        EXPECT_EQ(labels(aug_bergman_fan(make_boolean(pi.base()), pi)), labels(polystell_fan(pi)));
    }
}

TEST(AugBergman, ZeroIsOrigin) {
    const GroundMap pi({2, 1});
    const auto fan = aug_bergman_fan(make_zero(pi.base()), pi);
    EXPECT_EQ(fan.size(), 1u);
    EXPECT_EQ(fan.dim(), 0);
}

TEST(AugBergman, PureBalancedSubfan) {
    for (const auto& type : {std::vector<int>{2, 1}, std::vector<int>{2, 2}, std::vector<int>{2, 1, 1}}) {
        const GroundMap pi(type);
        const auto polystell = polystell_fan(pi);
        for (const auto& p : ts::random_tables(pi.base(), 25, 7)) {
            const auto fan = aug_bergman_fan(p, pi);
            EXPECT_EQ(fan.dim(), p.rank());
            EXPECT_TRUE(fan.is_pure());
            EXPECT_TRUE(is_balanced(fan).balanced);
            for (const auto& [c, w] : fan.cones()) EXPECT_TRUE(polystell.contains(c));
            if (is_loopless(p)) EXPECT_TRUE(is_balanced(star_empty(fan, p)).balanced);
        }
    }
}

TEST(AugBergman, DroppingATopConeBreaksBalancing) {
    const GroundMap pi({2, 1});
    auto fan = aug_bergman_fan(validate({0, 2, 1, 2}, pi.base()), pi);
    ASSERT_TRUE(fan.erase(fan.maximal_cones().front()));
    EXPECT_FALSE(is_balanced(fan).balanced);
    EXPECT_TRUE(is_balanced(fan).witness.has_value());
}

TEST(AugBergman, StarNeedsLoopless) {
    const GroundMap pi({2, 1});
    const auto p = validate({0, 0, 1, 1}, pi.base());
    try {
        star_empty(aug_bergman_fan(p, pi), p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::LoopyPolymatroid);
    }
}

TEST(AugBergman, NonPureBalancingThrows) {
    WeightedFan fan(GroundMap({1, 1}), false);
    fan.insert(ConeLabel{0b11, {}});
    fan.insert(ConeLabel{0, {0}});
    try {
        is_balanced(fan);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonPureFan);
    }
}

TEST(ConeContains, MatchesElimination) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(-6, 6);
    for (const auto& type : {std::vector<int>{2, 1}, std::vector<int>{1, 1, 1}}) {
        const auto fan = polystell_fan(GroundMap(type));
        for (const auto& [c, w] : fan.cones()) {
            for (int t = 0; t < 20; ++t) {
                RationalPoint x;
                for (int j = 0; j < fan.ground_map().n(); ++j) x.emplace_back(coord(rng), 2);
                ASSERT_EQ(cone_contains(fan, c, x), in_cone_by_elimination(fan, c, x));
            }
            RationalPoint inside(static_cast<std::size_t>(fan.ground_map().n()), Rational(0));
            for (const auto& r : fan.rays(c)) {
                const int coeff = 1 + static_cast<int>(rng() % 3);
                for (std::size_t j = 0; j < inside.size(); ++j) inside[j] += r[j] * coeff;
            }
            ASSERT_TRUE(in_cone_by_elimination(fan, c, inside));
            EXPECT_TRUE(cone_contains(fan, c, inside));
        }
    }
}

TEST(Support, PolystellCoversEverything) {
    const GroundMap pi({2, 1});
    const auto fan = polystell_fan(pi);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        RationalPoint x;
        for (int j = 0; j < pi.n(); ++j) x.emplace_back(static_cast<int>(rng() % 13) - 6, 1 + static_cast<int>(rng() % 3));
        EXPECT_TRUE(support_contains(fan, x));
    }
}

TEST(Support, LiftAgreesAndDistinctFansDiffer) {
    const GroundMap pi({2, 1, 1});
    for (const auto& p : ts::random_tables(pi.base(), 10, 3)) EXPECT_TRUE(support_equality_sample(p, pi, 60, 1));
    const auto report = support_sample_report(aug_bergman_fan(make_zero(pi.base()), pi),
                                              aug_bergman_fan(make_boolean(pi.base()), pi), 60, 1);
    EXPECT_FALSE(report.agree);
    ASSERT_TRUE(report.witness.has_value());
    EXPECT_THROW(support_sample_report(polystell_fan(pi), polystell_fan(GroundMap({1})), 5, 1), Error);
}
