#include "oracles.hpp"

#include <enhorder/majorize.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace enhorder;

TEST(Majorized, Examples)
{
    EXPECT_TRUE(is_majorized(RealVector{1, 1, 2}, RealVector{0, 1, 3}));
    EXPECT_TRUE(is_majorized(RealVector{2, 2}, RealVector{2, 2}));
    EXPECT_FALSE(is_majorized(RealVector{0, 1, 3}, RealVector{1, 1, 2}));
    EXPECT_FALSE(is_majorized(RealVector{1, 1, 2}, RealVector{0, 1, 4})); // totals differ
}

TEST(WeakSub, Examples)
{
    EXPECT_TRUE(is_weak_submajorized(RealVector{2, 4}, RealVector{3, 4}));
    EXPECT_FALSE(is_weak_submajorized(RealVector{3, 4}, RealVector{2, 4}));
}

TEST(WeakSuper, Examples)
{
    EXPECT_TRUE(is_weak_supermajorized(RealVector{1, 1.5}, RealVector{0.5, 1.5}));
    EXPECT_FALSE(is_weak_supermajorized(RealVector{0.5, 1.5}, RealVector{1, 1.5}));
}

TEST(WeakSuper, ComponentwiseLargerImpliesWeakSuper)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.1, 5.0), bump(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        RealVector y(2 + k % 5), x;
        for (auto& v : y)
            v = u(rng);
        for (double v : y)
            x.push_back(v + bump(rng));
        std::shuffle(x.begin(), x.end(), rng);
        EXPECT_TRUE(is_weak_supermajorized(x, y));
        EXPECT_TRUE(oracle::weak_super(x, y));
    }
}

TEST(Predicates, RejectBadInput)
{
    EXPECT_THROW(is_majorized(RealVector{1, 2}, RealVector{1}), std::invalid_argument);
    EXPECT_THROW(is_majorized(RealVector{}, RealVector{}), std::invalid_argument);
    EXPECT_THROW(is_weak_supermajorized(RealVector{1, std::nan("")}, RealVector{1, 1}), std::invalid_argument);
}

TEST(RandomPair, ConstructionGuarantees)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 2 + seed % 6;
        const auto [xm, ym] = random_comparable_pair(n, MajorizationRelation::Majorized, seed);
        EXPECT_TRUE(is_majorized(xm, ym));
        // hierarchy: majorization implies both weak relations
        EXPECT_TRUE(is_weak_submajorized(xm, ym));
        EXPECT_TRUE(is_weak_supermajorized(xm, ym));

        const auto [xs, ys] = random_comparable_pair(n, MajorizationRelation::WeakSuper, seed);
        EXPECT_TRUE(is_weak_supermajorized(xs, ys));
        EXPECT_TRUE(oracle::weak_super(xs, ys));

        const auto [xb, yb] = random_comparable_pair(n, MajorizationRelation::WeakSub, seed);
        EXPECT_TRUE(is_weak_submajorized(xb, yb));

        for (const auto* v : {&xm, &ym, &xs, &ys, &xb, &yb})
            for (double e : *v) {
                EXPECT_GE(e, 0.1);
                EXPECT_LE(e, 5.0);
            }
    }
}

TEST(RandomPair, Deterministic)
{
    const auto a = random_comparable_pair(5, MajorizationRelation::WeakSuper, 42);
    const auto b = random_comparable_pair(5, MajorizationRelation::WeakSuper, 42);
    EXPECT_EQ(a, b);
    const auto c = random_comparable_pair(5, MajorizationRelation::WeakSuper, 43);
    EXPECT_NE(a, c);
}

TEST(Predicates, PermutationInvariantAndReflexive)
{
    std::mt19937_64 rng(9);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto [x, y] = random_comparable_pair(4, MajorizationRelation::Majorized, seed);
        const bool m = is_majorized(x, y), sub = is_weak_submajorized(x, y), sup = is_weak_supermajorized(x, y);
        std::shuffle(x.begin(), x.end(), rng);
        std::shuffle(y.begin(), y.end(), rng);
        EXPECT_EQ(is_majorized(x, y), m);
        EXPECT_EQ(is_weak_submajorized(x, y), sub);
        EXPECT_EQ(is_weak_supermajorized(x, y), sup);
        EXPECT_TRUE(is_majorized(x, x));
    }
}
