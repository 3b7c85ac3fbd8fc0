#include <enhorder/verify.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace enhorder;

namespace
{

const ProbGrid& grid()
{
    static const ProbGrid g;
    return g;
}

} // namespace

TEST(VerifyMaxStShape, Examples)
{
    const auto a = verify_max_st_shape({{0.5, 1.5}, {1, 1.5}, 1, 1});
    EXPECT_TRUE(a.passed());
    // weakly supermajorized but not componentwise
    const auto m = verify_max_st_shape({{0.5, 2}, {1, 1.5}, 1, 1});
    EXPECT_TRUE(m.passed());
    EXPECT_EQ(m.theorem, TheoremId::T3_2);

    const auto same = verify_max_st_shape({{0.7, 2.0, 1.1}, {0.7, 2.0, 1.1}, 1.3, 0.8});
    EXPECT_TRUE(same.passed());
    EXPECT_EQ(same.conclusion_verdict.worst_margin, 0.0);

    const auto cw = verify_max_st_shape({{0.5, 0.8}, {1, 1}, 1, 1});
    EXPECT_TRUE(cw.passed());
    EXPECT_EQ(cw.theorem, TheoremId::T3_3);
}

TEST(VerifyMaxStShape, FlagsBrokenHypothesis)
{
    // alpha* not below alpha in either sense
    const auto r = verify_max_st_shape({{1, 1.5}, {0.5, 1.5}, 1, 1});
    EXPECT_FALSE(r.hypotheses_ok);
    EXPECT_FALSE(r.passed());
}

TEST(VerifyMaxStScale, Examples)
{
    EXPECT_TRUE(verify_max_st_scale({{1, 3}, {2, 3}, 0.5, 1}).passed());
    const auto same = verify_max_st_scale({{1, 3}, {1, 3}, 0.5, 1});
    EXPECT_TRUE(same.passed());
    EXPECT_EQ(same.conclusion_verdict.worst_margin, 0.0);
    EXPECT_TRUE(verify_max_st_scale({{1, 2}, {2, 2}, 0.8, 1}).passed());
    EXPECT_FALSE(verify_max_st_scale({{1, 3}, {2, 3}, 1.5, 1}).hypotheses_ok);
}

TEST(VerifyMaxLr, Examples)
{
    const auto up = verify_max_lr({1, 1, {1, 2}, {0.5, 1}});
    EXPECT_TRUE(up.passed());
    EXPECT_TRUE(up.conclusion_verdict.holds);

    const auto eq = verify_max_lr({0.7, 2.0, {1, 2}, {2, 1}});
    EXPECT_TRUE(eq.passed());
    EXPECT_NEAR(eq.conclusion_verdict.worst_margin, 0.0, 1e-12);
    const auto eq_rev = evaluate(TheoremId::T3_5, MaxPowerParams{0.7, 2.0, {2, 1}, {1, 2}}, grid());
    EXPECT_TRUE(eq_rev.verdict.holds);

    // converse direction: lr must fail, and the harness treats that as agreement
    const auto down = evaluate(TheoremId::T3_5, MaxPowerParams{1, 1, {0.5, 1}, {1, 2}}, grid());
    EXPECT_FALSE(down.verdict.holds);
    EXPECT_GT(down.verdict.witness, 0.0);
    EXPECT_TRUE(verification_passes_lr(down));
    EXPECT_TRUE(verify_max_lr({1, 1, {0.5, 1}, {1, 2}}).passed());
}

TEST(VerifyMaxLr, IffOverRandomPairs)
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 2 + k % 4;
        RealVector b(n), bs(n);
        for (auto& v : b)
            v = u(rng);
        for (auto& v : bs)
            v = u(rng);
        const double diff = detail::vsum(b) - detail::vsum(bs);
        if (std::abs(diff) < 1e-3)
            continue;
        const auto t = evaluate(TheoremId::T3_5, MaxPowerParams{u(rng), u(rng), b, bs}, grid());
        EXPECT_EQ(t.verdict.holds, diff > 0) << "sum difference " << diff;
    }
}

TEST(VerifyMaxDisp, Examples)
{
    const auto a = evaluate(TheoremId::T3_6, MaxPowerParams{0.8, 1, {0.3, 0.3}, {0.2, 0.2}}, grid());
    EXPECT_TRUE(a.hypotheses_ok);
    EXPECT_TRUE(a.conclusion_ok);
    EXPECT_TRUE(detail::hazard_nonincreasing(detail::parallel_enh(RealVector{0.8, 0.8}, RealVector{1, 1},
                                                                  RealVector{0.3, 0.3}),
                                             grid())
                    .holds);
    EXPECT_TRUE(verify_max_disp({0.8, 1, {0.3, 0.3}, {0.2, 0.2}}).passed());

    const auto same = verify_max_disp({0.6, 2, {0.2, 0.3}, {0.3, 0.2}});
    EXPECT_TRUE(same.passed());
    EXPECT_NEAR(same.conclusion_verdict.worst_margin, 0.0, 1e-9);

    EXPECT_TRUE(verify_max_disp({0.5, 1, {0.4, 0.4}, {0.1, 0.2}}).passed());
    EXPECT_FALSE(verify_max_disp({1.2, 1, {0.4, 0.4}, {0.1, 0.2}}).hypotheses_ok);
    EXPECT_FALSE(verify_max_disp({0.5, 1, {0.6, 0.6}, {0.1, 0.2}}).hypotheses_ok);
}

TEST(VerifyMaxConvex, Examples)
{
    EXPECT_TRUE(verify_max_convex_transform({0.5, 1, 1, 1, {1, 1}, {0.5, 1.5}}).passed());
    const auto lin = verify_max_convex_transform({0.8, 0.8, 1.5, 0.5, {1, 2}, {2, 1}});
    EXPECT_TRUE(lin.passed());
    EXPECT_NEAR(lin.conclusion_verdict.worst_margin, 0.0, 1e-7);
    const auto c = verify_max_convex_transform({1, 2, 2, 1, {0.5, 1}, {1, 0.5}});
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(verify_instance(TheoremId::C_Lorenz, ConvexParams{1, 2, 2, 1, {0.5, 1}, {1, 0.5}}).passed());
    // unequal totals break the hypothesis
    EXPECT_FALSE(verify_max_convex_transform({1, 2, 2, 1, {0.5, 1}, {1, 1}}).hypotheses_ok);
}

TEST(VerifyMaxConvex, ShapeRatioBelowOneIsNotConvex)
{
    const auto t = evaluate(TheoremId::T3_7, ConvexParams{2, 1, 1, 1, {1}, {1}}, grid());
    EXPECT_FALSE(t.hypotheses_ok);
    EXPECT_FALSE(t.verdict.holds);
}

TEST(VerifyMinStCopula, Examples)
{
    const auto a = verify_min_st_copula(
        {{1, 3}, {2, 3}, 1, BaselineDist::exponential(), ArchGenerator::independence(), ArchGenerator::gumbel(2)});
    EXPECT_TRUE(a.hypotheses_ok);
    EXPECT_TRUE(a.passed());

    const auto g = ArchGenerator::clayton(1.5);
    const auto same = verify_min_st_copula({{0.4, 1.7}, {0.4, 1.7}, 2, BaselineDist::exponential(), g, g});
    EXPECT_TRUE(same.passed());
    EXPECT_EQ(same.conclusion_verdict.worst_margin, 0.0);

    const auto enh = verify_instance(TheoremId::C_ENH_copula,
                                     CopulaParams{{0.5, 2}, {1, 2}, 1, BaselineDist::nh(0.7), ArchGenerator::gumbel(1.2),
                                                  ArchGenerator::gumbel(2.4)});
    EXPECT_TRUE(enh.passed());
}

TEST(VerifyMinStCopula, RejectsNonSuperAdditivePair)
{
    const auto r = verify_min_st_copula(
        {{1, 3}, {2, 3}, 1, BaselineDist::exponential(), ArchGenerator::gumbel(2), ArchGenerator::independence()});
    EXPECT_FALSE(r.hypotheses_ok);
}

TEST(SchurCheck, Examples)
{
    const auto f = [](std::span<const double> a) { return max_cdf_in_alpha(a, 1.0, 1.0, 1.0); };
    EXPECT_TRUE(check_schur_concave_numeric(f, RealVector{0.5, 1.5}).holds);
    const auto sym = check_schur_concave_numeric(f, RealVector{1.2, 1.2, 1.2});
    EXPECT_TRUE(sym.holds);
    EXPECT_EQ(sym.worst_margin, 0.0);
    const auto sq = [](std::span<const double> x) {
        double s = 0;
        for (double v : x)
            s += v * v;
        return s;
    };
    const auto r = check_schur_concave_numeric(sq, RealVector{1, 2, 4});
    EXPECT_FALSE(r.holds);
    EXPECT_NE(r.witness.first, r.witness.second);
}

TEST(SchurCheck, CalibrationOnRandomVectors)
{
    const auto prod = [](std::span<const double> x) {
        double p = 1;
        for (double v : x)
            p *= v;
        return p;
    };
    const auto sq = [](std::span<const double> x) {
        double s = 0;
        for (double v : x)
            s += v * v;
        return s;
    };
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int k = 0; k < 50; ++k) {
        RealVector x(2 + k % 4);
        for (auto& v : x)
            v = u(rng);
        EXPECT_TRUE(check_schur_concave_numeric(prod, x).holds);
        EXPECT_FALSE(check_schur_concave_numeric(sq, x).holds);
    }
}

TEST(SchurCheck, MaxCdfSurrogate)
{
    TrialOptions opt;
    opt.trials = 50;
    opt.seed = 9;
    const auto r = verify_random(TheoremId::L2_1, opt);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.trials, 50u);
}

TEST(LemmaG, Values)
{
    // frozen from a 40-digit evaluation
    EXPECT_NEAR(lemma_g(2.0), 1.1639534137386528, 1e-15);
    EXPECT_NEAR(lemma_g(3.0), 0.46955292824899696, 1e-15);
    EXPECT_NEAR(lemma_g(25.0), 9.4378363610540354e-10, 1e-24);
    EXPECT_GT(lemma_g(25.0), 0.0);
    EXPECT_LT(lemma_g(25.0), 1e-6);
    EXPECT_THROW(lemma_g(1.0), std::domain_error);
}

TEST(LemmaG, DecreasingOnDenseGrid)
{
    const auto g = numeric::linspace(1.0 + 1e-6, 50.0, 10000);
    const auto r = check_lemma_g_decreasing(g);
    EXPECT_TRUE(r.holds);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_TRUE(verify_instance(TheoremId::L3_1, LemmaParams{}).passed());
    EXPECT_THROW(check_lemma_g_decreasing(RealVector{0.5, 2.0}), std::invalid_argument);
}

TEST(RandomTrials, EveryTheoremPasses)
{
    for (auto id : kAllTheorems) {
        TrialOptions opt;
        opt.trials = 25;
        opt.seed = 404;
        const auto r = verify_random(id, opt);
        EXPECT_TRUE(r.passed()) << to_string(id) << " failures " << r.failures.size();
    }
}

TEST(RandomTrials, Deterministic)
{
    TrialOptions opt;
    opt.trials = 20;
    opt.seed = 31;
    const auto a = verify_random(TheoremId::T3_2, opt), b = verify_random(TheoremId::T3_2, opt);
    EXPECT_EQ(a.conclusion_verdict.worst_margin, b.conclusion_verdict.worst_margin);
    EXPECT_EQ(a.conclusion_verdict.witness, b.conclusion_verdict.witness);
    EXPECT_EQ(sample_params(TheoremId::T3_8, mix_seed(5, 3), {}, {}).index(),
              sample_params(TheoremId::T3_8, mix_seed(5, 3), {}, {}).index());
}

TEST(Sampling, HonoursHypotheses)
{
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto p = std::get<MaxPowerParams>(sample_params(TheoremId::T3_6, mix_seed(1, s), {}, {}));
        EXPECT_LT(p.alpha, 1.0);
        EXPECT_LT(detail::vsum(p.betas), 1.0);
        EXPECT_LE(detail::vsum(p.betas_star), detail::vsum(p.betas));
        EXPECT_GE(p.betas.size(), 2u);
        EXPECT_LE(p.betas.size(), 5u);

        const auto c = std::get<CopulaParams>(sample_params(TheoremId::T3_8, mix_seed(2, s), {}, {}));
        EXPECT_TRUE(check_super_additive(c.gen2, c.gen1).super_additive);
        EXPECT_TRUE(is_weak_supermajorized(c.alphas_star, c.alphas));
    }
}

TEST(Scan, ConverseOfT35FindsViolations)
{
    ScanOptions opt;
    opt.samples = 40;
    opt.seed = 3;
    const auto r = counterexample_scan(TheoremId::T3_5, opt);
    EXPECT_GT(r.violations.size(), 0u);
    for (const auto& v : r.violations) {
        const auto& p = std::get<MaxPowerParams>(v.params);
        EXPECT_LT(detail::vsum(p.betas), detail::vsum(p.betas_star));
    }
}

TEST(Scan, InsideHypothesesFindsNothing)
{
    for (auto id : kAllTheorems) {
        ScanOptions opt;
        opt.samples = 20;
        opt.seed = 8;
        opt.mode = ScanMode::Constrained;
        const auto r = counterexample_scan(id, opt);
        EXPECT_TRUE(r.violations.empty()) << to_string(id);
        EXPECT_EQ(r.hypotheses_held, r.samples) << to_string(id);
    }
}

TEST(Scan, SameSeedSameViolations)
{
    ScanOptions opt;
    opt.samples = 30;
    opt.seed = 12;
    const auto a = counterexample_scan(TheoremId::T3_5, opt), b = counterexample_scan(TheoremId::T3_5, opt);
    ASSERT_EQ(a.violations.size(), b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
        EXPECT_EQ(a.violations[i].seed, b.violations[i].seed);
        EXPECT_EQ(a.violations[i].margin, b.violations[i].margin);
        EXPECT_EQ(a.violations[i].witness, b.violations[i].witness);
    }
}

TEST(Scan, RelaxedScalarHypothesisInT34)
{
    // alpha > 1 in the scale theorem: the scan still runs and reports hypothesis status
    ScanOptions opt;
    opt.samples = 30;
    opt.mode = ScanMode::Relations;
    opt.ranges.shape_lo = 1.5;
    opt.ranges.shape_hi = 5.0;
    const auto r = counterexample_scan(TheoremId::T3_4, opt);
    EXPECT_EQ(r.samples, 30u);
    EXPECT_EQ(r.hypotheses_held, 0u);
}

TEST(TheoremIds, RoundTrip)
{
    for (auto id : kAllTheorems)
        EXPECT_EQ(parse_theorem(to_string(id)), id);
    EXPECT_EQ(parse_theorem("T9_9"), std::nullopt);
}
