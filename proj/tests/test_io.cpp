#include <enhorder/io.hpp>

#include <gtest/gtest.h>

#include <json.hpp>

using namespace enhorder;
using namespace enhorder::io;

TEST(ParseDist, Components)
{
    const auto e = parse_dist("enh(0.5, 2, 3)");
    ASSERT_TRUE(e.enh.has_value());
    EXPECT_EQ(e.enh->alpha, 0.5);
    EXPECT_EQ(e.enh->lambda, 2.0);
    EXPECT_EQ(e.enh->beta, 3.0);
    EXPECT_NEAR(e.dist.cdf(1.0), enh_cdf({0.5, 2, 3}, 1.0), 1e-15);

    EXPECT_NEAR(parse_dist("exp(2)").dist.cdf(1.0), -std::expm1(-2.0), 1e-15);
    EXPECT_NEAR(parse_dist("nh(2,1)").dist.cdf(1.0), enh_cdf({2, 1, 1}, 1.0), 1e-15);
    EXPECT_NEAR(parse_dist("ge(1,3)").dist.cdf(1.0), enh_cdf({1, 1, 3}, 1.0), 1e-15);
}

TEST(ParseDist, Systems)
{
    const auto mx = parse_dist("max(enh(1,1,1), enh(1,1,1))");
    EXPECT_FALSE(mx.enh.has_value());
    EXPECT_NEAR(mx.dist.cdf(std::log(2.0)), 0.25, 1e-15);
    const auto mn = parse_dist("min(gumbel(2), exp(1), exp(1))");
    EXPECT_NEAR(mn.dist.sf(1.0), 0.24311673443421421, 1e-15);
    EXPECT_NEAR(parse_dist("min(exp(1), exp(1))").dist.sf(1.0), std::exp(-2.0), 1e-15);
}

TEST(ParseDist, ErrorsNameTheField)
{
    try {
        parse_dist("enh(-1, 1, 1)");
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
    }
    EXPECT_THROW(parse_dist("weibull(1,2)"), InputError);
    EXPECT_THROW(parse_dist("enh(1,1)"), InputError);
    EXPECT_THROW(parse_dist("enh(1,1,x)"), InputError);
    EXPECT_THROW(parse_dist("max()"), InputError);
    EXPECT_THROW(parse_generator("gumbel(0.5)"), InputError);
}

TEST(ParseGenerator, RoundTripsThroughSpec)
{
    for (const auto& g : {ArchGenerator::independence(), ArchGenerator::gumbel(2.5), ArchGenerator::clayton(0.1)})
        EXPECT_EQ(parse_generator(to_spec(g)), g);
    EXPECT_EQ(parse_baseline("exp").kind, BaselineDist::Kind::Exponential);
    EXPECT_EQ(parse_baseline("nh(0.7)"), BaselineDist::nh(0.7));
}

TEST(JsonWriter, SeventeenDigits)
{
    JsonWriter w;
    w.begin_object().field("x", 0.1).field("third", 1.0 / 3.0).field("n", std::uint64_t{7}).end_object();
    const auto j = nlohmann::json::parse(w.str());
    EXPECT_EQ(j["x"].get<double>(), 0.1);
    EXPECT_EQ(j["third"].get<double>(), 1.0 / 3.0);
    EXPECT_NE(w.str().find("0.10000000000000001"), std::string::npos);
    EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
}

TEST(JsonWriter, NonFiniteAndEscapes)
{
    JsonWriter w;
    const double v[] = {1.5, kInf};
    w.begin_object()
        .field("nan", std::nan(""))
        .field("s", std::string_view("a\"b\n"))
        .field("v", std::span<const double>(v))
        .key("z")
        .null()
        .end_object();
    const auto j = nlohmann::json::parse(w.str());
    EXPECT_EQ(j["nan"], "nan");
    EXPECT_EQ(j["s"], "a\"b\n");
    EXPECT_EQ(j["v"][1], "inf");
    EXPECT_TRUE(j["z"].is_null());
}

TEST(RunConfig, ParsesScenarios)
{
    const auto cfg = parse_run_config_text(R"({
      "seed": 5,
      "grid": {"points": 64},
      "scenarios": [
        {"theorem_id": "T3_2", "trials": 3},
        {"theorem_id": "T3_5", "params": {"alpha": 1, "lambda": 1, "betas": [1, 2], "betas_star": [0.5, 1]}},
        {"theorem_id": "T3_4", "mode": "scan", "scan_mode": "relations", "samples": 4, "ranges": {"shape": [1, 5], "n_max": 3}}
      ]})");
    EXPECT_EQ(cfg.seed, 5u);
    EXPECT_EQ(cfg.grid.points, 64u);
    ASSERT_EQ(cfg.scenarios.size(), 3u);
    EXPECT_EQ(cfg.scenarios[0].mode, RunMode::Random);
    EXPECT_EQ(cfg.scenarios[0].trials, 3u);
    EXPECT_EQ(cfg.scenarios[1].mode, RunMode::Instance);
    EXPECT_EQ(cfg.scenarios[2].mode, RunMode::Scan);
    EXPECT_EQ(cfg.scenarios[2].scan_mode, ScanMode::Relations);
    EXPECT_EQ(cfg.scenarios[2].ranges.shape_lo, 1.0);
    EXPECT_EQ(cfg.scenarios[2].ranges.n_max, 3u);

    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i) {
        const auto r = run_scenario(cfg, i);
        EXPECT_TRUE(r.passed());
        const auto line = scenario_json(cfg, r);
        EXPECT_EQ(line.find('\n'), std::string::npos);
        EXPECT_NO_THROW(nlohmann::json::parse(line));
    }
}

TEST(RunConfig, RejectsUnknownKeysWithPath)
{
    auto message = [](const char* text) {
        try {
            parse_run_config_text(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(R"({"scenarios": [], "colour": 1})").find("colour"), std::string::npos);
    const auto m = message(R"({"scenarios": [{"theorem_id": "T3_2", "tirals": 3}]})");
    EXPECT_NE(m.find("scenarios[0]"), std::string::npos);
    EXPECT_NE(m.find("tirals"), std::string::npos);
    EXPECT_NE(message(R"({"scenarios": [{"theorem_id": "T3_5", "params": {"alpha": 1, "lambda": 1, "betas": [1], "betas_star": [1], "gamma": 2}}]})")
                  .find("gamma"),
              std::string::npos);
    EXPECT_FALSE(message(R"({"scenarios": [{"theorem_id": "T9"}]})").empty());
    EXPECT_FALSE(message(R"({"scenarios": [{"theorem_id": "T3_5", "params": {"alpha": -1, "lambda": 1, "betas": [1], "betas_star": [1]}}]})").empty());
    EXPECT_FALSE(message("{not json").empty());
    EXPECT_FALSE(message(R"({"grid": {"u_min": 0.9, "u_max": 0.1}, "scenarios": []})").empty());
}

TEST(RunConfig, Deterministic)
{
    const auto cfg = parse_run_config_text(R"({"seed": 77, "scenarios": [
        {"theorem_id": "T3_8", "trials": 5}, {"theorem_id": "T3_5", "mode": "scan", "samples": 10}]})");
    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i)
        EXPECT_EQ(scenario_json(cfg, run_scenario(cfg, i)), scenario_json(cfg, run_scenario(cfg, i)));
}
