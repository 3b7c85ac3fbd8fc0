#pragma once

// Text front end: distribution spec strings, the JSON run-config format and
// a small JSON writer that prints every number with 17 significant digits.
//
// Distribution specs:
//   exp(rate)  nh(alpha,lambda)  ge(lambda,beta)  enh(alpha,lambda,beta)
//   es(alpha,lambda)            ES over a unit exponential baseline
//   es(alpha,lambda,a0)         ES over an NH(a0) baseline
//   max(d1, d2, ...)            parallel system of independent components
//   min([gen,] d1, d2, ...)     series system; gen is indep(), gumbel(t), clayton(t)

#include "verify.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace enhorder::io
{

/// Bad user input; the message names the offending field.
struct InputError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Spec strings

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

struct Call
{
    std::string name;
    std::vector<std::string> args;
};

/// "name(a, b(c, d), e)" -> {name, [a, b(c, d), e]}; commas split at depth 0 only.
inline Call split_call(std::string_view text)
{
    text = trim(text);
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')')
        throw InputError("malformed spec '" + std::string(text) + "': expected name(args)");
    Call c;
    for (char ch : trim(text.substr(0, open)))
        c.name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    const auto body = text.substr(open + 1, text.size() - open - 2);
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || (body[i] == ',' && depth == 0)) {
            const auto piece = trim(body.substr(start, i - start));
            if (!piece.empty())
                c.args.emplace_back(piece);
            else if (i != body.size() || !c.args.empty())
                throw InputError("empty argument in spec '" + std::string(text) + "'");
            start = i + 1;
        } else if (body[i] == '(') {
            ++depth;
        } else if (body[i] == ')') {
            if (--depth < 0)
                throw InputError("unbalanced parentheses in spec '" + std::string(text) + "'");
        }
    }
    if (depth != 0)
        throw InputError("unbalanced parentheses in spec '" + std::string(text) + "'");
    return c;
}

inline double parse_number(std::string_view s, const char* field)
{
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InputError(std::string(field) + ": '" + std::string(s) + "' is not a number");
    return v;
}

inline void arity(const Call& c, std::size_t lo, std::size_t hi, const char* usage)
{
    if (c.args.size() < lo || c.args.size() > hi)
        throw InputError("'" + c.name + "' expects " + usage);
}

inline std::vector<double> numbers(const Call& c, std::initializer_list<const char*> fields)
{
    std::vector<double> out;
    auto f = fields.begin();
    for (const auto& a : c.args) {
        const char* field = f != fields.end() ? *f++ : "argument";
        out.push_back(parse_number(a, field));
    }
    return out;
}

/// Rethrows a domain error from parameter validation as InputError.
template <typename Fn>
auto validated(Fn&& fn)
{
    try {
        return fn();
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    }
}

inline bool is_generator_name(const std::string& name)
{
    return name == "indep" || name == "independence" || name == "gumbel" || name == "clayton";
}

} // namespace detail

inline ArchGenerator parse_generator(std::string_view text)
{
    text = detail::trim(text);
    const auto c = text.find('(') == std::string_view::npos ? detail::Call{std::string(text), {}}
                                                             : detail::split_call(text);
    if (c.name == "indep" || c.name == "independence") {
        detail::arity(c, 0, 0, "no arguments");
        return ArchGenerator::independence();
    }
    if (c.name == "gumbel" || c.name == "clayton") {
        detail::arity(c, 1, 1, "one argument: theta");
        const double theta = detail::parse_number(c.args[0], "theta");
        return detail::validated([&] {
            return c.name == "gumbel" ? ArchGenerator::gumbel(theta) : ArchGenerator::clayton(theta);
        });
    }
    throw InputError("unknown generator '" + c.name + "' (expected indep, gumbel or clayton)");
}

inline BaselineDist parse_baseline(std::string_view text)
{
    text = detail::trim(text);
    if (text == "exp" || text == "exp()" || text == "exponential")
        return BaselineDist::exponential();
    const auto c = detail::split_call(text);
    if (c.name != "nh")
        throw InputError("baseline must be exp or nh(shape), got '" + std::string(text) + "'");
    detail::arity(c, 1, 1, "one argument: shape");
    const double a = detail::parse_number(c.args[0], "baseline shape");
    return detail::validated([&] {
        const auto b = BaselineDist::nh(a);
        b.validate();
        return b;
    });
}

/// Single-component spec as an ES marginal.
inline ESSpec parse_component(std::string_view text)
{
    const auto c = detail::split_call(text);
    return detail::validated([&]() -> ESSpec {
        if (c.name == "exp") {
            detail::arity(c, 1, 1, "one argument: rate");
            const auto v = detail::numbers(c, {"rate"});
            numeric::require_positive(v[0], "rate");
            return to_es(ENHParams::exponential(v[0]));
        }
        if (c.name == "nh") {
            detail::arity(c, 2, 2, "two arguments: alpha, lambda");
            const auto v = detail::numbers(c, {"alpha", "lambda"});
            const auto p = ENHParams::nh(v[0], v[1]);
            p.validate();
            return to_es(p);
        }
        if (c.name == "ge") {
            detail::arity(c, 2, 2, "two arguments: lambda, beta");
            const auto v = detail::numbers(c, {"lambda", "beta"});
            const auto p = ENHParams::ge(v[0], v[1]);
            p.validate();
            return to_es(p);
        }
        if (c.name == "enh") {
            detail::arity(c, 3, 3, "three arguments: alpha, lambda, beta");
            const auto v = detail::numbers(c, {"alpha", "lambda", "beta"});
            const ENHParams p{v[0], v[1], v[2]};
            p.validate();
            return to_es(p);
        }
        if (c.name == "es") {
            detail::arity(c, 2, 3, "two or three arguments: alpha, lambda[, baseline shape]");
            const auto v = detail::numbers(c, {"alpha", "lambda", "baseline shape"});
            const ESSpec s{v[0], v[1], v.size() == 3 ? BaselineDist::nh(v[2]) : BaselineDist::exponential()};
            s.validate();
            return s;
        }
        throw InputError("unknown distribution '" + c.name + "'");
    });
}

/// Parsed spec: a distribution handle plus the ENH parameters when the spec
/// is a single ENH-family law.
struct ParsedDist
{
    DistHandle dist;
    std::optional<ENHParams> enh;
};

inline ParsedDist parse_dist(std::string_view text)
{
    const std::string label(detail::trim(text));
    const auto c = detail::split_call(text);
    if (c.name == "max" || c.name == "min") {
        std::size_t first = 0;
        Dependence dep = Independent{};
        if (c.name == "min" && !c.args.empty()) {
            const auto head = c.args[0].substr(0, c.args[0].find('('));
            if (detail::is_generator_name(std::string(detail::trim(head)))) {
                dep = parse_generator(c.args[0]);
                first = 1;
            }
        }
        std::vector<ESSpec> comps;
        for (std::size_t i = first; i < c.args.size(); ++i)
            comps.push_back(parse_component(c.args[i]));
        if (comps.empty())
            throw InputError("'" + c.name + "' needs at least one component");
        return detail::validated([&]() -> ParsedDist {
            SampleSpec sample(std::move(comps), dep);
            if (c.name == "max")
                return {DistHandle(ParallelSystem(std::move(sample)), label), std::nullopt};
            return {DistHandle(SeriesSystem(std::move(sample)), label), std::nullopt};
        });
    }
    const auto es = parse_component(text);
    // every single-component spec is ENH(baseline shape, lambda, exponent)
    return {DistHandle(Es(es), label), ENHParams{es.baseline.nh_shape(), es.lambda, es.alpha}};
}

inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_spec(const ArchGenerator& g)
{
    switch (g.family()) {
    case ArchGenerator::Family::Gumbel: return "gumbel(" + format_double(g.theta()) + ")";
    case ArchGenerator::Family::Clayton: return "clayton(" + format_double(g.theta()) + ")";
    default: return "indep()";
    }
}

inline std::string to_spec(const BaselineDist& b)
{
    return b.kind == BaselineDist::Kind::NH ? "nh(" + format_double(b.shape) + ")" : "exp";
}

// ---------------------------------------------------------------------------
// JSON writer

/// Compact JSON with %.17g numbers; non-finite numbers become the strings
/// "inf", "-inf" and "nan".
class JsonWriter
{
  public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(std::string_view k)
    {
        comma();
        string(k);
        out_ += ':';
        after_key_ = true;
        return *this;
    }

    JsonWriter& value(double v)
    {
        comma();
        if (std::isnan(v))
            string("nan");
        else if (std::isinf(v))
            string(v > 0 ? "inf" : "-inf");
        else
            out_ += format_double(v);
        return *this;
    }
    JsonWriter& value(std::uint64_t v)
    {
        comma();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(int v)
    {
        comma();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(bool v)
    {
        comma();
        out_ += v ? "true" : "false";
        return *this;
    }
    JsonWriter& value(std::string_view v)
    {
        comma();
        string(v);
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    JsonWriter& null()
    {
        comma();
        out_ += "null";
        return *this;
    }
    JsonWriter& value(std::span<const double> v)
    {
        begin_array();
        for (double x : v)
            value(x);
        return end_array();
    }

    template <typename T>
    JsonWriter& field(std::string_view k, const T& v)
    {
        key(k);
        if constexpr (std::is_convertible_v<const T&, std::span<const double>>)
            return value(std::span<const double>(v));
        else
            return value(v);
    }

    const std::string& str() const { return out_; }

  private:
    JsonWriter& open(char c)
    {
        comma();
        out_ += c;
        first_.push_back(true);
        return *this;
    }
    JsonWriter& close(char c)
    {
        first_.pop_back();
        out_ += c;
        return *this;
    }
    void comma()
    {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back())
                out_ += ',';
            first_.back() = false;
        }
    }
    void string(std::string_view s)
    {
        out_ += '"';
        for (char ch : s) {
            switch (ch) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\r': out_ += "\\r"; break;
            case '\t': out_ += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch));
                    out_ += buf;
                } else {
                    out_ += ch;
                }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

inline void write_verdict(JsonWriter& w, const OrderVerdict& v)
{
    w.begin_object()
        .field("order", to_string(v.order))
        .field("holds", v.holds)
        .field("applicable", v.applicable)
        .field("worst_margin", v.worst_margin)
        .field("witness", v.witness)
        .field("witness_is_probability", v.witness_is_probability)
        .field("skipped", static_cast<std::uint64_t>(v.skipped));
    if (!v.note.empty())
        w.field("note", v.note);
    w.key("grid")
        .begin_object()
        .field("points", static_cast<std::uint64_t>(v.grid_points))
        .field("u_min", v.u_min)
        .field("u_max", v.u_max)
        .end_object();
    w.end_object();
}

inline void write_params(JsonWriter& w, const ScenarioParams& params)
{
    w.begin_object();
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, MaxShapeParams>) {
                w.field("alphas", p.alphas).field("alphas_star", p.alphas_star).field("lambda", p.lambda).field("beta", p.beta);
            } else if constexpr (std::is_same_v<P, MaxScaleParams>) {
                w.field("lambdas", p.lambdas).field("lambdas_star", p.lambdas_star).field("alpha", p.alpha).field("beta", p.beta);
            } else if constexpr (std::is_same_v<P, MaxPowerParams>) {
                w.field("alpha", p.alpha).field("lambda", p.lambda).field("betas", p.betas).field("betas_star", p.betas_star);
            } else if constexpr (std::is_same_v<P, ConvexParams>) {
                w.field("alpha1", p.alpha1).field("alpha2", p.alpha2).field("lambda1", p.lambda1);
                w.field("lambda2", p.lambda2).field("betas", p.betas).field("betas_star", p.betas_star);
            } else if constexpr (std::is_same_v<P, CopulaParams>) {
                w.field("alphas", p.alphas).field("alphas_star", p.alphas_star).field("lambda", p.lambda);
                w.field("baseline", to_spec(p.baseline)).field("gen1", to_spec(p.gen1)).field("gen2", to_spec(p.gen2));
            } else if constexpr (std::is_same_v<P, SchurParams>) {
                w.field("alphas", p.alphas).field("lambda", p.lambda).field("beta", p.beta).field("x", p.x);
                w.field("pair_seed", p.pair_seed);
            } else {
                w.field("lo", p.lo).field("hi", p.hi).field("points", static_cast<std::uint64_t>(p.points));
            }
        },
        params);
    w.end_object();
}

// ---------------------------------------------------------------------------
// Run config

struct GridSettings
{
    std::size_t points = ProbGrid::kDefaultPoints;
    double u_min = ProbGrid::kDefaultMin;
    double u_max = ProbGrid::kDefaultMax;

    ProbGrid make() const
    {
        try {
            return ProbGrid::uniform(points, u_min, u_max);
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("grid: ") + e.what());
        }
    }
};

enum class RunMode { Random, Instance, Scan };

inline std::string_view to_string(RunMode m)
{
    switch (m) {
    case RunMode::Random: return "random";
    case RunMode::Instance: return "instance";
    case RunMode::Scan: return "scan";
    }
    return "?";
}

inline std::string_view to_string(ScanMode m)
{
    switch (m) {
    case ScanMode::Free: return "free";
    case ScanMode::Relations: return "relations";
    case ScanMode::Constrained: return "constrained";
    }
    return "?";
}

inline std::optional<ScanMode> parse_scan_mode(std::string_view s)
{
    if (s == "free")
        return ScanMode::Free;
    if (s == "relations")
        return ScanMode::Relations;
    if (s == "constrained")
        return ScanMode::Constrained;
    return std::nullopt;
}

struct ScenarioConfig
{
    TheoremId theorem = TheoremId::T3_2;
    RunMode mode = RunMode::Random;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 200;
    std::size_t samples = 100;
    ScanMode scan_mode = ScanMode::Free;
    ParamRanges ranges;
    std::optional<ScenarioParams> params;
    std::optional<GridSettings> grid;
};

struct RunConfig
{
    std::uint64_t seed = 1;
    GridSettings grid;
    std::vector<ScenarioConfig> scenarios;
};

namespace detail
{

using nlohmann::json;

inline void only_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where)
{
    if (!j.is_object())
        throw InputError(where + " must be an object");
    for (const auto& [k, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw InputError("unknown key '" + k + "' in " + where);
}

inline const json& need(const json& j, const char* k, const std::string& where)
{
    if (!j.contains(k))
        throw InputError(where + "." + k + " is required");
    return j.at(k);
}

inline double num(const json& j, const std::string& field)
{
    if (!j.is_number())
        throw InputError(field + " must be a number");
    return j.get<double>();
}

inline std::uint64_t count(const json& j, const std::string& field)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw InputError(field + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

inline std::string str(const json& j, const std::string& field)
{
    if (!j.is_string())
        throw InputError(field + " must be a string");
    return j.get<std::string>();
}

inline RealVector vec(const json& j, const std::string& field)
{
    if (!j.is_array() || j.empty())
        throw InputError(field + " must be a non-empty array of numbers");
    RealVector v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const double x = num(j[i], field + "[" + std::to_string(i) + "]");
        if (!(x > 0.0) || !std::isfinite(x))
            throw InputError(field + "[" + std::to_string(i) + "] must be positive");
        v.push_back(x);
    }
    return v;
}

inline double pos(const json& j, const std::string& field)
{
    const double v = num(j, field);
    if (!(v > 0.0) || !std::isfinite(v))
        throw InputError(field + " must be positive");
    return v;
}

inline GridSettings parse_grid(const json& j, const std::string& where, GridSettings g = {})
{
    only_keys(j, {"points", "u_min", "u_max"}, where);
    if (j.contains("points"))
        g.points = count(j["points"], where + ".points");
    if (j.contains("u_min"))
        g.u_min = num(j["u_min"], where + ".u_min");
    if (j.contains("u_max"))
        g.u_max = num(j["u_max"], where + ".u_max");
    g.make();
    return g;
}

inline ParamRanges parse_ranges(const json& j, const std::string& where)
{
    only_keys(j, {"shape", "scale", "power", "theta", "n_min", "n_max"}, where);
    ParamRanges r;
    auto pair = [&](const char* k, double& lo, double& hi) {
        if (!j.contains(k))
            return;
        const auto& a = j[k];
        const std::string f = where + "." + k;
        if (!a.is_array() || a.size() != 2)
            throw InputError(f + " must be [lo, hi]");
        lo = num(a[0], f + "[0]");
        hi = num(a[1], f + "[1]");
    };
    pair("shape", r.shape_lo, r.shape_hi);
    pair("scale", r.scale_lo, r.scale_hi);
    pair("power", r.power_lo, r.power_hi);
    pair("theta", r.theta_lo, r.theta_hi);
    if (j.contains("n_min"))
        r.n_min = count(j["n_min"], where + ".n_min");
    if (j.contains("n_max"))
        r.n_max = count(j["n_max"], where + ".n_max");
    try {
        r.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
    }
    return r;
}

inline void same_length(const RealVector& a, const RealVector& b, const std::string& where)
{
    if (a.size() != b.size())
        throw InputError(where + ": parameter vectors must have equal length");
}

inline ScenarioParams parse_params(TheoremId id, const json& j, const std::string& w)
{
    auto f = [&](const char* k) { return w + "." + k; };
    switch (id) {
    case TheoremId::T3_2:
    case TheoremId::T3_3: {
        only_keys(j, {"alphas", "alphas_star", "lambda", "beta"}, w);
        MaxShapeParams p{vec(need(j, "alphas", w), f("alphas")), vec(need(j, "alphas_star", w), f("alphas_star")),
                         pos(need(j, "lambda", w), f("lambda")), pos(need(j, "beta", w), f("beta"))};
        same_length(p.alphas, p.alphas_star, w);
        return p;
    }
    case TheoremId::T3_4: {
        only_keys(j, {"lambdas", "lambdas_star", "alpha", "beta"}, w);
        MaxScaleParams p{vec(need(j, "lambdas", w), f("lambdas")), vec(need(j, "lambdas_star", w), f("lambdas_star")),
                         pos(need(j, "alpha", w), f("alpha")), pos(need(j, "beta", w), f("beta"))};
        same_length(p.lambdas, p.lambdas_star, w);
        return p;
    }
    case TheoremId::T3_5:
    case TheoremId::T3_6: {
        only_keys(j, {"alpha", "lambda", "betas", "betas_star"}, w);
        return MaxPowerParams{pos(need(j, "alpha", w), f("alpha")), pos(need(j, "lambda", w), f("lambda")),
                              vec(need(j, "betas", w), f("betas")), vec(need(j, "betas_star", w), f("betas_star"))};
    }
    case TheoremId::T3_7:
    case TheoremId::C_Lorenz: {
        only_keys(j, {"alpha1", "alpha2", "lambda1", "lambda2", "betas", "betas_star"}, w);
        return ConvexParams{pos(need(j, "alpha1", w), f("alpha1")),   pos(need(j, "alpha2", w), f("alpha2")),
                            pos(need(j, "lambda1", w), f("lambda1")), pos(need(j, "lambda2", w), f("lambda2")),
                            vec(need(j, "betas", w), f("betas")),     vec(need(j, "betas_star", w), f("betas_star"))};
    }
    case TheoremId::T3_8:
    case TheoremId::C_PRH:
    case TheoremId::C_ENH_copula: {
        only_keys(j, {"alphas", "alphas_star", "lambda", "baseline", "gen1", "gen2"}, w);
        CopulaParams p;
        p.alphas = vec(need(j, "alphas", w), f("alphas"));
        p.alphas_star = vec(need(j, "alphas_star", w), f("alphas_star"));
        same_length(p.alphas, p.alphas_star, w);
        p.lambda = j.contains("lambda") ? pos(j["lambda"], f("lambda")) : 1.0;
        if (j.contains("baseline"))
            p.baseline = parse_baseline(str(j["baseline"], f("baseline")));
        p.gen1 = parse_generator(str(need(j, "gen1", w), f("gen1")));
        p.gen2 = parse_generator(str(need(j, "gen2", w), f("gen2")));
        return p;
    }
    case TheoremId::L2_1: {
        only_keys(j, {"alphas", "lambda", "beta", "x", "pair_seed"}, w);
        SchurParams p;
        p.alphas = vec(need(j, "alphas", w), f("alphas"));
        if (p.alphas.size() < 2)
            throw InputError(f("alphas") + " needs at least two entries");
        p.lambda = pos(need(j, "lambda", w), f("lambda"));
        p.beta = pos(need(j, "beta", w), f("beta"));
        p.x = pos(need(j, "x", w), f("x"));
        if (j.contains("pair_seed"))
            p.pair_seed = count(j["pair_seed"], f("pair_seed"));
        return p;
    }
    case TheoremId::L3_1: {
        only_keys(j, {"lo", "hi", "points"}, w);
        LemmaParams p;
        if (j.contains("lo"))
            p.lo = num(j["lo"], f("lo"));
        if (j.contains("hi"))
            p.hi = num(j["hi"], f("hi"));
        if (j.contains("points"))
            p.points = count(j["points"], f("points"));
        if (!(p.lo > 1.0 && p.hi > p.lo && p.points >= 2))
            throw InputError(w + ": lemma grid needs 1 < lo < hi and points >= 2");
        return p;
    }
    }
    throw InputError(w + ": unsupported theorem");
}

} // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& j)
{
    using namespace detail;
    only_keys(j, {"$schema", "seed", "grid", "scenarios"}, "config");
    RunConfig cfg;
    if (j.contains("seed"))
        cfg.seed = count(j["seed"], "seed");
    if (j.contains("grid"))
        cfg.grid = parse_grid(j["grid"], "grid");
    const auto& list = need(j, "scenarios", "config");
    if (!list.is_array() || list.empty())
        throw InputError("scenarios must be a non-empty array");

    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string w = "scenarios[" + std::to_string(i) + "]";
        const auto& s = list[i];
        only_keys(s,
                  {"theorem_id", "mode", "seed", "trials", "samples", "scan_mode", "ranges", "params", "grid"}, w);
        ScenarioConfig sc;
        const auto id_text = str(need(s, "theorem_id", w), w + ".theorem_id");
        const auto id = parse_theorem(id_text);
        if (!id)
            throw InputError(w + ".theorem_id: unknown theorem '" + id_text + "'");
        sc.theorem = *id;

        const auto mode = s.contains("mode") ? str(s["mode"], w + ".mode") : (s.contains("params") ? "instance" : "random");
        if (mode == "random")
            sc.mode = RunMode::Random;
        else if (mode == "instance")
            sc.mode = RunMode::Instance;
        else if (mode == "scan")
            sc.mode = RunMode::Scan;
        else
            throw InputError(w + ".mode must be random, instance or scan");

        if (s.contains("seed"))
            sc.seed = count(s["seed"], w + ".seed");
        if (s.contains("trials"))
            sc.trials = count(s["trials"], w + ".trials");
        if (s.contains("samples"))
            sc.samples = count(s["samples"], w + ".samples");
        if (s.contains("scan_mode")) {
            const auto m = parse_scan_mode(str(s["scan_mode"], w + ".scan_mode"));
            if (!m)
                throw InputError(w + ".scan_mode must be free, relations or constrained");
            sc.scan_mode = *m;
        }
        if (s.contains("ranges"))
            sc.ranges = parse_ranges(s["ranges"], w + ".ranges");
        if (s.contains("params"))
            sc.params = parse_params(sc.theorem, s["params"], w + ".params");
        if (s.contains("grid"))
            sc.grid = parse_grid(s["grid"], w + ".grid", cfg.grid);

        if (sc.mode == RunMode::Instance && !sc.params)
            throw InputError(w + ".params is required in instance mode");
        if (sc.mode != RunMode::Instance && sc.params)
            throw InputError(w + ".params is only allowed in instance mode");
        if (sc.mode == RunMode::Random && sc.trials == 0)
            throw InputError(w + ".trials must be >= 1");
        cfg.scenarios.push_back(std::move(sc));
    }
    return cfg;
}

inline RunConfig parse_run_config_text(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_run_config(j);
}

// ---------------------------------------------------------------------------
// Running a config

struct ScenarioResult
{
    std::size_t index = 0;
    const ScenarioConfig* config = nullptr;
    std::optional<ScenarioReport> report; ///< random / instance
    std::optional<ScanResult> scan;       ///< scan

    bool passed() const { return scan ? true : report->passed(); }
};

/// Seed for scenario i: its own when given, else derived from the run seed.
inline std::uint64_t scenario_seed(const RunConfig& cfg, std::size_t i)
{
    const auto& sc = cfg.scenarios[i];
    return sc.seed ? *sc.seed : mix_seed(cfg.seed, 1000003u + i);
}

inline ScenarioResult run_scenario(const RunConfig& cfg, std::size_t i)
{
    const auto& sc = cfg.scenarios[i];
    const ProbGrid grid = (sc.grid ? *sc.grid : cfg.grid).make();
    ScenarioResult r;
    r.index = i;
    r.config = &sc;
    const auto seed = scenario_seed(cfg, i);
    try {
        switch (sc.mode) {
        case RunMode::Instance: r.report = verify_instance(sc.theorem, *sc.params, grid); break;
        case RunMode::Random: r.report = verify_random(sc.theorem, {sc.trials, seed, sc.ranges, grid}); break;
        case RunMode::Scan:
            r.scan = counterexample_scan(sc.theorem, {sc.samples, seed, sc.scan_mode, sc.ranges, grid});
            break;
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw InputError("scenarios[" + std::to_string(i) + "]: " + e.what());
    } catch (const std::domain_error& e) {
        throw InputError("scenarios[" + std::to_string(i) + "]: " + e.what());
    }
    return r;
}

inline std::string scenario_json(const RunConfig& cfg, const ScenarioResult& r)
{
    JsonWriter w;
    const auto& sc = *r.config;
    w.begin_object()
        .field("index", static_cast<std::uint64_t>(r.index))
        .field("theorem_id", to_string(sc.theorem))
        .field("mode", to_string(sc.mode))
        .field("seed", scenario_seed(cfg, r.index));
    if (r.report) {
        const auto& rep = *r.report;
        w.field("passed", rep.passed())
            .field("hypotheses_ok", rep.hypotheses_ok)
            .field("trials", static_cast<std::uint64_t>(rep.trials));
        w.key("conclusion_verdict");
        write_verdict(w, rep.conclusion_verdict);
        w.key("failures").begin_array();
        for (const auto& f : rep.failures) {
            w.begin_object()
                .field("seed", f.seed)
                .field("trial", static_cast<std::uint64_t>(f.trial))
                .field("witness", f.witness)
                .field("margin", f.margin);
            if (!f.detail.empty())
                w.field("detail", f.detail);
            w.key("params");
            write_params(w, f.params);
            w.end_object();
        }
        w.end_array();
    } else {
        const auto& s = *r.scan;
        w.field("passed", true)
            .field("scan_mode", to_string(s.mode))
            .field("samples", static_cast<std::uint64_t>(s.samples))
            .field("hypotheses_held", static_cast<std::uint64_t>(s.hypotheses_held))
            .field("violation_count", static_cast<std::uint64_t>(s.violations.size()));
        w.key("violations").begin_array();
        for (const auto& v : s.violations) {
            w.begin_object()
                .field("sample", static_cast<std::uint64_t>(v.sample))
                .field("seed", v.seed)
                .field("hypotheses_held", v.hypotheses_held)
                .field("witness", v.witness)
                .field("margin", v.margin);
            if (!v.detail.empty())
                w.field("detail", v.detail);
            w.key("params");
            write_params(w, v.params);
            w.end_object();
        }
        w.end_array();
    }
    w.end_object();
    return w.str();
}

} // namespace enhorder::io
