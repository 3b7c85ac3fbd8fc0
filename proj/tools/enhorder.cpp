// enhorder command-line front end.
//
//   enhorder eval --dist SPEC --what cdf|sf|pdf|quantile|hazard|shape [--at v1,v2,...]
//   enhorder check-order --order st|hr|lr|disp|rs|convex|lorenz --f SPEC --g SPEC
//   enhorder verify --config FILE
//   enhorder scan --theorem ID [--samples N] [--scan-mode free|relations|constrained]
//   enhorder plotdata --kind hazard-curves|ordering-curves|lorenz-curves [--dist SPEC ...]
//
// Shared flags: --grid-points --u-min --u-max --seed --format json|csv --out PATH
// Exit status: 0 all assertions hold, 1 an order or scenario is violated,
// 2 usage or validation error.

#include <enhorder/io.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace enhorder;

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

struct Common
{
    std::size_t grid_points = ProbGrid::kDefaultPoints;
    double u_min = ProbGrid::kDefaultMin;
    double u_max = ProbGrid::kDefaultMax;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;

    // set when the flag was given explicitly
    bool grid_given = false;
    bool seed_given = false;

    io::GridSettings grid() const { return {grid_points, u_min, u_max}; }
};

/// Writes to --out or stdout; CSV and JSON lines end in LF only.
class Sink
{
  public:
    explicit Sink(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_)
                throw io::InputError("out: cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void line(const std::string& s) { stream() << s << '\n'; }

  private:
    std::ofstream file_;
};

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + '"';
}

struct Row
{
    std::string series;
    double x_or_u;
    double value;
};

void emit_rows(const Common& c, const std::vector<Row>& rows, const std::string& kind)
{
    Sink sink(c.out);
    if (c.format == "csv") {
        sink.line("series,x_or_u,value");
        for (const auto& r : rows)
            sink.line(csv_field(r.series) + "," + io::format_double(r.x_or_u) + "," + io::format_double(r.value));
        return;
    }
    io::JsonWriter w;
    w.begin_object().field("kind", kind).key("columns").begin_array();
    w.value("series").value("x_or_u").value("value").end_array();
    w.key("rows").begin_array();
    for (const auto& r : rows)
        w.begin_array().value(r.series).value(r.x_or_u).value(r.value).end_array();
    w.end_array().end_object();
    sink.line(w.str());
}

std::vector<double> parse_list(const std::string& text, const char* field)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(io::detail::parse_number(item, field));
    if (out.empty())
        throw io::InputError(std::string(field) + ": empty list");
    return out;
}

// ---------------------------------------------------------------------------

int cmd_eval(const Common& c, const std::string& spec, const std::string& what, const std::string& at)
{
    const auto parsed = io::parse_dist(spec);
    const auto& d = parsed.dist;
    const ProbGrid grid = c.grid().make();

    if (what == "shape") {
        if (!parsed.enh)
            throw io::InputError("dist: shape classification needs a single ENH-family distribution");
        const auto shape = classify_hazard_shape(*parsed.enh, grid);
        Sink sink(c.out);
        if (c.format == "csv") {
            sink.line("series,shape");
            sink.line(csv_field(spec) + "," + std::string(to_string(shape)));
        } else {
            io::JsonWriter w;
            w.begin_object().field("series", spec).field("shape", to_string(shape)).end_object();
            sink.line(w.str());
        }
        return kExitOk;
    }

    std::function<double(double)> f;
    if (what == "cdf")
        f = [&](double x) { return d.cdf(x); };
    else if (what == "sf")
        f = [&](double x) { return d.sf(x); };
    else if (what == "pdf")
        f = [&](double x) { return d.pdf(x); };
    else if (what == "hazard")
        f = [&](double x) { return d.hazard(x); };
    else if (what == "quantile")
        f = [&](double u) { return d.quantile(u); };
    else
        throw io::InputError("what: expected cdf, sf, pdf, quantile, hazard or shape");

    std::vector<double> points;
    if (!at.empty())
        points = parse_list(at, "at");
    else if (what == "quantile")
        points.assign(grid.begin(), grid.end());
    else
        for (double u : grid)
            points.push_back(d.quantile(u));

    std::vector<Row> rows;
    for (double p : points) {
        try {
            rows.push_back({what, p, f(p)});
        } catch (const std::domain_error& e) {
            throw io::InputError(std::string("at: ") + e.what());
        }
    }
    emit_rows(c, rows, "eval " + spec);
    return kExitOk;
}

int cmd_check_order(const Common& c, const std::string& order, const std::string& fs, const std::string& gs)
{
    const auto kind = parse_order(order);
    if (!kind)
        throw io::InputError("order: unknown order '" + order + "'");
    const auto f = io::parse_dist(fs), g = io::parse_dist(gs);
    const auto v = check_order(*kind, f.dist, g.dist, c.grid().make());

    Sink sink(c.out);
    if (c.format == "csv") {
        sink.line("order,f,g,holds,worst_margin,witness,witness_is_probability,grid_points,u_min,u_max");
        sink.line(std::string(to_string(v.order)) + "," + csv_field(fs) + "," + csv_field(gs) + "," +
                  (v.holds ? "true" : "false") + "," + io::format_double(v.worst_margin) + "," +
                  io::format_double(v.witness) + "," + (v.witness_is_probability ? "true" : "false") + "," +
                  std::to_string(v.grid_points) + "," + io::format_double(v.u_min) + "," +
                  io::format_double(v.u_max));
    } else {
        io::JsonWriter w;
        w.begin_object().field("f", fs).field("g", gs).key("verdict");
        io::write_verdict(w, v);
        w.end_object();
        sink.line(w.str());
    }
    return v.holds ? kExitOk : kExitViolated;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io::InputError("config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_results(const Common& c, const io::RunConfig& cfg, const std::vector<io::ScenarioResult>& results)
{
    Sink sink(c.out);
    if (c.format == "csv") {
        sink.line("index,theorem_id,mode,passed,trials,failures,worst_margin");
        for (const auto& r : results) {
            const auto& sc = *r.config;
            const std::size_t trials = r.report ? r.report->trials : r.scan->samples;
            const std::size_t bad = r.report ? r.report->failures.size() : r.scan->violations.size();
            const double margin = r.report ? r.report->conclusion_verdict.worst_margin : 0.0;
            sink.line(std::to_string(r.index) + "," + std::string(to_string(sc.theorem)) + "," +
                      std::string(io::to_string(sc.mode)) + "," + (r.passed() ? "true" : "false") + "," +
                      std::to_string(trials) + "," + std::to_string(bad) + "," + io::format_double(margin));
        }
        return;
    }
    for (const auto& r : results)
        sink.line(io::scenario_json(cfg, r));
}

int run_config(const Common& c, io::RunConfig cfg)
{
    if (c.seed_given)
        cfg.seed = c.seed;
    if (c.grid_given)
        cfg.grid = c.grid();
    std::vector<io::ScenarioResult> results;
    bool ok = true;
    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i) {
        results.push_back(io::run_scenario(cfg, i));
        ok = ok && results.back().passed();
    }
    print_results(c, cfg, results);
    return ok ? kExitOk : kExitViolated;
}

int cmd_verify(const Common& c, const std::string& path)
{
    return run_config(c, io::parse_run_config_text(read_file(path)));
}

int cmd_scan(const Common& c, const std::string& theorem, std::size_t samples, const std::string& mode,
             const std::vector<std::string>& range_flags)
{
    const auto id = parse_theorem(theorem);
    if (!id)
        throw io::InputError("theorem: unknown theorem '" + theorem + "'");
    const auto m = io::parse_scan_mode(mode);
    if (!m)
        throw io::InputError("scan-mode: expected free, relations or constrained");

    nlohmann::json ranges = nlohmann::json::object();
    for (const auto& flag : range_flags) {
        const auto eq = flag.find('=');
        if (eq == std::string::npos)
            throw io::InputError("range: expected name=lo,hi");
        const auto name = flag.substr(0, eq);
        const auto vals = parse_list(flag.substr(eq + 1), "range");
        if (name == "n") {
            if (vals.size() != 2)
                throw io::InputError("range n: expected n=min,max");
            ranges["n_min"] = static_cast<std::uint64_t>(vals[0]);
            ranges["n_max"] = static_cast<std::uint64_t>(vals[1]);
        } else {
            if (vals.size() != 2)
                throw io::InputError("range " + name + ": expected lo,hi");
            ranges[name] = vals;
        }
    }
    nlohmann::json doc = {{"seed", c.seed},
                          {"scenarios",
                           {{{"theorem_id", theorem},
                             {"mode", "scan"},
                             {"samples", samples},
                             {"scan_mode", mode},
                             {"seed", c.seed},
                             {"ranges", ranges}}}}};
    auto cfg = io::parse_run_config(doc);
    cfg.grid = c.grid();
    std::vector<io::ScenarioResult> results{io::run_scenario(cfg, 0)};
    print_results(c, cfg, results);
    return kExitOk; // scans report, they never fail the run
}

std::vector<double> union_x(const std::vector<io::ParsedDist>& ds, const ProbGrid& grid)
{
    std::vector<double> xs;
    for (const auto& d : ds)
        for (double u : grid)
            xs.push_back(d.dist.quantile(u));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

int cmd_plotdata(const Common& c, const std::string& kind, std::vector<std::string> specs)
{
    const ProbGrid grid = c.grid().make();
    if (specs.empty()) {
        if (kind == "hazard-curves")
            specs = {"enh(2,1,1)", "enh(0.5,1,0.5)", "enh(1.5,1,0.3)", "enh(0.5,1,3)"};
        else if (kind == "ordering-curves")
            specs = {"max(enh(0.5,1,1), enh(1.5,1,1))", "max(enh(1,1,1), enh(1.5,1,1))"};
        else
            specs = {"enh(0.5,1,2)", "enh(1,1,2)"};
    }
    std::vector<io::ParsedDist> ds;
    for (const auto& s : specs)
        ds.push_back(io::parse_dist(s));
    // repeated specs get a #k suffix so every series keeps its own label
    for (std::size_t k = 1; k < specs.size(); ++k)
        if (std::count(specs.begin(), specs.begin() + static_cast<std::ptrdiff_t>(k), specs[k]))
            specs[k] += " #" + std::to_string(k + 1);

    std::vector<Row> rows;
    if (kind == "hazard-curves") {
        for (std::size_t k = 0; k < ds.size(); ++k)
            for (double u : grid) {
                const double x = ds[k].dist.quantile(u);
                rows.push_back({specs[k], x, ds[k].dist.hazard(x)});
            }
    } else if (kind == "ordering-curves") {
        // survival functions on one shared x grid so rows line up across series
        const auto xs = union_x(ds, grid);
        for (std::size_t k = 0; k < ds.size(); ++k)
            for (double x : xs)
                rows.push_back({specs[k], x, ds[k].dist.sf(x)});
    } else if (kind == "lorenz-curves") {
        for (std::size_t k = 0; k < ds.size(); ++k) {
            const auto curve = lorenz_curve(ds[k].dist, grid);
            if (!curve)
                throw io::InputError("dist: '" + specs[k] + "' has no finite mean");
            for (std::size_t i = 0; i < grid.size(); ++i)
                rows.push_back({specs[k], grid[i], (*curve)[i]});
        }
    } else {
        throw io::InputError("kind: expected hazard-curves, ordering-curves or lorenz-curves");
    }
    emit_rows(c, rows, kind);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ENH/ES lifetimes, stochastic order checks and scenario runner"};
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--grid-points", c.grid_points, "probability grid size")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}))
        ->each([&](const std::string&) { c.grid_given = true; });
    app.add_option("--u-min", c.u_min, "lowest grid probability")->each([&](const std::string&) { c.grid_given = true; });
    app.add_option("--u-max", c.u_max, "highest grid probability")->each([&](const std::string&) { c.grid_given = true; });
    app.add_option("--seed", c.seed, "random seed")->each([&](const std::string&) { c.seed_given = true; });
    app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", c.out, "output file (default stdout)");

    std::string spec, what = "cdf", at;
    auto* eval = app.add_subcommand("eval", "evaluate a distribution");
    eval->add_option("--dist", spec, "distribution spec, e.g. enh(1,1,1)")->required();
    eval->add_option("--what", what, "cdf, sf, pdf, quantile, hazard or shape");
    eval->add_option("--at", at, "comma-separated x (or u for quantile); default: the grid");

    std::string order, fs, gs;
    auto* check = app.add_subcommand("check-order", "check whether F is smaller than G in an order");
    check->add_option("--order", order, "st, hr, lr, disp, rs, convex or lorenz")->required();
    check->add_option("--f", fs, "smaller distribution spec")->required();
    check->add_option("--g", gs, "larger distribution spec")->required();

    std::string config;
    auto* verify = app.add_subcommand("verify", "run the scenarios of a config file");
    verify->add_option("--config", config, "JSON run config")->required();

    std::string theorem, scan_mode = "free";
    std::size_t samples = 100;
    std::vector<std::string> ranges;
    auto* scan = app.add_subcommand("scan", "sample parameters and report violated conclusions");
    scan->add_option("--theorem", theorem, "theorem id, e.g. T3_5")->required();
    scan->add_option("--samples", samples, "number of parameter samples");
    scan->add_option("--scan-mode", scan_mode, "free, relations or constrained");
    scan->add_option("--range", ranges, "shape|scale|power|theta=lo,hi or n=min,max (repeatable)");

    std::string kind = "hazard-curves";
    std::vector<std::string> plot_specs;
    auto* plot = app.add_subcommand("plotdata", "long-format curve data for plotting");
    plot->add_option("--kind", kind, "hazard-curves, ordering-curves or lorenz-curves");
    plot->add_option("--dist", plot_specs, "distribution spec (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval)
            return cmd_eval(c, spec, what, at);
        if (*check)
            return cmd_check_order(c, order, fs, gs);
        if (*verify)
            return cmd_verify(c, config);
        if (*scan)
            return cmd_scan(c, theorem, samples, scan_mode, ranges);
        if (*plot) {
            if (!app.count("--format"))
                c.format = "csv";
            return cmd_plotdata(c, kind, plot_specs);
        }
    } catch (const io::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
