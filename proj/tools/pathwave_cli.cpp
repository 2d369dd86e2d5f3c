// Command-line front end: wires JSON run configurations to the simulation
// pipeline and emits plot-ready CSV/JSON artifacts plus a manifest that
// reproduces the run byte-for-byte.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pathwave/io.hpp"
#include "pathwave/rescale.hpp"
#include "pathwave/rng.hpp"
#include "pathwave/stationary.hpp"
#include "pathwave/sweep.hpp"
#include "pathwave/wave.hpp"

namespace fs = std::filesystem;
using namespace pathwave;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPropagation = 3;
constexpr int kExitNumerical = 4;

struct GlobalArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t threads = 0; // 0: hardware concurrency
    int verbosity = 0;
};

struct RunContext {
    json config;
    fs::path out;
    std::string format;
    std::uint64_t seed;
    std::size_t threads;
    int verbosity;
    int precision = 10;

    void info(const std::string& msg) const {
        if (verbosity > 0) std::fprintf(stderr, "%s\n", msg.c_str());
    }
};

// A manifest wraps the resolved config; accept either form as input.
json unwrap_config(const json& doc, const std::string& command, GlobalArgs& args) {
    if (doc.is_object() && doc.contains("command") && doc.contains("config")) {
        if (doc.at("command") != command)
            throw ConfigError("manifest was produced by command '" +
                              doc.at("command").get<std::string>() + "', not '" + command + "'");
        if (!args.seed_given && doc.contains("seed")) {
            args.seed = doc.at("seed").get<std::uint64_t>();
            args.seed_given = true;
        }
        return doc.at("config");
    }
    return doc;
}

RunContext make_context(const std::string& command, GlobalArgs& args) {
    RunContext ctx;
    json doc = load_json_file(args.config_path);
    ctx.config = unwrap_config(doc, command, args);
    if (!args.seed_given && ctx.config.is_object() && ctx.config.contains("seed"))
        args.seed = ctx.config.at("seed").get<std::uint64_t>();
    ctx.out = args.out_dir;
    ctx.format = args.format;
    ctx.seed = args.seed;
    ctx.threads = args.threads ? args.threads
                               : std::max(1u, std::thread::hardware_concurrency());
    ctx.verbosity = args.verbosity;
    fs::create_directories(ctx.out);
    return ctx;
}

void write_manifest(const RunContext& ctx, const std::string& command,
                    const json& resolved_config) {
    json m;
    m["command"] = command;
    m["config"] = resolved_config;
    m["format"] = ctx.format;
    m["seed"] = ctx.seed;
    write_file_atomic(ctx.out / "manifest.json", m.dump(2) + "\n");
}

int precision_from(StrictObject& o) {
    const std::int64_t p = o.integer_or("precision", 10);
    if (p < 6 || p > 17) throw ConfigError("precision must lie in [6, 17]");
    return static_cast<int>(p);
}

IntegratorConfig integrator_section(StrictObject& o, IntegratorConfig defaults) {
    if (const json* j = o.optional("integrator"))
        return integrator_from_json(*j, defaults, o.path() + "/integrator");
    defaults.validate();
    return defaults;
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>()};
    if (j.is_array()) {
        std::vector<double> v;
        for (const auto& e : j) {
            if (!e.is_number()) throw ConfigError(where + ": expected numbers");
            v.push_back(e.get<double>());
        }
        if (v.empty()) throw ConfigError(where + ": empty list");
        return v;
    }
    throw ConfigError(where + ": expected a number or an array of numbers");
}

std::string label_for(double v) {
    std::string s = format_double(v, 10);
    for (char& c : s)
        if (c == '.' || c == '-' || c == '+') c = c == '.' ? 'p' : 'm';
    return s;
}

Table trajectory_table(const Trajectory& traj, int precision) {
    Table t;
    t.precision = precision;
    t.header = {"t"};
    for (std::size_t i = 1; i <= traj.spec.n(); ++i)
        t.header.push_back("x" + std::to_string(i));
    for (const auto& s : traj.samples) {
        std::vector<double> row{s.t};
        row.insert(row.end(), s.x.begin(), s.x.end());
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(RunContext& ctx) {
    StrictObject o(ctx.config, "");
    (void)o.optional("seed"); // resolved into the manifest's top level
    const int precision = precision_from(o);
    IntegratorConfig cfg =
        integrator_section(o, IntegratorConfig{1e-8, 1e-10, 1.0, 1000.0, 1e-4, false});

    struct Case {
        std::string label;
        PathwaySpec spec;
    };
    std::vector<Case> cases;
    const json* pathway = o.optional("pathway");
    const json* case_list = o.optional("cases");
    if (!pathway == !case_list)
        throw ConfigError("provide exactly one of 'pathway' or 'cases'");
    if (pathway) {
        cases.push_back({"", pathway_from_json(*pathway)});
    } else {
        if (!case_list->is_array()) throw ConfigError("/cases: expected an array");
        std::size_t idx = 0;
        for (const auto& c : *case_list) {
            const std::string where = "/cases[" + std::to_string(idx) + "]";
            StrictObject co(c, where);
            Case cs;
            cs.label = co.text_or("label", std::to_string(idx));
            cs.spec = pathway_from_json(co.require("pathway"), where + "/pathway");
            co.finish();
            cases.push_back(std::move(cs));
            ++idx;
        }
    }

    std::vector<double> snapshot_times;
    if (const json* st = o.optional("snapshot_times"))
        snapshot_times = number_list(*st, "/snapshot_times");
    o.finish();

    for (const auto& cs : cases) {
        const std::string suffix = cs.label.empty() ? "" : "_" + cs.label;
        ctx.info("integrating" + suffix);
        const Trajectory traj = integrate(cs.spec, cfg);
        write_table(ctx.out, "trajectory" + suffix, trajectory_table(traj, precision),
                    ctx.format);
        for (double ts : snapshot_times) {
            const std::size_t j = static_cast<std::size_t>(std::min(
                std::max(std::llround(ts / cfg.sample_dt), 0LL),
                static_cast<long long>(traj.size() - 1)));
            Table snap;
            snap.precision = precision;
            snap.header = {"i", "x_i"};
            for (std::size_t i = 0; i < traj.spec.n(); ++i)
                snap.rows.push_back({static_cast<double>(i + 1), traj.samples[j].x[i]});
            write_table(ctx.out, "snapshot" + suffix + "_t" + label_for(ts), snap, ctx.format);
        }
    }

    json resolved;
    if (cases.size() == 1 && cases[0].label.empty()) {
        resolved["pathway"] = pathway_to_json(cases[0].spec);
    } else {
        json arr = json::array();
        for (const auto& cs : cases)
            arr.push_back({{"label", cs.label}, {"pathway", pathway_to_json(cs.spec)}});
        resolved["cases"] = std::move(arr);
    }
    resolved["integrator"] = integrator_to_json(cfg);
    if (!snapshot_times.empty()) resolved["snapshot_times"] = snapshot_times;
    resolved["precision"] = precision;
    write_manifest(ctx, "simulate", resolved);
    return 0;
}

// --------------------------------------------------------------- stationary

int cmd_stationary(RunContext& ctx) {
    StrictObject o(ctx.config, "");
    (void)o.optional("seed"); // resolved into the manifest's top level
    const int precision = precision_from(o);
    const double alpha = o.number_or("alpha", 1.0);
    const double phi = o.number_or("phi", 0.0);
    std::vector<double> b_values;
    if (const json* b = o.optional("B")) {
        b_values = number_list(*b, "/B");
        if (o.has("beta")) throw ConfigError("'B' and 'beta' are mutually exclusive");
    } else if (const json* beta = o.optional("beta")) {
        for (double bv : number_list(*beta, "/beta")) b_values.push_back(2.0 * bv - 1.0);
    } else {
        throw ConfigError("missing 'B' or 'beta'");
    }
    const std::vector<double> x0_values = number_list(o.require("x0"), "/x0");
    const std::int64_t n = o.integer_or("n", 400);
    if (n < 1) throw ConfigError("/n: must be positive");
    o.finish();

    json fits = json::array();
    for (double B : b_values) {
        for (double x0 : x0_values) {
            EdgeParams p{alpha, (B + 1.0) / 2.0, phi};
            const StationaryProfile prof =
                stationary_profile(x0, p, static_cast<std::size_t>(n));
            Table t;
            t.precision = precision;
            t.header = {"i", "x_i", "eps_i"};
            for (std::size_t i = 1; i <= prof.values.size(); ++i)
                t.rows.push_back(
                    {static_cast<double>(i), prof.values[i - 1], prof.eps(i)});
            const std::string stem = "profile_B" + label_for(B) + "_x0" + label_for(x0);
            write_table(ctx.out, stem, t, ctx.format);

            json fit;
            fit["B"] = B;
            fit["phi"] = phi;
            fit["x0"] = x0;
            fit["lambda"] = prof.lambda;
            fit["delta_i_approx"] =
                prof.delta_i_approx ? json(*prof.delta_i_approx) : json();
            try {
                fit["delta_i_fit"] = penetration_depth_fit(prof);
            } catch (const DomainError& e) {
                fit["delta_i_fit"] = json();
                fit["fit_error"] = e.what();
            }
            fits.push_back(std::move(fit));
        }
    }
    write_file_atomic(ctx.out / "fits.json", fits.dump(2) + "\n");

    json resolved{{"alpha", alpha}, {"phi", phi},       {"B", b_values},
                  {"x0", x0_values}, {"n", n},          {"precision", precision}};
    write_manifest(ctx, "stationary", resolved);
    return 0;
}

// ---------------------------------------------------------------- wavespeed

int cmd_wavespeed(RunContext& ctx) {
    StrictObject o(ctx.config, "");
    (void)o.optional("seed"); // resolved into the manifest's top level
    const int precision = precision_from(o);
    const double alpha = o.number_or("alpha", 1.0);
    std::vector<double> b_values;
    if (const json* b = o.optional("B")) {
        b_values = number_list(*b, "/B");
    } else if (const json* beta = o.optional("beta")) {
        for (double bv : number_list(*beta, "/beta")) b_values.push_back(2.0 * bv - 1.0);
    } else {
        throw ConfigError("missing 'B' or 'beta'");
    }
    // Default speed-protocol sampling: shifts of a node or more per sample
    // keep the interpolation bias of the estimator negligible.
    IntegratorConfig cfg =
        integrator_section(o, IntegratorConfig{1e-8, 1e-10, 32.0, 2e5, 1e-4, true});
    cfg.stop_on_arrival = true;

    std::vector<double> phis;
    bool phi_from_count = false;
    std::int64_t phi_count = 25;
    if (const json* pj = o.optional("phi")) {
        if (pj->is_object()) {
            StrictObject po(*pj, "/phi");
            phi_count = po.integer("count");
            po.finish();
            if (phi_count < 1) throw ConfigError("/phi/count: must be positive");
            phi_from_count = true;
        } else {
            phis = number_list(*pj, "/phi");
        }
    } else {
        phi_from_count = true;
    }
    const std::string direction = o.text_or("direction", "activation");
    if (direction != "activation" && direction != "inhibition")
        throw ConfigError("/direction: expected 'activation' or 'inhibition'");
    const std::int64_t n = o.integer_or("n", 200);
    const bool emit_series = o.boolean_or("emit_series", false);
    o.finish();

    Table speeds;
    speeds.precision = precision;
    speeds.header = {"B", "phi", "speed", "arrival_time"};
    for (double B : b_values) {
        const double phi_c = 1.0 / B;
        std::vector<double> row_phis = phis;
        if (phi_from_count) {
            row_phis.clear();
            // Strictly inside the bistable window; endpoints stall or diverge.
            const double lo = -phi_c + 0.01, hi = phi_c - 0.01;
            if (phi_count == 1) {
                row_phis.push_back(0.0);
            } else {
                for (std::int64_t k = 0; k < phi_count; ++k)
                    row_phis.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                                static_cast<double>(phi_count - 1));
            }
        }
        for (double phi : row_phis) {
            EdgeParams p{alpha, (B + 1.0) / 2.0, phi};
            const PathwaySpec spec =
                direction == "activation"
                    ? PathwaySpec::uniform(static_cast<std::size_t>(n), p, 1.0, -1.0)
                    : PathwaySpec::uniform(static_cast<std::size_t>(n), p, -1.0, 1.0);
            ctx.info("measuring B=" + format_double(B, 6) + " phi=" + format_double(phi, 6));
            const SpeedMeasurement m = measure_asymptotic_speed(spec, cfg);
            speeds.rows.push_back({B, phi, m.speed, m.arrival_time});
            if (emit_series) {
                const Trajectory traj = integrate(spec, cfg);
                const VelocitySeries vs =
                    velocity_series(traj, original_positions(spec.n()), Frame::Original);
                Table st;
                st.precision = precision;
                st.header = {"t", "c"};
                for (std::size_t j = 0; j < vs.values.size(); ++j)
                    st.rows.push_back({vs.times[j], vs.values[j]});
                write_table(ctx.out, "velocity_B" + label_for(B) + "_phi" + label_for(phi), st,
                            ctx.format);
            }
        }
    }
    write_table(ctx.out, "speeds", speeds, ctx.format);

    json resolved{{"alpha", alpha},
                  {"B", b_values},
                  {"direction", direction},
                  {"n", n},
                  {"emit_series", emit_series},
                  {"integrator", integrator_to_json(cfg)},
                  {"precision", precision}};
    if (phi_from_count)
        resolved["phi"] = {{"count", phi_count}};
    else
        resolved["phi"] = phis;
    write_manifest(ctx, "wavespeed", resolved);
    return 0;
}

// ------------------------------------------------------------------ rescale

GradientSpec gradient_from_json(const json& j, const std::string& path) {
    StrictObject o(j, path);
    GradientSpec g;
    const std::string kind = o.text("kind");
    if (kind == "alpha_linear")
        g.kind = GradientSpec::Kind::AlphaLinear;
    else if (kind == "b_log")
        g.kind = GradientSpec::Kind::BLog;
    else if (kind == "phi_linear")
        g.kind = GradientSpec::Kind::PhiLinear;
    else
        throw ConfigError(path + "/kind: expected alpha_linear, b_log or phi_linear");
    g.lo = o.number("lo");
    g.hi = o.number("hi");
    g.n = static_cast<std::size_t>(o.integer_or("n", 200));
    StrictObject bo(o.require("base"), path + "/base");
    g.base.alpha = bo.number_or("alpha", 1.0);
    if (bo.has("B")) {
        g.base.beta = (bo.number("B") + 1.0) / 2.0;
        if (bo.has("beta")) throw ConfigError(path + "/base: 'B' and 'beta' are exclusive");
    } else {
        g.base.beta = bo.number_or("beta", 1.5);
    }
    g.base.phi = bo.number_or("phi", 0.0);
    bo.finish();
    o.finish();
    return g;
}

json gradient_to_json(const GradientSpec& g) {
    const char* kind = g.kind == GradientSpec::Kind::AlphaLinear ? "alpha_linear"
                       : g.kind == GradientSpec::Kind::BLog     ? "b_log"
                                                                : "phi_linear";
    return {{"kind", kind},
            {"lo", g.lo},
            {"hi", g.hi},
            {"n", g.n},
            {"base",
             {{"alpha", g.base.alpha}, {"beta", g.base.beta}, {"phi", g.base.phi}}}};
}

StochasticEnsembleSpec stochastic_from_json(const json& j, std::uint64_t seed,
                                            const std::string& path) {
    StrictObject o(j, path);
    StochasticEnsembleSpec s;
    s.alpha0 = o.number_or("alpha0", 1.0);
    s.beta0 = o.number_or("beta0", 5.0);
    s.sigma = o.number_or("sigma", 0.0);
    s.phi = o.number_or("phi", 0.0);
    s.n = static_cast<std::size_t>(o.integer_or("n", 200));
    s.realizations = static_cast<std::size_t>(o.integer_or("realizations", 200));
    s.seed = seed;
    o.finish();
    s.validate();
    return s;
}

json stochastic_to_json(const StochasticEnsembleSpec& s) {
    return {{"alpha0", s.alpha0}, {"beta0", s.beta0},
            {"sigma", s.sigma},   {"phi", s.phi},
            {"n", s.n},           {"realizations", s.realizations}};
}

struct OracleSettings {
    std::string mode = "auto"; // auto | exact | table
    std::string file;          // optional table to load / persist
    std::int64_t b_points = 32;
    std::int64_t phi_points = 21;
};

OracleSettings oracle_from_json(StrictObject& o) {
    OracleSettings s;
    if (const json* j = o.optional("oracle")) {
        StrictObject oo(*j, o.path() + "/oracle");
        s.mode = oo.text_or("mode", "auto");
        if (s.mode != "auto" && s.mode != "exact" && s.mode != "table")
            throw ConfigError("/oracle/mode: expected auto, exact or table");
        s.file = oo.text_or("file", "");
        s.b_points = oo.integer_or("b_points", 32);
        s.phi_points = oo.integer_or("phi_points", 21);
        oo.finish();
    }
    return s;
}

json oracle_to_json(const OracleSettings& s) {
    json j{{"mode", s.mode}, {"b_points", s.b_points}, {"phi_points", s.phi_points}};
    if (!s.file.empty()) j["file"] = s.file;
    return j;
}

// Build the oracle a pathway needs: exact when few distinct (B, phi) pairs,
// an interpolation table otherwise.
SpeedOracle build_oracle(const PathwaySpec& spec, const OracleSettings& set,
                         const RunContext& ctx, bool* built_table) {
    *built_table = false;
    if (!set.file.empty() && fs::exists(set.file)) {
        std::ifstream in(set.file);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        ctx.info("loading speed table from " + set.file);
        return SpeedOracle::table(SpeedTable::from_json(text));
    }
    std::vector<std::pair<std::string, std::string>> distinct;
    double bmin = 1e300, bmax = 0.0, pmax = 0.0;
    for (const auto& e : spec.edges) {
        const double B = e.B();
        bmin = std::min(bmin, B);
        bmax = std::max(bmax, B);
        pmax = std::max(pmax, std::abs(e.phi) * B);
        auto key = std::make_pair(format_double(B, 12), format_double(e.phi, 12));
        if (std::find(distinct.begin(), distinct.end(), key) == distinct.end())
            distinct.push_back(key);
    }
    const bool exact = set.mode == "exact" || (set.mode == "auto" && distinct.size() <= 8);
    if (exact) {
        ctx.info("exact speed oracle (" + std::to_string(distinct.size()) +
                 " distinct parameter pairs)");
        return SpeedOracle::exact();
    }
    const bool phi_varies = pmax > 0.0;
    ctx.info("building speed table (" + std::to_string(set.b_points) + " x " +
             std::to_string(phi_varies ? set.phi_points : 1) + ")");
    const SpeedOracle base = SpeedOracle::exact();
    SpeedTable table = SpeedTable::build(
        (bmin - 1.0) / 1.1, (bmax - 1.0) * 1.1, static_cast<std::size_t>(set.b_points),
        phi_varies ? static_cast<std::size_t>(set.phi_points) : 1, base.measurer(),
        ctx.threads);
    *built_table = true;
    return SpeedOracle::table(std::move(table));
}

void write_metrics(const RunContext& ctx, const ComparisonResult& r, int precision) {
    Table coords;
    coords.precision = precision;
    coords.header = {"i", "s_i", "ds_i", "c_i"};
    for (std::size_t i = 0; i < r.coords.ds.size(); ++i)
        coords.rows.push_back({static_cast<double>(i + 1), r.coords.s[i + 1], r.coords.ds[i],
                               r.coords.speeds[i]});
    write_table(ctx.out, "coordinates", coords, ctx.format);

    auto velocity_table = [&](const VelocitySeries& s) {
        Table t;
        t.precision = precision;
        t.header = {"t", "c"};
        for (std::size_t j = 0; j < s.values.size(); ++j)
            t.rows.push_back({s.times[j], s.values[j]});
        return t;
    };
    auto residual_table = [&](const ShapeResidualSeries& s) {
        Table t;
        t.precision = precision;
        t.header = {"t", "R"};
        for (std::size_t j = 0; j < s.values.size(); ++j)
            t.rows.push_back({s.times[j], s.values[j]});
        return t;
    };
    write_table(ctx.out, "velocity_original", velocity_table(r.original.velocity), ctx.format);
    write_table(ctx.out, "velocity_rescaled", velocity_table(r.rescaled.velocity), ctx.format);
    write_table(ctx.out, "residual_original", residual_table(r.original.residual), ctx.format);
    write_table(ctx.out, "residual_rescaled", residual_table(r.rescaled.residual), ctx.format);

    json report;
    report["c_bar"] = r.coords.c_bar;
    report["window"] = {{"start", r.window_start}, {"end", r.window_end}};
    report["original"] = {{"frame", "original"},
                          {"t_J", r.original.residual.reference_time},
                          {"vise", r.original.vise},
                          {"rise", r.original.rise}};
    report["rescaled"] = {{"frame", "rescaled"},
                          {"t_J", r.rescaled.residual.reference_time},
                          {"vise", r.rescaled.vise},
                          {"rise", r.rescaled.rise}};
    write_file_atomic(ctx.out / "report.json", report.dump(2) + "\n");
}

int cmd_rescale(RunContext& ctx) {
    StrictObject o(ctx.config, "");
    (void)o.optional("seed"); // resolved into the manifest's top level
    const int precision = precision_from(o);
    const IntegratorConfig cfg =
        integrator_section(o, IntegratorConfig{1e-8, 1e-10, 1.0, 2e4, 1e-4, true});
    const OracleSettings oracle_set = oracle_from_json(o);

    const json* pathway = o.optional("pathway");
    const json* gradient = o.optional("gradient");
    const json* stochastic = o.optional("stochastic");
    const int sources = (pathway != nullptr) + (gradient != nullptr) + (stochastic != nullptr);
    if (sources != 1)
        throw ConfigError("provide exactly one of 'pathway', 'gradient' or 'stochastic'");

    PathwaySpec spec;
    json source_json;
    std::int64_t realization = 0;
    if (pathway) {
        spec = pathway_from_json(*pathway);
        source_json["pathway"] = pathway_to_json(spec);
    } else if (gradient) {
        const GradientSpec g = gradient_from_json(*gradient, "/gradient");
        spec = build_gradient(g);
        source_json["gradient"] = gradient_to_json(g);
    } else {
        realization = o.integer_or("realization", 0);
        const StochasticEnsembleSpec s = stochastic_from_json(*stochastic, ctx.seed, "/stochastic");
        spec = sample_realization(s, static_cast<std::size_t>(realization));
        source_json["stochastic"] = stochastic_to_json(s);
        source_json["realization"] = realization;
    }
    o.finish();

    bool built_table = false;
    const SpeedOracle oracle = build_oracle(spec, oracle_set, ctx, &built_table);
    ctx.info("running dual-frame comparison");
    const ComparisonResult r = run_comparison(spec, oracle, cfg, /*full_series=*/true);
    write_metrics(ctx, r, precision);
    if (built_table)
        write_file_atomic(ctx.out / "oracle_table.json", oracle.speed_table().to_json() + "\n");

    json resolved = source_json;
    resolved["integrator"] = integrator_to_json(cfg);
    resolved["oracle"] = oracle_to_json(oracle_set);
    resolved["precision"] = precision;
    write_manifest(ctx, "rescale", resolved);
    return 0;
}

// -------------------------------------------------------------------- sweep

int cmd_sweep(RunContext& ctx) {
    StrictObject o(ctx.config, "");
    (void)o.optional("seed"); // resolved into the manifest's top level
    const int precision = precision_from(o);
    // t_end acts as the fragmentation horizon: realizations that have not
    // reached the terminal node by then are excluded and tallied.
    const IntegratorConfig cfg =
        integrator_section(o, IntegratorConfig{1e-8, 1e-10, 1.0, 1150.0, 1e-4, true});

    StochasticEnsembleSpec ens;
    if (const json* e = o.optional("ensemble"))
        ens = stochastic_from_json(*e, ctx.seed, "/ensemble");
    else
        ens.seed = ctx.seed;

    std::vector<double> grid;
    if (const json* g = o.optional("sigma_grid")) {
        if (g->is_object()) {
            StrictObject go(*g, "/sigma_grid");
            const std::int64_t count = go.integer("count");
            go.finish();
            if (count < 2) throw ConfigError("/sigma_grid/count: must be at least 2");
            for (std::int64_t i = 0; i < count; ++i)
                grid.push_back(static_cast<double>(i) / static_cast<double>(count - 1));
        } else {
            grid = number_list(*g, "/sigma_grid");
        }
    } else {
        for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    }
    const bool emit_details = o.boolean_or("emit_details", false);
    const std::int64_t b_points = o.integer_or("oracle_b_points", 32);
    o.finish();

    ctx.info("building sweep speed table");
    const SpeedOracle oracle =
        make_sweep_oracle(ens, grid, SpeedOracle::MeasureConfig{},
                          static_cast<std::size_t>(b_points), ctx.threads);
    ctx.info("running sweep (" + std::to_string(grid.size()) + " sigma levels x " +
             std::to_string(ens.realizations) + " realizations)");
    const SweepSummary sum = sweep(ens, grid, oracle, cfg, ctx.threads);

    Table summary;
    summary.precision = precision;
    summary.header = {"sigma", "metric", "frame", "median", "q1", "q3", "excluded"};
    // metric column: 0 = vise, 1 = rise; frame column: 0 = original, 1 = rescaled.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ex = static_cast<double>(sum.excluded[i]);
        summary.rows.push_back({grid[i], 0, 0, sum.vise_original[i].median,
                                sum.vise_original[i].q1, sum.vise_original[i].q3, ex});
        summary.rows.push_back({grid[i], 0, 1, sum.vise_rescaled[i].median,
                                sum.vise_rescaled[i].q1, sum.vise_rescaled[i].q3, ex});
        summary.rows.push_back({grid[i], 1, 0, sum.rise_original[i].median,
                                sum.rise_original[i].q1, sum.rise_original[i].q3, ex});
        summary.rows.push_back({grid[i], 1, 1, sum.rise_rescaled[i].median,
                                sum.rise_rescaled[i].q1, sum.rise_rescaled[i].q3, ex});
    }
    write_table(ctx.out, "summary", summary, ctx.format);

    Table extrema;
    extrema.precision = precision;
    extrema.header = {"sigma", "param", "mean_min", "mean_max"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        extrema.rows.push_back({grid[i], 0, sum.alpha_mean_min[i], sum.alpha_mean_max[i]});
        extrema.rows.push_back({grid[i], 1, sum.beta_mean_min[i], sum.beta_mean_max[i]});
    }
    write_table(ctx.out, "extrema", extrema, ctx.format);

    if (emit_details) {
        std::string lines;
        for (const auto& d : sum.details) {
            json j{{"sigma", grid[d.sigma_index]},
                   {"realization", d.realization},
                   {"included", d.included},
                   {"vise_original", d.vise_original},
                   {"vise_rescaled", d.vise_rescaled},
                   {"rise_original", d.rise_original},
                   {"rise_rescaled", d.rise_rescaled}};
            lines += j.dump() + "\n";
        }
        write_file_atomic(ctx.out / "details.jsonl", lines);
    }

    json resolved;
    resolved["ensemble"] = stochastic_to_json(ens);
    resolved["sigma_grid"] = grid;
    resolved["integrator"] = integrator_to_json(cfg);
    resolved["emit_details"] = emit_details;
    resolved["oracle_b_points"] = b_points;
    resolved["precision"] = precision;
    write_manifest(ctx, "sweep", resolved);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete traveling-wave simulation for enzymatic signaling cascades"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalArgs args;
    app.add_option("--config", args.config_path, "JSON run configuration (or a manifest)")
        ->required();
    app.add_option("--out", args.out_dir, "output directory");
    app.add_option("--seed", args.seed, "random seed")->each([&](const std::string&) {
        args.seed_given = true;
    });
    app.add_option("--threads", args.threads, "worker threads (default: all cores)");
    app.add_option("--format", args.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("-v,--verbose", args.verbosity, "progress logging to stderr");

    auto* simulate = app.add_subcommand("simulate", "integrate cascades, write trajectories");
    auto* stationary = app.add_subcommand("stationary", "stationary profiles and tail fits");
    auto* wavespeed = app.add_subcommand("wavespeed", "asymptotic speed tables and series");
    auto* rescale = app.add_subcommand("rescale", "dual-frame velocity/shape comparison");
    auto* sweep_cmd = app.add_subcommand("sweep", "stochastic heterogeneity sweep");

    CLI11_PARSE(app, argc, argv);

    const std::string command = simulate->parsed()    ? "simulate"
                                : stationary->parsed() ? "stationary"
                                : wavespeed->parsed()  ? "wavespeed"
                                : rescale->parsed()    ? "rescale"
                                                       : "sweep";
    try {
        RunContext ctx = make_context(command, args);
        if (command == "simulate") return cmd_simulate(ctx);
        if (command == "stationary") return cmd_stationary(ctx);
        if (command == "wavespeed") return cmd_wavespeed(ctx);
        if (command == "rescale") return cmd_rescale(ctx);
        return cmd_sweep(ctx);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const PropagationError& e) {
        std::fprintf(stderr, "propagation error: %s\n", e.what());
        return kExitPropagation;
    } catch (const IntegrationError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kExitNumerical;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
