#include "fdside/cli.hpp"

#include "fdside/analysis.hpp"
#include "fdside/bounds.hpp"
#include "fdside/optimize.hpp"
#include "fdside/verify.hpp"

#include "internal.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace fdside::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

struct Globals {
    Format format = Format::Csv;
    std::string out_path;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

Json params_json(const ChannelParams& p)
{
    return Json{{"snr1", p.snr1}, {"snr2", p.snr2}, {"inr", p.inr}, {"snr_side", p.snr_side}, {"w", p.w}};
}

Json pentagon_json(const RatePentagon& r)
{
    return Json{{"r1_max", json_number(r.r1_max)},
                {"r2_max", json_number(r.r2_max)},
                {"sum_max", json_number(r.sum_max)}};
}

std::string opt_cell(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string{};
}

// ---------------------------------------------------------------- region

struct RegionOptions {
    ChannelInputs channel;
    std::string scheme;
    std::optional<double> lambda, beta, k;
    bool optimize = false;
    double resolution = 0.01;
};

struct RegionOutput {
    std::string scheme;
    ChannelParams params;
    RatePentagon pentagon;
    bool has_pentagon = true;
    std::optional<double> lambda, beta, k;
    std::string method;
    std::vector<FrontierSample> frontier;
    Frontier plain_frontier; // outer envelope
    std::vector<std::string> warnings;
};

void forbid(const std::optional<double>& v, const char* flag, const std::string& scheme)
{
    if (v)
        throw UsageError(std::string(flag) + " does not apply to --scheme " + scheme);
}

RegionOutput compute_region(const RegionOptions& o)
{
    RegionOutput r;
    r.scheme = o.scheme;
    r.params = o.channel.resolve();
    const ChannelParams& p = r.params;

    if (o.scheme == "outer-nointerf" || o.scheme == "outer-envelope") {
        forbid(o.lambda, "--lambda", o.scheme);
        forbid(o.beta, "--beta", o.scheme);
        forbid(o.k, "--k", o.scheme);
        if (o.optimize)
            throw UsageError("--optimize does not apply to --scheme " + o.scheme);
        if (o.scheme == "outer-nointerf") {
            r.pentagon = no_interference_outer(p);
        } else {
            r.has_pentagon = false;
            r.plain_frontier = genie_outer_envelope(p, o.resolution).frontier;
        }
        return r;
    }
    if (o.scheme == "outer-genie") {
        forbid(o.beta, "--beta", o.scheme);
        forbid(o.k, "--k", o.scheme);
        if (o.optimize || !o.lambda)
            throw UsageError("--scheme outer-genie needs --lambda");
        r.lambda = o.lambda;
        r.pentagon = genie_outer(p, *o.lambda).pentagon;
        return r;
    }

    const auto scheme = parse_scheme(o.scheme);
    if (!scheme)
        throw UsageError("unknown scheme: " + o.scheme);

    const bool explicit_split = o.lambda || o.beta || o.k;
    if (explicit_split && o.optimize)
        throw UsageError("give either an explicit split or --optimize, not both");

    if (*scheme == Scheme::EC && !is_integer_bandwidth(p.w) && p.w >= 1.0)
        r.warnings.push_back("non-integer-w");

    if (o.optimize) {
        const OptResult opt = maximize_sum(*scheme, p);
        r.method = opt.method;
        if (const auto* s = std::get_if<PowerSplit>(&opt.best_split)) {
            if (*scheme != Scheme::NoSC)
                r.lambda = s->lambda;
            if (*scheme == Scheme::BC || *scheme == Scheme::NoSC)
                r.beta = s->beta;
        } else {
            r.k = std::get<EcScale>(opt.best_split).k;
        }
        r.frontier = pareto_frontier(*scheme, p, o.resolution);
    } else {
        switch (*scheme) {
        case Scheme::BC:
            forbid(o.k, "--k", o.scheme);
            if (!o.lambda)
                throw UsageError("--scheme bc needs --lambda (and optionally --beta) or --optimize");
            r.lambda = o.lambda;
            r.beta = o.beta;
            break;
        case Scheme::CC:
        case Scheme::DC:
            forbid(o.k, "--k", o.scheme);
            forbid(o.beta, "--beta", o.scheme);
            if (!o.lambda)
                throw UsageError("--scheme " + o.scheme + " needs --lambda or --optimize");
            r.lambda = o.lambda;
            break;
        case Scheme::EC:
            forbid(o.lambda, "--lambda", o.scheme);
            forbid(o.beta, "--beta", o.scheme);
            if (!o.k)
                throw UsageError("--scheme ec needs --k or --optimize");
            r.k = o.k;
            break;
        case Scheme::NoSC:
            forbid(o.lambda, "--lambda", o.scheme);
            forbid(o.k, "--k", o.scheme);
            r.beta = o.beta;
            break;
        }
    }

    switch (*scheme) {
    case Scheme::BC: {
        PowerSplit s{*r.lambda, 0.0};
        const Regime reg = classify_regime(p);
        if (reg == Regime::Weak) {
            s.beta = r.beta ? *r.beta : bc_beta_star(p, s.lambda).beta;
        } else if (r.beta && *r.beta != 0.0) {
            r.warnings.push_back("beta-ignored-outside-weak-regime");
        }
        r.beta = s.beta;
        r.pentagon = bc_region(p, s);
        break;
    }
    case Scheme::CC: r.pentagon = cc_region(p, *r.lambda); break;
    case Scheme::DC: r.pentagon = dc_region(p, *r.lambda); break;
    case Scheme::EC: r.pentagon = ec_region(p, EcScale{*r.k}); break;
    case Scheme::NoSC: {
        ChannelParams z = p;
        z.w = 0.0;
        const bool weak = classify_regime(z) == Regime::Weak;
        r.beta = weak ? (r.beta ? *r.beta : bc_beta_star(z, 0.0).beta) : 0.0;
        r.pentagon = z_channel_region(p, r.beta);
        break;
    }
    }
    return r;
}

std::string emit_region(const RegionOutput& r, Format f)
{
    const std::string regime(to_string(classify_regime(r.params)));
    if (f == Format::Json) {
        Json j;
        j["command"] = "region";
        j["scheme"] = r.scheme;
        j["normalization"] = "per-Wm";
        j["params"] = params_json(r.params);
        j["regime"] = regime;
        Json split = Json::object();
        if (r.lambda)
            split["lambda"] = *r.lambda;
        if (r.beta)
            split["beta"] = *r.beta;
        if (r.k) {
            split["k"] = *r.k;
            split["side_power_fraction"] = ec_side_power_fraction(*r.k);
        }
        j["split"] = split;
        if (!r.method.empty())
            j["method"] = r.method;
        if (r.has_pentagon) {
            j["pentagon"] = pentagon_json(r.pentagon);
            j["max_sum_rate"] = json_number(r.pentagon.max_sum_rate());
        }
        if (!r.frontier.empty()) {
            Json arr = Json::array();
            for (const auto& s : r.frontier) {
                Json e{{"r1", s.point.r1}, {"r2", s.point.r2}};
                if (const auto* ps = std::get_if<PowerSplit>(&s.split)) {
                    e["lambda"] = ps->lambda;
                    e["beta"] = ps->beta;
                } else {
                    e["k"] = std::get<EcScale>(s.split).k;
                }
                arr.push_back(e);
            }
            j["frontier"] = arr;
        }
        if (!r.plain_frontier.empty()) {
            Json arr = Json::array();
            for (const auto& pt : r.plain_frontier)
                arr.push_back(Json{{"r1", pt.r1}, {"r2", pt.r2}});
            j["frontier"] = arr;
        }
        Json warn = Json::array();
        for (const auto& w : r.warnings)
            warn.push_back(w);
        j["warnings"] = warn;
        return dump_json(j);
    }

    CsvTable t;
    t.header = {"kind", "scheme", "regime", "normalization", "r1", "r2", "sum", "lambda", "beta", "k"};
    if (r.has_pentagon) {
        t.rows.push_back({"pentagon", r.scheme, regime, "per-Wm", format_number(r.pentagon.r1_max),
                          format_number(r.pentagon.r2_max), format_number(r.pentagon.sum_max),
                          opt_cell(r.lambda), opt_cell(r.beta), opt_cell(r.k)});
    }
    for (const auto& s : r.frontier) {
        std::optional<double> l, b, k;
        if (const auto* ps = std::get_if<PowerSplit>(&s.split)) {
            l = ps->lambda;
            b = ps->beta;
        } else {
            k = std::get<EcScale>(s.split).k;
        }
        t.rows.push_back({"frontier", r.scheme, regime, "per-Wm", format_number(s.point.r1),
                          format_number(s.point.r2), "", opt_cell(l), opt_cell(b), opt_cell(k)});
    }
    for (const auto& pt : r.plain_frontier) {
        t.rows.push_back({"frontier", r.scheme, regime, "per-Wm", format_number(pt.r1), format_number(pt.r2),
                          "", "", "", ""});
    }
    return write_csv(t);
}

// ----------------------------------------------------------------- sweep

struct SweepOptions {
    double snr_db = 15.0;
    double w = 1.0;
    std::string nu = "eq-mu";
    std::string mu = "0:2:0.01";
    int figure = 6;
};

SweepConfig sweep_config(const SweepOptions& o, unsigned threads)
{
    SweepConfig c;
    c.snr_db = o.snr_db;
    c.w = o.w;
    c.threads = threads;
    if (o.nu == "eq-mu") {
        c.nu_policy = NuPolicy::EqualMu;
    } else {
        c.nu_policy = NuPolicy::Constant;
        try {
            std::size_t used = 0;
            c.nu = std::stod(o.nu, &used);
            if (used != o.nu.size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw UsageError("--nu must be 'eq-mu' or a number, got '" + o.nu + "'");
        }
        if (!(c.nu >= 0.0))
            throw UsageError("--nu must be non-negative");
    }
    double vals[3];
    std::istringstream in(o.mu);
    std::string part;
    int n = 0;
    while (std::getline(in, part, ':')) {
        if (n == 3)
            throw UsageError("--mu takes START:END:STEP");
        try {
            std::size_t used = 0;
            vals[n] = std::stod(part, &used);
            if (used != part.size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw UsageError("--mu takes START:END:STEP, got '" + o.mu + "'");
        }
        ++n;
    }
    if (n != 3)
        throw UsageError("--mu takes START:END:STEP, got '" + o.mu + "'");
    c.mu_start = vals[0];
    c.mu_end = vals[1];
    c.mu_step = vals[2];
    if (!(c.mu_step > 0.0) || !(c.mu_end >= c.mu_start) || !(c.mu_start >= 0.0))
        throw UsageError("--mu range is empty: need 0 <= START <= END and STEP > 0");
    return c;
}

std::string emit_sweep(const SweepConfig& c, int figure, const std::vector<SweepRow>& rows, Format f)
{
    if (f == Format::Json) {
        Json j;
        j["command"] = "sweep";
        j["figure"] = figure;
        j["normalization"] = "per-Wm";
        j["snr_db"] = c.snr_db;
        j["w"] = c.w;
        j["nu_policy"] = c.nu_policy == NuPolicy::EqualMu ? Json("eq-mu") : Json(c.nu);
        j["mu"] = Json{{"start", c.mu_start}, {"end", c.mu_end}, {"step", c.mu_step}};
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json e{{"mu", r.mu},
                   {"nu", r.nu},
                   {"scheme", std::string(to_string(r.scheme))},
                   {"gain", r.gain},
                   {"gain_ratio_vs_nosc", r.gain_ratio_vs_nosc},
                   {"optimal_lambda", r.optimal_lambda},
                   {"sum_rate", r.sum_rate}};
            if (r.ec_k)
                e["k"] = *r.ec_k;
            arr.push_back(e);
        }
        j["rows"] = arr;
        return dump_json(j);
    }
    CsvTable t;
    t.header = {"mu", "scheme", "gain", "gain_ratio_vs_nosc", "optimal_lambda", "sum_rate"};
    for (const auto& r : rows) {
        t.rows.push_back({format_number(r.mu), std::string(to_string(r.scheme)), format_number(r.gain),
                          format_number(r.gain_ratio_vs_nosc), format_number(r.optimal_lambda),
                          format_number(r.sum_rate)});
    }
    return write_csv(t);
}

// ------------------------------------------------------------------- gap

struct GapOptions {
    std::string scheme = "bc";
    std::optional<std::size_t> draws;
    std::vector<double> w_values;
    bool constrain = false;
};

std::string emit_gap(const GapSuiteConfig& c, const GapSuiteResult& r, Format f)
{
    const GapReport& g = r.worst_report;
    const ChannelParams& p = r.worst_draw.params;
    if (f == Format::Json) {
        Json j;
        j["command"] = "gap";
        j["scheme"] = std::string(to_string(c.scheme));
        j["normalization"] = "per-total-bandwidth";
        j["seed"] = c.seed;
        j["draws"] = r.draws;
        j["conditioned_draws"] = r.conditioned_draws;
        j["w_values"] = c.w_values;
        j["constrain_conditions"] = c.constrain_conditions;
        j["max_d_r1"] = r.max_d_r1;
        j["max_d_r2"] = r.max_d_r2;
        j["max_d_sum"] = r.max_d_sum;
        j["max_scaled_gap"] = Json{{"r1", r.max_scaled_r1}, {"r2", r.max_scaled_r2}, {"sum", r.max_scaled_sum}};
        j["ceilings_scaled"] = Json{{"r1", r.ceiling_r1}, {"r2", r.ceiling_r2}, {"sum", r.ceiling_sum}};
        j["violations"] = r.violations;
        j["analytic_violations"] = r.analytic_violations;
        if (c.scheme == Scheme::BC)
            j["strong_sum_exceeds_bound_without_common_term"] = r.uncorrected_strong_exceedances;
        Json worst = params_json(p);
        if (c.scheme == Scheme::BC)
            worst["lambda"] = r.worst_draw.lambda;
        worst["regime"] = std::string(to_string(g.regime));
        worst["d_r1"] = g.d_r1;
        worst["d_r2"] = g.d_r2;
        worst["d_sum"] = g.d_sum;
        worst["analytic_bound_r1"] = g.analytic_bound_r1;
        worst["analytic_bound_r2"] = g.analytic_bound_r2;
        worst["analytic_bound_sum"] = g.analytic_bound_sum;
        worst["utilization"] = r.worst_utilization;
        j["worst_draw"] = worst;
        j["passed"] = r.passed();
        return dump_json(j);
    }
    CsvTable t;
    t.header = {"metric", "value"};
    auto add = [&](const std::string& k, double v) { t.rows.push_back({k, format_number(v)}); };
    t.rows.push_back({"scheme", std::string(to_string(c.scheme))});
    t.rows.push_back({"normalization", "per-total-bandwidth"});
    add("seed", static_cast<double>(c.seed));
    add("draws", static_cast<double>(r.draws));
    add("conditioned_draws", static_cast<double>(r.conditioned_draws));
    add("max_d_r1", r.max_d_r1);
    add("max_d_r2", r.max_d_r2);
    add("max_d_sum", r.max_d_sum);
    add("ceiling_scaled_r1", r.ceiling_r1);
    add("ceiling_scaled_r2", r.ceiling_r2);
    add("ceiling_scaled_sum", r.ceiling_sum);
    add("violations", static_cast<double>(r.violations));
    add("analytic_violations", static_cast<double>(r.analytic_violations));
    add("worst_snr1", p.snr1);
    add("worst_snr2", p.snr2);
    add("worst_inr", p.inr);
    add("worst_snr_side", p.snr_side);
    add("worst_w", p.w);
    add("worst_lambda", r.worst_draw.lambda);
    return write_csv(t);
}

// ----------------------------------------------------------------- mgain

struct MgainOptions {
    bool asymptotic = false;
    bool finite = false;
    std::optional<double> snr_db;
    double mu = 0.0;
    double nu = 0.0;
    double w = 0.0;
};

struct MgainRow {
    Scheme scheme;
    std::optional<double> asymptotic;
    std::optional<double> finite;
    std::optional<double> optimal_lambda;
    std::string warning;
};

std::vector<MgainRow> compute_mgain(const MgainOptions& o)
{
    bool asym = o.asymptotic;
    bool fin = o.finite;
    if (!asym && !fin) {
        asym = true;
        fin = o.snr_db.has_value();
    }
    if (fin && !o.snr_db)
        throw UsageError("--finite needs --snr-db");
    require_in_range(o.mu, 0.0, kUnbounded, "mu");
    require_in_range(o.nu, 0.0, kUnbounded, "nu");
    require_in_range(o.w, 0.0, kUnbounded, "w");

    std::vector<MgainRow> rows;
    for (Scheme s : {Scheme::BC, Scheme::CC, Scheme::DC, Scheme::EC, Scheme::NoSC}) {
        MgainRow row{s, {}, {}, {}, {}};
        if (s == Scheme::EC && o.w < 1.0) {
            row.warning = "ec-needs-w-at-least-1";
        } else {
            if (s == Scheme::EC && !is_integer_bandwidth(o.w))
                row.warning = "non-integer-w";
            if (asym)
                row.asymptotic = mgain_asymptotic(s, o.mu, o.nu, o.w);
            if (fin) {
                const ChannelParams p = symmetric_params(*o.snr_db, o.mu, o.nu, o.w);
                const OptResult r = maximize_sum(s, p);
                row.finite = mgain_finite(p, r.best_sum);
                row.optimal_lambda = side_power_fraction(r.best_split);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::string emit_mgain(const MgainOptions& o, const std::vector<MgainRow>& rows, Format f)
{
    if (f == Format::Json) {
        Json j;
        j["command"] = "mgain";
        j["mu"] = o.mu;
        j["nu"] = o.nu;
        j["w"] = o.w;
        if (o.snr_db)
            j["snr_db"] = *o.snr_db;
        j["improvement"] = mgain_improvement(o.mu, o.nu, o.w);
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json e{{"scheme", std::string(to_string(r.scheme))}};
            e["asymptotic_gain"] = r.asymptotic ? Json(*r.asymptotic) : Json(nullptr);
            e["finite_gain"] = r.finite ? Json(*r.finite) : Json(nullptr);
            if (r.optimal_lambda)
                e["optimal_lambda"] = *r.optimal_lambda;
            e["warning"] = r.warning;
            arr.push_back(e);
        }
        j["rows"] = arr;
        return dump_json(j);
    }
    CsvTable t;
    t.header = {"scheme", "asymptotic_gain", "finite_gain", "optimal_lambda", "warning"};
    for (const auto& r : rows) {
        t.rows.push_back({std::string(to_string(r.scheme)), opt_cell(r.asymptotic), opt_cell(r.finite),
                          opt_cell(r.optimal_lambda), r.warning});
    }
    return write_csv(t);
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    std::vector<std::string> suites;
    std::optional<std::size_t> draws;
    double fm_grid_step = 1e-3;
    bool perturb = false;
};

std::string emit_verify(const std::vector<SuiteResult>& results, Format f)
{
    if (f == Format::Json) {
        Json j;
        j["command"] = "verify";
        Json arr = Json::array();
        bool all = true;
        for (const auto& r : results) {
            Json e{{"suite", r.name},     {"draws", r.draws},
                   {"max_error", r.max_error}, {"threshold", json_number(r.threshold)},
                   {"passed", r.passed},  {"informational", r.informational},
                   {"metric", r.metric}};
            Json draw = Json::object();
            for (const auto& [k, v] : r.worst_draw)
                draw[k] = v;
            e["worst_draw"] = draw;
            arr.push_back(e);
            all = all && (r.passed || r.informational);
        }
        j["suites"] = arr;
        j["passed"] = all;
        return dump_json(j);
    }
    CsvTable t;
    t.header = {"suite", "draws", "max_error", "threshold", "passed", "informational"};
    for (const auto& r : results) {
        t.rows.push_back({r.name, format_number(static_cast<double>(r.draws)), format_number(r.max_error),
                          format_number(r.threshold), r.passed ? "true" : "false",
                          r.informational ? "true" : "false"});
    }
    return write_csv(t);
}

void write_output(const Globals& g, const std::string& text, std::ostream& out)
{
    if (g.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f)
        throw UsageError("cannot open output file: " + g.out_path);
    f << text;
    if (!f)
        throw UsageError("failed writing output file: " + g.out_path);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rate regions, bounds, gaps and multiplexing gains for side-channel assisted "
                 "full-duplex interference cancellation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with flag values; command-line flags take precedence");

    Globals g;
    std::string format = "csv";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out_path, "write output to this file instead of stdout");
    app.add_option("--seed", g.seed, "master seed for randomized suites");
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");

    RegionOptions ro;
    auto* region = app.add_subcommand("region", "rate region of one scheme or outer bound");
    ro.channel.add_options(*region);
    region
        ->add_option("--scheme", ro.scheme,
                     "bc, cc, dc, ec, nosc, outer-nointerf, outer-genie or outer-envelope")
        ->required()
        ->check(CLI::IsMember({"bc", "cc", "dc", "ec", "nosc", "no-sc", "outer-nointerf", "outer-genie",
                               "outer-envelope"}));
    region->add_option("--lambda", ro.lambda, "side-channel power fraction")->check(CLI::Range(0.0, 1.0));
    region->add_option("--beta", ro.beta, "private-message power fraction")->check(CLI::Range(0.0, 1.0));
    region->add_option("--k", ro.k, "estimate-and-cancel amplitude scale")->check(CLI::NonNegativeNumber);
    region->add_flag("--optimize", ro.optimize, "maximize the sum rate over splits and emit the frontier");
    region->add_option("--resolution", ro.resolution, "split grid step for frontiers, in (0, 0.1]")
        ->check(CLI::Range(1e-6, 0.1));

    SweepOptions so;
    auto* sweep = app.add_subcommand("sweep", "finite-SNR multiplexing gains versus the interference exponent");
    sweep->add_option("--snr-db", so.snr_db, "SNR in dB (snr1 = snr2)");
    sweep->add_option("--w", so.w, "bandwidth ratio")->check(CLI::NonNegativeNumber);
    sweep->add_option("--nu", so.nu, "'eq-mu' or a constant side-channel exponent");
    sweep->add_option("--mu", so.mu, "START:END:STEP");
    sweep->add_option("--figure", so.figure, "6: gains with no-side-channel rows; 7: optimal power splits")
        ->check(CLI::IsMember({6, 7}));

    GapOptions go;
    auto* gap = app.add_subcommand("gap", "randomized capacity-gap search");
    gap->add_option("--scheme", go.scheme, "bc, dc or ec")->check(CLI::IsMember({"bc", "dc", "ec"}));
    gap->add_option("--draws", go.draws, "number of random draws");
    gap->add_option("--w", go.w_values, "bandwidth ratios to draw from (comma separated)")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    gap->add_flag("--constrain-conditions", go.constrain,
                  "draw only parameters meeting the dc/ec sufficient conditions");

    MgainOptions mo;
    auto* mgain = app.add_subcommand("mgain", "multiplexing gains per scheme");
    mgain->add_flag("--asymptotic", mo.asymptotic, "high-SNR gains");
    mgain->add_flag("--finite", mo.finite, "finite-SNR gains with optimized splits (needs --snr-db)");
    mgain->add_option("--snr-db", mo.snr_db, "SNR in dB for finite gains");
    mgain->add_option("--mu", mo.mu, "interference exponent")->check(CLI::NonNegativeNumber);
    mgain->add_option("--nu", mo.nu, "side-channel exponent")->check(CLI::NonNegativeNumber);
    mgain->add_option("--w", mo.w, "bandwidth ratio")->check(CLI::NonNegativeNumber);

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "run the property suites");
    verify->add_option("--suite", vo.suites, "suite name (repeatable); default runs all")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--draws", vo.draws, "override every suite's draw count");
    verify->add_option("--fm-grid-step", vo.fm_grid_step, "grid step of the projection oracle (bits)")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--perturb-bc-r1", vo.perturb, "self-test: add 0.01 bit to BC's R1 in containment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    g.format = format == "json" ? Format::Json : Format::Csv;

    try {
        if (region->parsed()) {
            if (ro.scheme == "no-sc")
                ro.scheme = "nosc";
            write_output(g, emit_region(compute_region(ro), g.format), out);
        } else if (sweep->parsed()) {
            const SweepConfig c = sweep_config(so, g.threads);
            const auto rows = so.figure == 7 ? figure7_sweep(c) : figure6_sweep(c);
            write_output(g, emit_sweep(c, so.figure, rows, g.format), out);
        } else if (gap->parsed()) {
            GapSuiteConfig c;
            c.scheme = *parse_scheme(go.scheme);
            c.seed = g.seed;
            c.threads = g.threads;
            c.constrain_conditions = go.constrain;
            c.draws = go.draws.value_or(c.scheme == Scheme::BC ? 10000 : 1000);
            if (!go.w_values.empty())
                c.w_values = go.w_values;
            else if (go.constrain)
                c.w_values = {1.0, 2.0, 3.0};
            const GapSuiteResult r = run_gap_suite(c);
            write_output(g, emit_gap(c, r, g.format), out);
            if (!r.passed()) {
                err << "gap: " << r.violations << " theorem violations, " << r.analytic_violations
                    << " analytic-bound violations\n";
                return kExitVerificationFailed;
            }
        } else if (mgain->parsed()) {
            write_output(g, emit_mgain(mo, compute_mgain(mo), g.format), out);
        } else if (verify->parsed()) {
            VerifyConfig c;
            c.seed = g.seed;
            c.threads = g.threads;
            c.draws = vo.draws;
            c.fm_grid_step = vo.fm_grid_step;
            c.perturb_bc_r1 = vo.perturb;
            std::vector<SuiteResult> results;
            const auto& names = vo.suites.empty() ? suite_names() : vo.suites;
            for (const auto& n : names)
                results.push_back(run_suite(n, c));
            write_output(g, emit_verify(results, g.format), out);
            bool ok = true;
            for (const auto& r : results) {
                if (r.passed || r.informational)
                    continue;
                ok = false;
                err << "verify: suite " << r.name << " failed: max error " << format_number(r.max_error)
                    << " > threshold " << format_number(r.threshold) << "; draw:";
                for (const auto& [k, v] : r.worst_draw)
                    err << ' ' << k << '=' << format_number(v);
                err << '\n';
            }
            if (!ok)
                return kExitVerificationFailed;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}

} // namespace fdside::cli
