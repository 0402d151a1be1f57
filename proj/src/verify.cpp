#include "fdside/verify.hpp"

#include "fdside/analysis.hpp"
#include "fdside/bounds.hpp"
#include "fdside/geometry.hpp"
#include "fdside/optimize.hpp"
#include "fdside/parallel.hpp"
#include "fdside/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace fdside {
namespace {

constexpr double kBetaGridStep = 1e-4;
constexpr double kOracleGridStep = 1e-4;
constexpr double kOptimizerTolerance = 1e-5;
constexpr double kEcMaxFraction = (kEcMaxScale / (1.0 + kEcMaxScale)) * (kEcMaxScale / (1.0 + kEcMaxScale));
const std::vector<double> kWValues{0.0, 0.5, 1.0, 2.0};
const std::vector<double> kConvergenceMu{0.25, 0.5, 1.0, 1.5};
const std::vector<double> kConvergenceWnu{0.25, 0.5, 1.0};

std::size_t draws_or(const VerifyConfig& cfg, std::size_t fallback)
{
    return cfg.draws.value_or(fallback);
}

DrawRng suite_rng(const VerifyConfig& cfg, std::uint64_t salt, std::size_t i)
{
    return DrawRng(splitmix64(cfg.seed) ^ salt, i);
}

ChannelParams random_params(DrawRng& rng, const std::vector<double>& ws)
{
    ChannelParams p;
    p.snr1 = rng.log_uniform_db(0.0, 60.0);
    p.snr2 = rng.log_uniform_db(0.0, 60.0);
    p.inr = rng.log_uniform_db(0.0, 60.0);
    p.snr_side = rng.log_uniform_db(0.0, 60.0);
    p.w = ws[rng.pick(ws.size())];
    return p;
}

ChannelParams random_weak_params(DrawRng& rng)
{
    ChannelParams p = random_params(rng, kWValues);
    if (p.inr > p.snr2)
        std::swap(p.inr, p.snr2);
    if (p.inr == p.snr2)
        p.inr *= 0.5;
    return p;
}

DrawDescription describe(const ChannelParams& p)
{
    return {{"snr1", p.snr1}, {"snr2", p.snr2}, {"inr", p.inr}, {"snr_side", p.snr_side}, {"w", p.w}};
}

// Per-draw outcome collected in parallel, reduced in index order.
struct DrawOutcome {
    double error = 0.0;
    DrawDescription where;
};

SuiteResult summarize(std::string name, std::string metric, double threshold, std::vector<DrawOutcome>& out,
                   bool strict = false)
{
    SuiteResult r;
    r.name = std::move(name);
    r.metric = std::move(metric);
    r.threshold = threshold;
    r.draws = out.size();
    bool first = true;
    for (auto& o : out) {
        if (first || o.error > r.max_error) {
            r.max_error = o.error;
            r.worst_draw = o.where;
            first = false;
        }
    }
    r.passed = strict ? r.max_error < threshold : r.max_error <= threshold;
    return r;
}

// ---------------------------------------------------------------------------

SuiteResult suite_fm_oracle(const VerifyConfig& cfg)
{
    const std::size_t n = draws_or(cfg, 100);
    const double step = cfg.fm_grid_step;
    std::vector<DrawOutcome> out(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        DrawRng rng = suite_rng(cfg, 0xf0f0, i);
        const ChannelParams p = random_weak_params(rng);
        const PowerSplit s{rng.uniform(), rng.uniform()};
        const Frontier oracle = fm_project_oracle(bc_mac_components(p, s), step);
        const Frontier closed = pentagon_boundary(bc_region(p, s), step);
        out[i].error = std::max(frontier_gap(oracle, closed), frontier_gap(closed, oracle));
        out[i].where = describe(p);
        out[i].where.emplace_back("lambda", s.lambda);
        out[i].where.emplace_back("beta", s.beta);
    });
    return summarize("fm-oracle", "frontier distance between grid projection and closed form (bits)",
                  2.0 * step, out);
}

SuiteResult suite_beta_star(const VerifyConfig& cfg)
{
    const std::size_t n = draws_or(cfg, 200);
    std::vector<DrawOutcome> out(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        DrawRng rng = suite_rng(cfg, 0xbe7a, i);
        const ChannelParams p = random_weak_params(rng);
        const double lambda = rng.uniform();
        const double b = bc_beta_star(p, lambda).beta;
        const double at_star = bc_sum_rate(p, lambda, b);

        double grid_max = -kUnbounded;
        const auto steps = static_cast<int>(std::lround(1.0 / kBetaGridStep));
        for (int j = 0; j <= steps; ++j)
            grid_max = std::max(grid_max, bc_sum_rate(p, lambda, static_cast<double>(j) / steps));

        // Relative neighbourhood of beta*: the coarse grid cannot resolve a
        // kink sitting at very small beta.
        double local_max = grid_max;
        for (int j = 1; j <= 100; ++j) {
            for (double sign : {-1.0, 1.0}) {
                const double nb = b * (1.0 + sign * 1e-6 * j);
                if (nb >= 0.0 && nb <= 1.0 && nb != b)
                    local_max = std::max(local_max, bc_sum_rate(p, lambda, nb));
            }
        }
        out[i].error = std::max(grid_max - at_star, std::abs(at_star - local_max));
        out[i].where = describe(p);
        out[i].where.emplace_back("lambda", lambda);
        out[i].where.emplace_back("beta_star", b);
    });
    return summarize("beta-star", "sum-rate shortfall of beta* against the beta grid (bits)", 1e-5, out);
}

SuiteResult suite_cc_identity(const VerifyConfig& cfg)
{
    const std::size_t n = draws_or(cfg, 1000);
    std::vector<DrawOutcome> out(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        DrawRng rng = suite_rng(cfg, 0xcc1d, i);
        const ChannelParams p = random_params(rng, kWValues);
        const double lambda = rng.uniform();
        const double direct = cc_region(p, lambda).r1_max;
        const auto q = cc_quantization_variance(p, lambda);
        // No side-channel rate means M2 learns nothing: infinite distortion.
        const double rebuilt = cc_r1_from_variance(p, lambda, q ? *q : kUnbounded);
        out[i].error = std::abs(direct - rebuilt);
        out[i].where = describe(p);
        out[i].where.emplace_back("lambda", lambda);
    });
    return summarize("cc-identity", "|R1 closed form - R1 from quantization variance| (bits)", 1e-9, out);
}

double excess_over(const RatePentagon& outer, const RatePentagon& inner)
{
    double worst = -kUnbounded;
    for (const RatePoint& c : pentagon_corners(inner)) {
        worst = std::max(worst, c.r1 - outer.r1_max);
        worst = std::max(worst, c.r2 - outer.r2_max);
        if (outer.has_sum_constraint())
            worst = std::max(worst, c.r1 + c.r2 - outer.sum_max);
    }
    return worst;
}

SuiteResult suite_containment(const VerifyConfig& cfg)
{
    const std::size_t n = draws_or(cfg, 1000);
    std::vector<DrawOutcome> out(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        DrawRng rng = suite_rng(cfg, 0xc0a7, i);
        const ChannelParams p = random_params(rng, kWValues);
        const double lambda = rng.uniform();
        const double random_beta = rng.uniform();
        const RatePentagon outer = genie_outer(p, lambda).pentagon;
        // The very-strong BC rectangle needs no side channel; its matched
        // bound is the one at lambda = 0.
        const RatePentagon bc_outer = classify_regime(p) == Regime::VeryStrong
                                          ? genie_outer(p, 0.0).pentagon
                                          : outer;

        double worst = -kUnbounded;
        std::string which;
        auto check = [&](const RatePentagon& outer_pent, const RatePentagon& inner, const char* tag) {
            const double e = excess_over(outer_pent, inner);
            if (e > worst) {
                worst = e;
                which = tag;
            }
        };

        RatePentagon bc = bc_region(p, gap_bc(p, lambda).split);
        RatePentagon bc_random = bc_region(p, {lambda, random_beta});
        if (cfg.perturb_bc_r1) {
            bc.r1_max += 0.01;
            bc_random.r1_max += 0.01;
        }
        check(bc_outer, bc, "bc");
        check(bc_outer, bc_random, "bc");
        check(outer, cc_region(p, lambda), "cc");
        check(outer, dc_region(p, lambda), "dc");
        if (p.w >= 1.0) {
            const double k = rng.log_uniform(1e-3, kEcMaxScale);
            check(genie_outer(p, ec_side_power_fraction(k)).pentagon, ec_region(p, EcScale{k}), "ec");
        }
        out[i].error = std::max(0.0, worst);
        out[i].where = describe(p);
        out[i].where.emplace_back("lambda", lambda);
        out[i].where.emplace_back("beta", random_beta);
        out[i].where.emplace_back("scheme_index", static_cast<double>(*parse_scheme(which)));
    });
    SuiteResult r = summarize("containment", "largest constraint excess over the matched outer bound (bits)",
                           1e-9, out);
    return r;
}

const std::vector<Scheme>& all_schemes()
{
    static const std::vector<Scheme> s{Scheme::BC, Scheme::CC, Scheme::DC, Scheme::EC, Scheme::NoSC};
    return s;
}

// Largest |finite gain - asymptotic gain| over the convergence grid at a
// given SNR (w = 1, so nu = W nu).
DrawOutcome convergence_error(double snr_db, unsigned threads)
{
    struct Point {
        Scheme s;
        double mu, nu;
    };
    std::vector<Point> pts;
    for (Scheme s : all_schemes())
        for (double mu : kConvergenceMu)
            for (double nu : kConvergenceWnu)
                pts.push_back({s, mu, nu});
    std::vector<DrawOutcome> out(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t i) {
        const Point& pt = pts[i];
        const ChannelParams p = symmetric_params(snr_db, pt.mu, pt.nu, 1.0);
        const double finite = mgain_finite(p, maximize_sum(pt.s, p).best_sum);
        const double limit = mgain_asymptotic(pt.s, pt.mu, pt.nu, 1.0);
        out[i].error = std::abs(finite - limit);
        out[i].where = {{"snr_db", snr_db}, {"scheme_index", static_cast<double>(pt.s)},
                        {"mu", pt.mu}, {"nu", pt.nu}, {"w", 1.0},
                        {"finite_gain", finite}, {"asymptotic_gain", limit}};
    });
    DrawOutcome worst;
    worst.error = -1.0;
    for (auto& o : out)
        if (o.error > worst.error)
            worst = o;
    return worst;
}

SuiteResult suite_convergence(const VerifyConfig& cfg)
{
    std::vector<DrawOutcome> out{convergence_error(60.0, cfg.threads)};
    SuiteResult r = summarize("convergence", "|finite-SNR gain at SNR 1e6 - asymptotic gain|", 0.05, out);
    r.draws = all_schemes().size() * kConvergenceMu.size() * kConvergenceWnu.size();
    return r;
}

SuiteResult suite_convergence_trend(const VerifyConfig& cfg)
{
    SuiteResult r;
    r.name = "convergence-trend";
    r.metric = "worst gain error at SNR 1e12; passes when the error shrinks from 1e6 to 1e9 to 1e12";
    r.informational = true;
    const double dbs[] = {60.0, 90.0, 120.0};
    double prev = kUnbounded;
    r.passed = true;
    for (double db : dbs) {
        const DrawOutcome o = convergence_error(db, cfg.threads);
        if (!(o.error < prev))
            r.passed = false;
        prev = o.error;
        r.max_error = o.error;
        r.worst_draw = o.where;
        r.draws += all_schemes().size() * kConvergenceMu.size() * kConvergenceWnu.size();
    }
    r.threshold = kUnbounded;
    return r;
}

SuiteResult suite_mgain_ratio(const VerifyConfig&)
{
    std::vector<DrawOutcome> out;
    for (int i = 0; i < 200; ++i) {
        const double mu = i * 0.01;
        for (int j = 0; j <= 40; ++j) {
            const double wnu = j * 0.05;
            const double lhs = mgain_improvement(mu, wnu, 1.0) * mgain_asymptotic(Scheme::NoSC, mu, 0.0, 1.0);
            const double rhs = mgain_asymptotic(Scheme::BC, mu, wnu, 1.0);
            out.push_back({std::abs(lhs - rhs), {{"mu", mu}, {"nu", wnu}, {"w", 1.0}}});
        }
    }
    return summarize("mgain-ratio", "|improvement x no-side-channel gain - side-channel gain|", 1e-12, out);
}

SuiteResult suite_sum_capacity_ratio(const VerifyConfig&)
{
    std::vector<DrawOutcome> out;
    for (double mu : kConvergenceMu) {
        const ChannelParams p = symmetric_params(90.0, mu, 0.0, 0.0);
        const double upper = genie_outer(p, 0.0).pentagon.sum_max;
        const double lower = bc_sum_rate(p, 0.0, bc_beta_star(p, 0.0).beta);
        DrawOutcome o;
        o.error = upper / lower - 1.0;
        o.where = describe(p);
        o.where.emplace_back("mu", mu);
        o.where.emplace_back("upper", upper);
        o.where.emplace_back("lower", lower);
        out.push_back(o);
    }
    return summarize("sum-capacity-ratio", "genie sum bound / achievable sum - 1 at SNR 1e9, INR = SNR^mu",
                  0.01, out);
}

SuiteResult suite_inr_star(const VerifyConfig&)
{
    std::vector<DrawOutcome> out;
    for (double snr : {1e6}) {
        const double ratio = inr_star(snr, snr) / (snr * (1.0 + snr));
        out.push_back({std::abs(ratio - 1.0), {{"snr1", snr}, {"snr2", snr}, {"ratio", ratio}}});
    }
    return summarize("inr-star-limit", "|INR* / (SNR2 (1 + SNR1)) - 1| at SNR 1e6", 0.01, out);
}

SuiteResult suite_gap(const VerifyConfig& cfg, Scheme scheme)
{
    GapSuiteConfig g;
    g.scheme = scheme;
    g.seed = cfg.seed;
    g.threads = cfg.threads;
    if (scheme == Scheme::BC) {
        g.draws = draws_or(cfg, 10000);
    } else {
        g.draws = draws_or(cfg, 1000);
        g.constrain_conditions = true;
        g.w_values = {1.0, 2.0, 3.0};
    }
    const GapSuiteResult res = run_gap_suite(g);
    SuiteResult r;
    r.name = std::string("gap-") + std::string(to_string(scheme));
    r.metric = "worst gap as a fraction of its ceiling; violations must be zero";
    r.draws = res.draws;
    r.max_error = res.worst_utilization;
    r.threshold = 1.0;
    r.passed = res.passed();
    r.worst_draw = describe(res.worst_draw.params);
    r.worst_draw.emplace_back("lambda", res.worst_draw.lambda);
    r.worst_draw.emplace_back("violations", static_cast<double>(res.violations));
    r.worst_draw.emplace_back("analytic_violations", static_cast<double>(res.analytic_violations));
    return r;
}

// Largest value of f on a uniform grid of the given step over [0, hi],
// followed by a fine grid over the two cells around the coarse maximum.
struct GridOracle {
    double coarse = -kUnbounded;
    double refined = -kUnbounded;
};

GridOracle grid_oracle(const std::function<double(double)>& f, double hi)
{
    GridOracle o;
    const auto n = static_cast<long>(std::floor(hi / kOracleGridStep + 1e-9));
    long best = 0;
    for (long i = 0; i <= n; ++i) {
        const double v = f(static_cast<double>(i) * kOracleGridStep);
        if (v > o.coarse) {
            o.coarse = v;
            best = i;
        }
    }
    o.refined = o.coarse;
    const double lo = std::max(0.0, (best - 1) * kOracleGridStep);
    const double top = std::min(hi, (best + 1) * kOracleGridStep);
    constexpr int fine = 2000;
    for (int j = 0; j <= fine; ++j)
        o.refined = std::max(o.refined, f(lo + (top - lo) * j / fine));
    return o;
}

SuiteResult suite_optimizer(const VerifyConfig& cfg)
{
    const std::size_t per_scheme = draws_or(cfg, 200);
    const auto& schemes = all_schemes();
    const std::size_t n = per_scheme * schemes.size();
    std::vector<DrawOutcome> out(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        const Scheme s = schemes[i / per_scheme];
        DrawRng rng = suite_rng(cfg, 0x0b71, i);
        const std::vector<double> ws = s == Scheme::EC ? std::vector<double>{1.0, 2.0} : kWValues;
        const ChannelParams p = random_params(rng, ws);
        const OptResult opt = maximize_sum(s, p);

        GridOracle o;
        switch (s) {
        case Scheme::NoSC: {
            ChannelParams q = p;
            q.w = 0.0;
            o = grid_oracle([&](double b) { return bc_sum_rate(q, 0.0, b); }, 1.0);
            break;
        }
        case Scheme::EC:
            // Grid in side-channel power fraction u = k^2 / (1 + k)^2.
            o = grid_oracle(
                [&](double u) {
                    const double r = std::sqrt(u);
                    return scheme_sum_at(s, p, r / (1.0 - r));
                },
                kEcMaxFraction);
            break;
        default:
            o = grid_oracle([&](double l) { return scheme_sum_at(s, p, l); }, 1.0);
            break;
        }
        out[i].error = std::max(o.coarse - opt.best_sum, std::abs(o.refined - opt.best_sum));
        out[i].where = describe(p);
        out[i].where.emplace_back("scheme_index", static_cast<double>(s));
        out[i].where.emplace_back("optimizer", opt.best_sum);
        out[i].where.emplace_back("oracle", o.refined);
    });
    return summarize("optimizer", "|optimizer sum - refined grid oracle| (bits)", kOptimizerTolerance, out);
}

using SuiteFn = std::function<SuiteResult(const VerifyConfig&)>;

const std::map<std::string, SuiteFn, std::less<>>& registry()
{
    static const std::map<std::string, SuiteFn, std::less<>> r{
        {"fm-oracle", suite_fm_oracle},
        {"beta-star", suite_beta_star},
        {"cc-identity", suite_cc_identity},
        {"containment", suite_containment},
        {"gap-bc", [](const VerifyConfig& c) { return suite_gap(c, Scheme::BC); }},
        {"gap-dc", [](const VerifyConfig& c) { return suite_gap(c, Scheme::DC); }},
        {"gap-ec", [](const VerifyConfig& c) { return suite_gap(c, Scheme::EC); }},
        {"optimizer", suite_optimizer},
        {"mgain-ratio", suite_mgain_ratio},
        {"inr-star-limit", suite_inr_star},
        {"sum-capacity-ratio", suite_sum_capacity_ratio},
        {"convergence", suite_convergence},
        {"convergence-trend", suite_convergence_trend},
    };
    return r;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{
        "fm-oracle",   "beta-star",      "cc-identity",        "containment", "gap-bc",
        "gap-dc",      "gap-ec",         "optimizer",          "mgain-ratio", "inr-star-limit",
        "sum-capacity-ratio", "convergence", "convergence-trend"};
    return names;
}

SuiteResult run_suite(std::string_view name, const VerifyConfig& cfg)
{
    const auto& r = registry();
    const auto it = r.find(name);
    if (it == r.end())
        throw DomainError("unknown verification suite: " + std::string(name));
    return it->second(cfg);
}

std::vector<SuiteResult> run_all_suites(const VerifyConfig& cfg)
{
    std::vector<SuiteResult> out;
    for (const auto& name : suite_names())
        out.push_back(run_suite(name, cfg));
    return out;
}

} // namespace fdside
