#include "fdside/analysis.hpp"

#include "fdside/bounds.hpp"
#include "fdside/parallel.hpp"
#include "fdside/random.hpp"
#include "fdside/search.hpp"

#include <algorithm>
#include <cmath>

namespace fdside {
namespace {

constexpr double kTheoremSlack = 1e-12;

// Constraint-wise outer minus inner, clamped at zero.
double clamped_diff(double outer, double inner)
{
    if (outer == kUnbounded)
        return 0.0;
    return std::max(0.0, outer - inner);
}

double inner_sum(const RatePentagon& r) { return r.max_sum_rate(); }

} // namespace

bool GapReport::within_analytic(double slack) const
{
    return d_r1 <= analytic_bound_r1 + slack && d_r2 <= analytic_bound_r2 + slack &&
           d_sum <= analytic_bound_sum + slack;
}

GapReport gap_bc(const ChannelParams& p, double lambda)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");

    GapReport g;
    g.scheme = Scheme::BC;
    g.regime = classify_regime(p);
    g.w = p.w;
    g.split.lambda = lambda;

    const double norm = 1.0 + p.w;
    const double lb = 1.0 - lambda;
    const double v = lb * p.inr;
    const double side = side_cap(p.w, lambda * p.snr_side);

    double ar1 = 0.0, ar2 = 0.0, asum = 0.0;
    switch (g.regime) {
    case Regime::Weak:
        if (v >= 1.0) {
            g.split.beta = 1.0 / v;
            g.flags.noise_level_split = true;
            ar1 = std::log2(1.0 + p.snr1 / (2.0 + p.snr1));
            const double ratio = (1.0 + lb * p.snr2) / (1.0 + v) * p.inr / (p.inr + p.snr2);
            ar2 = std::max(0.0, 1.0 - side + std::log2(ratio));
            asum = 2.0 + std::log2(1.0 - p.snr2 / (p.inr + p.snr2 + v * p.snr2 + v * p.inr));
        } else {
            g.split.beta = 1.0;
            g.flags.treat_as_noise = true;
            ar1 = cap(v);
            ar2 = 0.0;
            asum = 1.0 + cap(v);
        }
        break;
    case Regime::Strong:
        g.split.beta = 0.0;
        asum = cap(lb * p.snr2 / (1.0 + v)) +
               std::log2(1.0 + 2.0 * std::sqrt(lb * p.snr1 * p.inr) / (1.0 + p.snr1 + v));
        break;
    case Regime::VeryStrong:
        break;
    }

    // Very strong interference: the point-to-point rectangle is achieved
    // without the side channel, so the region is compared with its own
    // (tight) outer bound and every gap is zero.
    const RatePentagon outer =
        g.regime == Regime::VeryStrong ? no_interference_outer(p) : genie_outer(p, lambda).pentagon;
    const RatePentagon inner = bc_region(p, g.split);
    g.d_r1 = clamped_diff(outer.r1_max, inner.r1_max) / norm;
    g.d_r2 = clamped_diff(outer.r2_max, inner.r2_max) / norm;
    // The outer sum constraint can be looser than r1_max + r2_max (for
    // instance when most power sits on the side channel), so the effective
    // outer sum is the largest R1 + R2 the outer pentagon admits.
    g.d_sum = clamped_diff(outer.max_sum_rate(), inner_sum(inner)) / norm;
    g.analytic_bound_r1 = ar1 / norm;
    g.analytic_bound_r2 = ar2 / norm;
    g.analytic_bound_sum = asum / norm;
    return g;
}

double bc_strong_sum_gap_without_common_term(const ChannelParams& p, double lambda)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");
    const double lb = 1.0 - lambda;
    return std::log2(1.0 + 2.0 * std::sqrt(lb * p.snr1 * p.inr) / (1.0 + p.snr1 + lb * p.inr)) /
           (1.0 + p.w);
}

GapReport gap_dc(const ChannelParams& p)
{
    p.validate();
    GapReport g;
    g.scheme = Scheme::DC;
    g.regime = classify_regime(p);
    g.w = p.w;

    // r2 is the minimum of a rate decreasing in lambda and one increasing in
    // it, so it is unimodal on [0, 1].
    const auto best = golden_max([&](double l) { return dc_region(p, l).r2_max; }, 0.0, 1.0, 1e-12);
    g.split.lambda = best.x;

    const double norm = 1.0 + p.w;
    const RatePentagon outer = no_interference_outer(p);
    const RatePentagon inner = dc_region(p, best.x);
    g.d_r1 = clamped_diff(outer.r1_max, inner.r1_max) / norm;
    g.d_r2 = clamped_diff(outer.r2_max, inner.r2_max) / norm;
    g.d_sum = g.d_r1 + g.d_r2;

    g.analytic_bound_r1 = 0.0;
    if (p.w >= 1.0) {
        const double s2 = p.snr2;
        const double denom = s2 + p.snr_side + s2 * p.snr_side;
        g.analytic_bound_r2 = denom > 0.0 ? std::log2(1.0 + s2 * s2 / denom) / norm : 0.0;
    } else {
        g.analytic_bound_r2 = cap(p.snr2) / norm;
    }
    g.analytic_bound_sum = g.analytic_bound_r1 + g.analytic_bound_r2;
    g.flags.conditions_met = p.w >= 1.0 && p.snr_side >= p.snr2;
    return g;
}

double ec_side_threshold(double inr)
{
    require_in_range(inr, 0.0, kUnbounded, "inr");
    return kEcThresholdFactor * (inr - 2.0);
}

GapReport gap_ec(const ChannelParams& p)
{
    p.validate();
    if (p.w < 1.0)
        throw DomainError("estimate-and-cancel needs side-channel bandwidth ratio w >= 1");

    GapReport g;
    g.scheme = Scheme::EC;
    g.regime = classify_regime(p);
    g.w = p.w;
    g.ec_k = kEcGapScale;
    const double k = kEcGapScale;
    g.split.lambda = k * k / ((1.0 + k) * (1.0 + k));

    const double norm = 1.0 + p.w;
    const RatePentagon outer = no_interference_outer(p);
    const RatePentagon inner = ec_region(p, EcScale{k});
    g.d_r1 = clamped_diff(outer.r1_max, inner.r1_max) / norm;
    g.d_r2 = clamped_diff(outer.r2_max, inner.r2_max) / norm;
    g.d_sum = g.d_r1 + g.d_r2;

    const double c = (1.0 + k) * (1.0 + k);
    const double t = k * k * p.snr_side / c;
    const double s1 = p.snr1;
    g.analytic_bound_r1 =
        std::log2(1.0 + (s1 * p.inr / c) / (1.0 + t + p.inr / c + s1 * (1.0 + t))) / norm;
    g.analytic_bound_r2 = std::log2(1.0 + (k * (k + 2.0) * p.snr2 / c) / (1.0 + p.snr2 / c)) / norm;
    g.analytic_bound_sum = g.analytic_bound_r1 + g.analytic_bound_r2;

    g.flags.conditions_met = p.snr_side >= ec_side_threshold(p.inr);
    g.flags.non_integer_w = !is_integer_bandwidth(p.w);
    return g;
}

double mgain_finite(const ChannelParams& p, double sum_rate)
{
    p.validate();
    if (!std::isfinite(sum_rate) || sum_rate < 0.0)
        throw DomainError("sum rate must be finite and non-negative");
    const double scale = std::max({p.snr1, p.snr2, 1.0});
    if (std::abs(p.snr1 - p.snr2) > 1e-12 * scale)
        throw DomainError("multiplexing gain needs snr1 == snr2");
    const double c = cap(p.snr1);
    if (c <= 0.0)
        throw DomainError("multiplexing gain undefined at snr = 0");
    return sum_rate / c;
}

double mgain_asymptotic(Scheme scheme, double mu, double nu, double w)
{
    require_in_range(mu, 0.0, kUnbounded, "mu");
    require_in_range(nu, 0.0, kUnbounded, "nu");
    require_in_range(w, 0.0, kUnbounded, "w");
    const double wn = w * nu;
    switch (scheme) {
    case Scheme::NoSC:
        if (mu < 1.0)
            return 2.0 - mu;
        return mu < 2.0 ? mu : 2.0;
    case Scheme::BC:
        return mu < 1.0 ? std::min(2.0, 2.0 + wn - mu) : std::min(2.0, mu + wn);
    case Scheme::CC:
        return mu < 1.0 ? std::min(2.0, 2.0 + wn - mu) : std::min(2.0, 1.0 + wn);
    case Scheme::DC:
        return std::min(2.0, 1.0 + wn);
    case Scheme::EC:
        if (w < 1.0)
            throw DomainError("estimate-and-cancel needs side-channel bandwidth ratio w >= 1");
        return mu < nu + 1.0 ? std::min(2.0, 2.0 + nu - mu) : 1.0;
    }
    throw DomainError("unknown scheme");
}

double mgain_improvement(double mu, double nu, double w)
{
    require_in_range(mu, 0.0, kUnbounded, "mu");
    require_in_range(nu, 0.0, kUnbounded, "nu");
    require_in_range(w, 0.0, kUnbounded, "w");
    if (mu >= 2.0)
        return 1.0;
    const double wn = w * nu;
    const double base = mu < 1.0 ? 2.0 - mu : mu;
    return std::min(2.0 / base, 1.0 + wn / base);
}

GapDraw draw_gap_params(const GapSuiteConfig& cfg, std::size_t index)
{
    DrawRng rng(cfg.seed, index);
    GapDraw d;
    ChannelParams& p = d.params;
    p.snr1 = rng.log_uniform_db(cfg.db_lo, cfg.db_hi);
    p.snr2 = rng.log_uniform_db(cfg.db_lo, cfg.db_hi);
    p.inr = rng.log_uniform_db(cfg.db_lo, cfg.db_hi);
    p.snr_side = rng.log_uniform_db(cfg.db_lo, cfg.db_hi);

    std::vector<double> ws;
    for (double w : cfg.w_values) {
        const bool needs_wide = cfg.scheme == Scheme::EC || (cfg.constrain_conditions && cfg.scheme == Scheme::DC);
        if (needs_wide && w < 1.0)
            continue;
        if (cfg.constrain_conditions && cfg.scheme == Scheme::EC && !is_integer_bandwidth(w))
            continue;
        ws.push_back(w);
    }
    if (ws.empty())
        throw DomainError("no admissible bandwidth ratio for this gap suite");
    p.w = ws[rng.pick(ws.size())];

    // The lambda grid {0, 0.1, ..., 1}.
    d.lambda = static_cast<double>(rng.pick(11)) / 10.0;

    if (cfg.constrain_conditions) {
        const double hi = db_to_linear(cfg.db_hi);
        if (cfg.scheme == Scheme::DC) {
            p.snr_side = rng.log_uniform(p.snr2, std::max(p.snr2, hi));
        } else if (cfg.scheme == Scheme::EC) {
            const double lo = std::max(ec_side_threshold(p.inr), 1.0);
            p.snr_side = rng.log_uniform(lo, std::max(lo, hi));
        }
    }
    return d;
}

GapSuiteResult run_gap_suite(const GapSuiteConfig& cfg)
{
    if (cfg.scheme != Scheme::BC && cfg.scheme != Scheme::DC && cfg.scheme != Scheme::EC)
        throw DomainError("gap suites exist for bc, dc and ec only");

    std::vector<GapDraw> draws(cfg.draws);
    std::vector<GapReport> reports(cfg.draws);
    parallel_for(cfg.draws, cfg.threads, [&](std::size_t i) {
        draws[i] = draw_gap_params(cfg, i);
        const ChannelParams& p = draws[i].params;
        switch (cfg.scheme) {
        case Scheme::BC: reports[i] = gap_bc(p, draws[i].lambda); break;
        case Scheme::DC: reports[i] = gap_dc(p); break;
        default: reports[i] = gap_ec(p); break;
        }
    });

    GapSuiteResult res;
    res.scheme = cfg.scheme;
    res.draws = cfg.draws;
    switch (cfg.scheme) {
    case Scheme::BC: res.ceiling_r1 = 1.0; res.ceiling_r2 = 1.0; res.ceiling_sum = 2.0; break;
    case Scheme::DC: res.ceiling_r1 = 0.0; res.ceiling_r2 = 1.0; res.ceiling_sum = 1.0; break;
    default: res.ceiling_r1 = 1.0; res.ceiling_r2 = 1.0; res.ceiling_sum = 2.0; break;
    }

    res.worst_utilization = -1.0;
    for (std::size_t i = 0; i < cfg.draws; ++i) {
        const GapReport& g = reports[i];
        const double norm = 1.0 + g.w;
        const double s1 = g.d_r1 * norm, s2 = g.d_r2 * norm, ss = g.d_sum * norm;
        res.max_d_r1 = std::max(res.max_d_r1, g.d_r1);
        res.max_d_r2 = std::max(res.max_d_r2, g.d_r2);
        res.max_d_sum = std::max(res.max_d_sum, g.d_sum);
        res.max_scaled_r1 = std::max(res.max_scaled_r1, s1);
        res.max_scaled_r2 = std::max(res.max_scaled_r2, s2);
        res.max_scaled_sum = std::max(res.max_scaled_sum, ss);

        if (!g.within_analytic())
            ++res.analytic_violations;

        if (g.flags.conditions_met) {
            ++res.conditioned_draws;
            bool bad = false;
            if (cfg.scheme == Scheme::BC) {
                // Strict: the result is "less than one bit" per rate.
                bad = s1 >= res.ceiling_r1 || s2 >= res.ceiling_r2 || ss >= res.ceiling_sum;
            } else if (cfg.scheme == Scheme::DC) {
                bad = s1 > kTheoremSlack || s2 > res.ceiling_r2 + kTheoremSlack;
            } else {
                bad = s1 > res.ceiling_r1 + kTheoremSlack || s2 > res.ceiling_r2 + kTheoremSlack;
            }
            if (bad)
                ++res.violations;
        }

        if (cfg.scheme == Scheme::BC && g.regime == Regime::Strong &&
            g.d_sum > bc_strong_sum_gap_without_common_term(draws[i].params, draws[i].lambda) + 1e-9)
            ++res.uncorrected_strong_exceedances;

        double util = std::max(s2 / res.ceiling_r2, ss / res.ceiling_sum);
        if (res.ceiling_r1 > 0.0)
            util = std::max(util, s1 / res.ceiling_r1);
        if (util > res.worst_utilization) {
            res.worst_utilization = util;
            res.worst_draw = draws[i];
            res.worst_report = g;
        }
    }
    if (cfg.draws == 0)
        res.worst_utilization = 0.0;
    return res;
}

} // namespace fdside
