#include "fdside/optimize.hpp"

#include "fdside/analysis.hpp"
#include "fdside/parallel.hpp"
#include "fdside/search.hpp"

#include <algorithm>
#include <cmath>

namespace fdside {
namespace {

constexpr double kRefineTol = 1e-7;
constexpr std::size_t kRefinedCandidates = 3;

std::vector<double> lambda_candidates()
{
    std::vector<double> xs{0.0};
    // Log-spaced points below the coarse step catch peaks squeezed against
    // lambda = 0 at high side-channel SNR.
    for (int i = 0; i < 16; ++i)
        xs.push_back(std::pow(10.0, -6.0 + 4.0 * i / 16.0));
    for (int i = 1; i <= 100; ++i)
        xs.push_back(i / 100.0);
    return xs;
}

std::vector<double> ec_candidates()
{
    std::vector<double> xs{0.0};
    constexpr int n = 240;
    for (int i = 0; i <= n; ++i)
        xs.push_back(std::pow(10.0, -4.0 + 6.0 * i / n));
    return xs;
}

// Grid scan followed by golden-section refinement around the best few local
// maxima. Ties keep the smallest parameter.
template <class F>
ScalarMax grid_then_golden(F&& f, const std::vector<double>& xs)
{
    std::vector<double> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        vals[i] = f(xs[i]);

    ScalarMax best{xs[0], vals[0], xs.size()};
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (vals[i] > best.value) {
            best.x = xs[i];
            best.value = vals[i];
        }
    }

    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const bool left_ok = i == 0 || vals[i] >= vals[i - 1];
        const bool right_ok = i + 1 == xs.size() || vals[i] >= vals[i + 1];
        if (left_ok && right_ok)
            peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    if (peaks.size() > kRefinedCandidates)
        peaks.resize(kRefinedCandidates);

    for (std::size_t i : peaks) {
        const double lo = xs[i == 0 ? 0 : i - 1];
        const double hi = xs[i + 1 == xs.size() ? i : i + 1];
        if (hi <= lo)
            continue;
        const ScalarMax r = golden_max(f, lo, hi, kRefineTol);
        best.evaluations += r.evaluations;
        if (r.value > best.value) {
            best.x = r.x;
            best.value = r.value;
        }
    }
    return best;
}

} // namespace

double ec_side_power_fraction(double k)
{
    require_in_range(k, 0.0, kUnbounded, "k");
    return k * k / ((1.0 + k) * (1.0 + k));
}

double side_power_fraction(const SplitChoice& s)
{
    if (const auto* ps = std::get_if<PowerSplit>(&s))
        return ps->lambda;
    return ec_side_power_fraction(std::get<EcScale>(s).k);
}

double scheme_sum_at(Scheme scheme, const ChannelParams& p, double x)
{
    switch (scheme) {
    case Scheme::BC: return bc_sum_rate(p, x, bc_beta_star(p, x).beta);
    case Scheme::CC: return cc_region(p, x).max_sum_rate();
    case Scheme::DC: return dc_region(p, x).max_sum_rate();
    case Scheme::EC: return ec_region(p, EcScale{x}).max_sum_rate();
    case Scheme::NoSC: {
        ChannelParams q = p;
        q.w = 0.0;
        return bc_sum_rate(q, 0.0, bc_beta_star(q, 0.0).beta);
    }
    }
    throw DomainError("unknown scheme");
}

OptResult maximize_sum(Scheme scheme, const ChannelParams& p)
{
    p.validate();
    OptResult out;
    out.scheme = scheme;

    if (scheme == Scheme::NoSC) {
        ChannelParams q = p;
        q.w = 0.0;
        const BetaStar bs = bc_beta_star(q, 0.0);
        out.best_split = PowerSplit{0.0, bs.beta};
        out.best_sum = bc_sum_rate(q, 0.0, bs.beta);
        out.evaluations = 1;
        out.method = bs.grid_fallback ? "grid" : "closed-form";
        return out;
    }

    if (scheme == Scheme::EC) {
        if (p.w < 1.0)
            throw DomainError("estimate-and-cancel needs side-channel bandwidth ratio w >= 1");
        const auto r = grid_then_golden([&](double k) { return scheme_sum_at(scheme, p, k); },
                                        ec_candidates());
        out.best_split = EcScale{r.x};
        out.best_sum = r.value;
        out.evaluations = r.evaluations;
        out.method = "grid+golden";
        return out;
    }

    const auto r = grid_then_golden([&](double l) { return scheme_sum_at(scheme, p, l); },
                                    lambda_candidates());
    PowerSplit s{r.x, 0.0};
    if (scheme == Scheme::BC)
        s.beta = bc_beta_star(p, r.x).beta;
    out.best_split = s;
    out.best_sum = r.value;
    out.evaluations = r.evaluations;
    out.method = "grid+golden";
    return out;
}

std::vector<double> mu_grid(double start, double end, double step)
{
    require_in_range(start, 0.0, kUnbounded, "mu start");
    require_in_range(end, start, kUnbounded, "mu end");
    if (!(step > 0.0) || !std::isfinite(step))
        throw DomainError("mu step must be positive");
    const auto n = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9));
    std::vector<double> mus;
    mus.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        mus.push_back(start + static_cast<double>(i) * step);
    return mus;
}

ChannelParams symmetric_params(double snr_db, double mu, double nu, double w)
{
    const double snr = db_to_linear(snr_db);
    ChannelParams p;
    p.snr1 = snr;
    p.snr2 = snr;
    p.inr = std::pow(snr, mu);
    p.snr_side = std::pow(snr, nu);
    p.w = w;
    p.validate();
    return p;
}

std::vector<SweepRow> figure6_sweep(const SweepConfig& cfg)
{
    require_in_range(cfg.snr_db, -300.0, 300.0, "snr_db");
    require_in_range(cfg.w, 0.0, kUnbounded, "w");
    if (cfg.nu_policy == NuPolicy::Constant)
        require_in_range(cfg.nu, 0.0, kUnbounded, "nu");
    const std::vector<double> mus = mu_grid(cfg.mu_start, cfg.mu_end, cfg.mu_step);

    std::vector<Scheme> schemes{Scheme::BC, Scheme::CC, Scheme::DC};
    if (cfg.w >= 1.0)
        schemes.push_back(Scheme::EC);
    schemes.push_back(Scheme::NoSC);

    std::vector<std::vector<SweepRow>> per_mu(mus.size());
    parallel_for(mus.size(), cfg.threads, [&](std::size_t i) {
        const double mu = mus[i];
        const double nu = cfg.nu_policy == NuPolicy::EqualMu ? mu : cfg.nu;
        const ChannelParams p = symmetric_params(cfg.snr_db, mu, nu, cfg.w);
        std::vector<SweepRow> rows;
        for (Scheme s : schemes) {
            const OptResult r = maximize_sum(s, p);
            SweepRow row;
            row.mu = mu;
            row.nu = nu;
            row.scheme = s;
            row.sum_rate = r.best_sum;
            row.gain = mgain_finite(p, r.best_sum);
            row.optimal_lambda = side_power_fraction(r.best_split);
            if (const auto* k = std::get_if<EcScale>(&r.best_split))
                row.ec_k = k->k;
            rows.push_back(row);
        }
        const double base = rows.back().gain;
        for (auto& row : rows)
            row.gain_ratio_vs_nosc = row.gain / base;
        per_mu[i] = std::move(rows);
    });

    std::vector<SweepRow> out;
    out.reserve(mus.size() * schemes.size());
    for (auto& rows : per_mu)
        out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

std::vector<SweepRow> figure7_sweep(const SweepConfig& cfg)
{
    std::vector<SweepRow> rows = figure6_sweep(cfg);
    std::erase_if(rows, [](const SweepRow& r) { return r.scheme == Scheme::NoSC; });
    return rows;
}

namespace {

void add_pentagon(std::vector<FrontierSample>& out, const RatePentagon& pent, const SplitChoice& split,
                  double resolution)
{
    const double spacing = std::max(resolution * std::max(pent.r1_max, pent.r2_max), 1e-9);
    for (const RatePoint& pt : pentagon_boundary(pent, spacing))
        out.push_back({pt, split});
}

std::vector<FrontierSample> tagged_non_dominated(std::vector<FrontierSample> pts)
{
    std::sort(pts.begin(), pts.end(), [](const FrontierSample& a, const FrontierSample& b) {
        if (a.point.r1 != b.point.r1)
            return a.point.r1 > b.point.r1;
        return a.point.r2 > b.point.r2;
    });
    std::vector<FrontierSample> keep;
    double best_r2 = -kUnbounded;
    for (const auto& s : pts) {
        if (s.point.r2 > best_r2) {
            keep.push_back(s);
            best_r2 = s.point.r2;
        }
    }
    std::reverse(keep.begin(), keep.end());
    return keep;
}

} // namespace

std::vector<FrontierSample> pareto_frontier(Scheme scheme, const ChannelParams& p, double resolution)
{
    p.validate();
    if (!(resolution > 0.0) || resolution > 0.1)
        throw DomainError("frontier resolution must lie in (0, 0.1]");
    const auto n = static_cast<int>(std::ceil(1.0 / resolution));
    auto grid = [n](int i) { return std::min(1.0, static_cast<double>(i) / n); };

    std::vector<FrontierSample> pts;
    switch (scheme) {
    case Scheme::BC:
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                const PowerSplit s{grid(i), grid(j)};
                add_pentagon(pts, bc_region(p, s), s, resolution);
            }
        }
        break;
    case Scheme::NoSC: {
        ChannelParams q = p;
        q.w = 0.0;
        for (int j = 0; j <= n; ++j) {
            const PowerSplit s{0.0, grid(j)};
            add_pentagon(pts, bc_region(q, s), s, resolution);
        }
        break;
    }
    case Scheme::CC:
    case Scheme::DC:
        for (int i = 0; i <= n; ++i) {
            const PowerSplit s{grid(i), 0.0};
            const RatePentagon pent = scheme == Scheme::CC ? cc_region(p, s.lambda) : dc_region(p, s.lambda);
            add_pentagon(pts, pent, s, resolution);
        }
        break;
    case Scheme::EC: {
        if (p.w < 1.0)
            throw DomainError("estimate-and-cancel needs side-channel bandwidth ratio w >= 1");
        add_pentagon(pts, ec_region(p, EcScale{0.0}), EcScale{0.0}, resolution);
        for (int i = 0; i <= n; ++i) {
            const EcScale k{std::pow(10.0, -4.0 + 6.0 * i / n)};
            add_pentagon(pts, ec_region(p, k), k, resolution);
        }
        break;
    }
    }
    return tagged_non_dominated(std::move(pts));
}

} // namespace fdside
