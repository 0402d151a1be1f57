#include "fdside/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fdside {

namespace {

constexpr double kBetaFallbackStep = 1e-4;

} // namespace

double RatePentagon::max_sum_rate() const
{
    return std::min(sum_max, r1_max + r2_max);
}

std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::BC: return "bc";
    case Scheme::CC: return "cc";
    case Scheme::DC: return "dc";
    case Scheme::EC: return "ec";
    case Scheme::NoSC: return "nosc";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name)
{
    if (name == "bc") return Scheme::BC;
    if (name == "cc") return Scheme::CC;
    if (name == "dc") return Scheme::DC;
    if (name == "ec") return Scheme::EC;
    if (name == "nosc" || name == "no-sc") return Scheme::NoSC;
    return std::nullopt;
}

double side_gain_factor(const ChannelParams& p, double lambda)
{
    return std::exp2(side_cap(p.w, lambda * p.snr_side));
}

RatePentagon bc_region(const ChannelParams& p, const PowerSplit& s)
{
    p.validate();
    s.validate();
    const double lb = s.lambda_bar();
    const double side = side_cap(p.w, s.lambda * p.snr_side);

    switch (classify_regime(p)) {
    case Regime::VeryStrong:
        return {cap(p.snr1), cap(p.snr2), kUnbounded};
    case Regime::Strong:
        return {cap(p.snr1), cap(lb * p.snr2), cap(p.snr1 + lb * p.inr) + side};
    case Regime::Weak:
        break;
    }

    const double priv = s.beta * lb * p.inr;
    const double common = s.beta_bar() * lb * p.inr;
    const double private_rate = cap(s.beta * lb * p.snr2);

    RatePentagon r;
    r.r1_max = cap(p.snr1 / (1.0 + priv));
    r.r2_max = std::min(cap(lb * p.snr2), private_rate + cap(common / (1.0 + priv)) + side);
    r.sum_max = private_rate + cap((p.snr1 + common) / (1.0 + priv)) + side;
    return r;
}

MacComponentRegions bc_mac_components(const ChannelParams& p, const PowerSplit& s)
{
    p.validate();
    s.validate();
    const double lb = s.lambda_bar();
    const double side = side_cap(p.w, s.lambda * p.snr_side);
    const double priv = s.beta * lb * p.inr;
    const double common = s.beta_bar() * lb * p.inr;

    MacComponentRegions m;
    m.c1 = {cap(s.beta_bar() * lb * p.snr2), cap(s.beta * lb * p.snr2), cap(lb * p.snr2)};
    m.c2 = {cap(p.snr1 / (1.0 + priv)), cap(common / (1.0 + priv)) + side,
            cap((p.snr1 + common) / (1.0 + priv)) + side};
    return m;
}

double bc_sum_rate(const ChannelParams& p, double lambda, double beta)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");
    require_in_range(beta, 0.0, 1.0, "beta");
    const double lb = 1.0 - lambda;
    const double priv = beta * lb * p.inr;
    const double common = (1.0 - beta) * lb * p.inr;
    const double r2 = std::min(cap(lb * p.snr2), cap(beta * lb * p.snr2) +
                                                     cap(common / (p.snr1 + priv + 1.0)) +
                                                     side_cap(p.w, lambda * p.snr_side));
    return cap(p.snr1 / (priv + 1.0)) + r2;
}

BetaStar bc_beta_star(const ChannelParams& p, double lambda)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");
    if (p.inr >= p.snr2)
        return {0.0, false};

    const double lb = 1.0 - lambda;
    const double a = side_gain_factor(p, lambda);
    const double num = (1.0 + lb * p.snr2) * (1.0 + p.snr1) - a * (1.0 + p.snr1 + lb * p.inr);
    const double den = a * lb * p.snr2 * (1.0 + p.snr1 + lb * p.inr) - lb * p.inr * (1.0 + lb * p.snr2);
    const double beta = num / den;
    if (den > 0.0 && std::isfinite(beta))
        return {std::clamp(beta, 0.0, 1.0), false};

    // The closed form degenerates (e.g. lambda = 1); search the beta grid.
    const auto steps = static_cast<int>(std::lround(1.0 / kBetaFallbackStep));
    double best_beta = 0.0;
    double best = bc_sum_rate(p, lambda, 0.0);
    for (int i = 1; i <= steps; ++i) {
        const double b = static_cast<double>(i) / steps;
        const double v = bc_sum_rate(p, lambda, b);
        if (v > best) {
            best = v;
            best_beta = b;
        }
    }
    return {best_beta, true};
}

RatePentagon cc_region(const ChannelParams& p, double lambda)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");
    const double lb = 1.0 - lambda;
    const double am1 = std::expm1(side_cap(p.w, lambda * p.snr_side) * std::numbers::ln2);
    const double g = 1.0 + p.snr1 + lb * p.inr;

    double sinr = p.snr1;
    if (std::isfinite(am1)) {
        sinr = p.snr1 * (1.0 + p.snr1 + g * am1) / (g * am1 + (1.0 + p.snr1) * (1.0 + lb * p.inr));
    }
    RatePentagon r;
    r.r1_max = cap(sinr);
    r.r2_max = cap(lb * p.snr2);
    r.sum_max = r.r1_max + r.r2_max;
    return r;
}

std::optional<double> cc_quantization_variance(const ChannelParams& p, double lambda)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");
    const double am1 = std::expm1(side_cap(p.w, lambda * p.snr_side) * std::numbers::ln2);
    if (!(am1 > 0.0))
        return std::nullopt;
    const double v = (1.0 - lambda) * p.inr;
    if (!std::isfinite(am1))
        return 0.0;
    return v * (1.0 + p.snr1) / ((1.0 + p.snr1 + v) * am1);
}

double cc_r1_from_variance(const ChannelParams& p, double lambda, double q)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");
    if (!(q >= 0.0))
        throw DomainError("quantization variance must be non-negative");
    const double v = (1.0 - lambda) * p.inr;
    if (v == 0.0)
        return cap(p.snr1);
    if (std::isinf(q))
        return cap(p.snr1 / (1.0 + v));
    return cap(p.snr1 * (v + q) / (v * q + v + q));
}

RatePentagon dc_region(const ChannelParams& p, double lambda)
{
    p.validate();
    require_in_range(lambda, 0.0, 1.0, "lambda");
    RatePentagon r;
    r.r1_max = cap(p.snr1);
    r.r2_max = std::min(side_cap(p.w, lambda * p.snr_side), cap((1.0 - lambda) * p.snr2));
    r.sum_max = r.r1_max + r.r2_max;
    return r;
}

RatePentagon ec_region(const ChannelParams& p, EcScale k)
{
    p.validate();
    k.validate();
    if (p.w < 1.0)
        throw DomainError("estimate-and-cancel: the bandwidth of the side-channel is required to be "
                          "equal or larger than the main-channel bandwidth (w >= 1)");
    const double c = (1.0 + k.k) * (1.0 + k.k);
    const double t = k.k * k.k * p.snr_side / c;
    RatePentagon r;
    r.r1_max = cap(p.snr1 * (1.0 + t) / (1.0 + t + p.inr / c));
    r.r2_max = cap(p.snr2 / c);
    r.sum_max = r.r1_max + r.r2_max;
    return r;
}

bool is_integer_bandwidth(double w)
{
    return std::isfinite(w) && w >= 1.0 && std::floor(w) == w;
}

RatePentagon z_channel_region(const ChannelParams& p, std::optional<double> beta)
{
    ChannelParams z = p;
    z.w = 0.0;
    if (classify_regime(z) != Regime::Weak)
        return bc_region(z, {0.0, 0.0});
    const double b = beta ? *beta : bc_beta_star(z, 0.0).beta;
    return bc_region(z, {0.0, b});
}

} // namespace fdside
