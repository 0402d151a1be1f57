#include "fdside/model.hpp"

#include <cmath>
#include <numbers>

namespace fdside {

namespace {

void require_ratio(double x, const char* what)
{
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError(std::string(what) + " must be finite and non-negative");
}

} // namespace

void require_in_range(double x, double lo, double hi, const char* what)
{
    if (!std::isfinite(x) || x < lo || x > hi)
        throw DomainError(std::string(what) + " must lie in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
}

void ChannelParams::validate() const
{
    require_ratio(snr1, "snr1");
    require_ratio(snr2, "snr2");
    require_ratio(inr, "inr");
    require_ratio(snr_side, "snr_side");
    require_ratio(w, "w");
}

void PowerSplit::validate() const
{
    require_in_range(lambda, 0.0, 1.0, "lambda");
    require_in_range(beta, 0.0, 1.0, "beta");
}

void EcScale::validate() const
{
    require_ratio(k, "k");
}

std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::Weak: return "weak";
    case Regime::Strong: return "strong";
    case Regime::VeryStrong: return "very-strong";
    }
    return "unknown";
}

double cap(double x)
{
    require_ratio(x, "cap argument");
    return std::log1p(x) / std::numbers::ln2;
}

double side_cap(double w, double x)
{
    require_ratio(w, "side-channel bandwidth ratio");
    require_ratio(x, "side-channel SNR");
    if (w == 0.0)
        return 0.0;
    return w * std::log1p(x / w) / std::numbers::ln2;
}

Regime classify_regime(const ChannelParams& p)
{
    p.validate();
    if (p.inr < p.snr2)
        return Regime::Weak;
    if (p.inr < p.snr2 * (1.0 + p.snr1))
        return Regime::Strong;
    return Regime::VeryStrong;
}

double db_to_linear(double x_db)
{
    if (!std::isfinite(x_db))
        throw DomainError("dB value must be finite");
    return std::pow(10.0, x_db / 10.0);
}

double linear_to_db(double x)
{
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("linear ratio must be finite and positive to convert to dB");
    return 10.0 * std::log10(x);
}

} // namespace fdside
