#pragma once

// Channel parameterization and capacity primitives.
//
// All power quantities are linear ratios normalized by the noise power, all
// rates are in bits/s/Hz of main-channel bandwidth (W_m = 1), and the side
// channel has bandwidth ratio w = W_s / W_m.

#include <stdexcept>
#include <string>
#include <string_view>

namespace fdside {

/// Raised for inputs outside an operation's mathematical domain
/// (negative or non-finite ratios, unsupported scheme parameters).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ChannelParams {
    double snr1 = 0.0;     ///< BS -> M2 downlink SNR
    double snr2 = 0.0;     ///< M1 -> BS uplink SNR
    double inr = 0.0;      ///< M1 -> M2 inter-node interference-to-noise ratio
    double snr_side = 0.0; ///< M1 -> M2 side-channel SNR (full M1 power)
    double w = 0.0;        ///< side-channel to main-channel bandwidth ratio

    /// Throws DomainError unless every field is finite and non-negative.
    void validate() const;
};

/// M1 power split: lambda goes to the side channel, beta of the remaining
/// main-channel power carries the private message.
struct PowerSplit {
    double lambda = 0.0;
    double beta = 0.0;

    double lambda_bar() const { return 1.0 - lambda; }
    double beta_bar() const { return 1.0 - beta; }
    void validate() const;
};

/// Amplitude scale of the estimate-and-cancel side-channel copy.
struct EcScale {
    double k = 0.0;
    void validate() const;
};

enum class Regime { Weak, Strong, VeryStrong };

std::string_view to_string(Regime r);

/// log2(1 + x).
double cap(double x);

/// w * log2(1 + x / w), defined as 0 at w = 0.
double side_cap(double w, double x);

/// Boundary inputs resolve to the stronger regime.
Regime classify_regime(const ChannelParams& p);

double db_to_linear(double x_db);
double linear_to_db(double x);

/// Throws DomainError if x is not a finite number in [lo, hi].
void require_in_range(double x, double lo, double hi, const char* what);

} // namespace fdside
