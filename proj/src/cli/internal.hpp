#pragma once

#include "fdside/model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdside::cli {

/// Invalid flag combination detected after CLI11 parsing (exit code 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string dump_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json json_number(double x);

/// Reads `--config FILE` as JSON. Top-level keys are global flags, nested
/// objects named after a subcommand hold that subcommand's flags. Keys are
/// long flag names without the leading dashes.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

/// Channel parameters given as linear ratios, dB, or exponents of --snr-db.
struct ChannelInputs {
    std::optional<double> snr1, snr2, inr, snr_side;
    std::optional<double> snr1_db, snr2_db, inr_db, snr_side_db;
    std::optional<double> snr_db, mu, nu;
    double w = 0.0;

    void add_options(CLI::App& app);
    /// Throws UsageError when a required quantity is missing.
    ChannelParams resolve() const;
};

} // namespace fdside::cli
