#include "internal.hpp"

#include <cmath>

namespace fdside::cli {
namespace {

std::string scalar_to_string(const nlohmann::json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number())
        return v.dump();
    throw CLI::ConversionError("config values must be strings, numbers, booleans or arrays of them");
}

void collect(const nlohmann::json& obj, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out)
{
    for (const auto& [key, value] : obj.items()) {
        if (value.is_object()) {
            parents.push_back(key);
            collect(value, parents, out);
            parents.pop_back();
            continue;
        }
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array()) {
            for (const auto& e : value)
                item.inputs.push_back(scalar_to_string(e));
        } else {
            item.inputs.push_back(scalar_to_string(value));
        }
        out.push_back(std::move(item));
    }
}

} // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const CLI::Option* opt : app->get_options()) {
        if (opt->get_lnames().empty() || !opt->get_configurable())
            continue;
        const std::string name = opt->get_lnames().front();
        if (opt->count() > 0) {
            const auto& res = opt->results();
            j[name] = res.size() == 1 ? nlohmann::ordered_json(res.front()) : nlohmann::ordered_json(res);
        } else if (default_also && !opt->get_default_str().empty()) {
            j[name] = opt->get_default_str();
        }
    }
    return j.dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
        throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    std::vector<std::string> parents;
    collect(j, parents, items);
    return items;
}

void ChannelInputs::add_options(CLI::App& app)
{
    struct Quantity {
        const char* name;
        std::optional<double>* linear;
        std::optional<double>* db;
        const char* what;
    };
    const Quantity qs[] = {
        {"snr1", &snr1, &snr1_db, "downlink SNR (BS to M2)"},
        {"snr2", &snr2, &snr2_db, "uplink SNR (M1 to BS)"},
        {"inr", &inr, &inr_db, "interference-to-noise ratio (M1 to M2)"},
        {"snr-side", &snr_side, &snr_side_db, "side-channel SNR (M1 to M2)"},
    };
    std::vector<CLI::Option*> lin_opts, db_opts;
    for (const auto& q : qs) {
        auto* lin = app.add_option(std::string("--") + q.name, *q.linear, std::string(q.what) + ", linear")
                        ->check(CLI::NonNegativeNumber);
        auto* db = app.add_option(std::string("--") + q.name + "-db", *q.db, std::string(q.what) + ", dB");
        lin->excludes(db);
        lin_opts.push_back(lin);
        db_opts.push_back(db);
    }
    auto* sdb = app.add_option("--snr-db", snr_db, "symmetric SNR in dB, sets snr1 = snr2");
    auto* mu_opt = app.add_option("--mu", mu, "interference exponent: inr = SNR^mu")->check(CLI::NonNegativeNumber);
    auto* nu_opt = app.add_option("--nu", nu, "side-channel exponent: snr_side = SNR^nu")->check(CLI::NonNegativeNumber);
    for (int i = 0; i < 2; ++i) {
        sdb->excludes(lin_opts[i]);
        sdb->excludes(db_opts[i]);
    }
    mu_opt->excludes(lin_opts[2])->excludes(db_opts[2])->needs(sdb);
    nu_opt->excludes(lin_opts[3])->excludes(db_opts[3])->needs(sdb);
    app.add_option("--w", w, "side-channel to main-channel bandwidth ratio")->check(CLI::NonNegativeNumber);
}

ChannelParams ChannelInputs::resolve() const
{
    auto pick = [](const std::optional<double>& lin, const std::optional<double>& db) -> std::optional<double> {
        if (lin)
            return *lin;
        if (db)
            return db_to_linear(*db);
        return std::nullopt;
    };
    ChannelParams p;
    p.w = w;
    std::optional<double> s1 = pick(snr1, snr1_db);
    std::optional<double> s2 = pick(snr2, snr2_db);
    std::optional<double> i = pick(inr, inr_db);
    std::optional<double> side = pick(snr_side, snr_side_db);
    if (snr_db) {
        const double snr = db_to_linear(*snr_db);
        s1 = s2 = snr;
        if (mu)
            i = std::pow(snr, *mu);
        if (nu)
            side = std::pow(snr, *nu);
    }
    if (!s1 || !s2)
        throw UsageError("snr1 and snr2 are required (--snr1/--snr1-db, --snr2/--snr2-db or --snr-db)");
    if (!i)
        throw UsageError("inr is required (--inr, --inr-db or --mu with --snr-db)");
    p.snr1 = *s1;
    p.snr2 = *s2;
    p.inr = *i;
    p.snr_side = side.value_or(0.0);
    p.validate();
    return p;
}

} // namespace fdside::cli
