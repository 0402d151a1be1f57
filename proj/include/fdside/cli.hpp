#pragma once

// Command-line front end. `run` is the whole program; the CSV helpers are
// exposed so tests can check the round-trip property of emitted files.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fdside::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitVerificationFailed = 2,
    kExitDomain = 3,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 12 significant digits ("%.12g"); infinities print as "inf".
std::string format_number(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// LF line endings; cells must not contain ',', '"' or newlines.
std::string write_csv(const CsvTable& t);
CsvTable parse_csv(std::string_view text);

/// Parses CSV output, renormalizes every numeric cell and writes it back.
std::string reformat_csv(std::string_view text);
/// Parses JSON output and dumps it again with the tool's formatting.
std::string reformat_json(std::string_view text);

} // namespace fdside::cli
