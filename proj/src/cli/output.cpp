#include "fdside/cli.hpp"

#include "internal.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace fdside::cli {

std::string format_number(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (std::isnan(x))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string write_csv(const CsvTable& t)
{
    auto line = [](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].find_first_of(",\"\n\r") != std::string::npos)
                throw std::invalid_argument("csv cell needs quoting: " + cells[i]);
            if (i)
                s += ',';
            s += cells[i];
        }
        s += '\n';
        return s;
    };
    std::string out = line(t.header);
    for (const auto& r : t.rows)
        out += line(r);
    return out;
}

CsvTable parse_csv(std::string_view text)
{
    CsvTable t;
    bool first = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.emplace_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

std::string reformat_csv(std::string_view text)
{
    CsvTable t = parse_csv(text);
    for (auto& row : t.rows) {
        for (auto& cell : row) {
            if (cell.empty())
                continue;
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end != cell.c_str() && *end == '\0')
                cell = format_number(v);
        }
    }
    return write_csv(t);
}

std::string reformat_json(std::string_view text)
{
    return dump_json(nlohmann::ordered_json::parse(text));
}

std::string dump_json(const nlohmann::ordered_json& j)
{
    return j.dump(2) + "\n";
}

nlohmann::ordered_json json_number(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

} // namespace fdside::cli
