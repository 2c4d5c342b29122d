#pragma once
// Output envelope for the CLI: the same result rendered as an aligned
// plain table, CSV, or JSON.

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace durfee::cli {

enum class Format
{
    plain,
    csv,
    json,
};

inline Format parse_format(std::string_view s)
{
    if (s == "plain")
        return Format::plain;
    if (s == "csv")
        return Format::csv;
    if (s == "json")
        return Format::json;
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

struct Table
{
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Envelope
{
    std::vector<Table> tables;
    std::vector<std::pair<std::string, std::string>> summary;
    nlohmann::ordered_json json = nlohmann::ordered_json::object();
};

inline std::string fixed(long double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lf", decimals, v);
    return buf;
}

inline std::string sci(long double v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
    return buf;
}

/// Enough significant digits to round-trip a long double.
inline std::string full(long double v)
{
    return sci(v, 21);
}

namespace detail {

inline std::string csv_escape(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

inline void print_plain(std::ostream& os, Table const& t)
{
    if (!t.title.empty())
        os << t.title << '\n';
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        width[c] = t.columns[c].size();
    for (auto const& row : t.rows)
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    auto line = [&](std::vector<std::string> const& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c)
        {
            if (c)
                os << "  ";
            os << cells[c];
            if (c + 1 < cells.size())
                os << std::string(width[c] - cells[c].size(), ' ');
        }
        os << '\n';
    };
    line(t.columns);
    std::vector<std::string> rule;
    for (auto w : width)
        rule.emplace_back(w, '-');
    line(rule);
    for (auto const& row : t.rows)
        line(row);
}

}  // namespace detail

inline void emit(std::ostream& os, Envelope const& env, Format format)
{
    switch (format)
    {
        case Format::json:
            os << env.json.dump(2) << '\n';
            return;
        case Format::csv:
            for (std::size_t i = 0; i < env.tables.size(); ++i)
            {
                if (i)
                    os << '\n';
                auto const& t = env.tables[i];
                for (std::size_t c = 0; c < t.columns.size(); ++c)
                    os << (c ? "," : "") << detail::csv_escape(t.columns[c]);
                os << '\n';
                for (auto const& row : t.rows)
                {
                    for (std::size_t c = 0; c < row.size(); ++c)
                        os << (c ? "," : "") << detail::csv_escape(row[c]);
                    os << '\n';
                }
            }
            return;
        case Format::plain:
            for (std::size_t i = 0; i < env.tables.size(); ++i)
            {
                if (i)
                    os << '\n';
                detail::print_plain(os, env.tables[i]);
            }
            if (!env.summary.empty())
            {
                if (!env.tables.empty())
                    os << '\n';
                std::size_t w = 0;
                for (auto const& [k, v] : env.summary)
                    w = std::max(w, k.size());
                for (auto const& [k, v] : env.summary)
                    os << k << ':' << std::string(w - k.size() + 1, ' ') << v << '\n';
            }
            return;
    }
}

}  // namespace durfee::cli
