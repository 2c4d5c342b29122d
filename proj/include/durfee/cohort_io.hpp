#pragma once
//
// Readers for cohort CSV files and citation-profile files.
//
// Cohort CSV (UTF-8): header row beginning
//     name,citations,h,citations_nonbook,h_nonbook
// optional values left empty. Further columns are carried through
// untouched in CohortRow::extra. Lines starting with '#' are comments.
//
// Profile file: one profile per line, "name: c1 c2 c3 ..." with citations
// per paper in any order.
//

#include "durfee/profile_analyzer.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace durfee {

class ParseError : public std::runtime_error
{
  public:
    ParseError(std::size_t line, std::string const& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

struct CohortRow
{
    ScholarRecord record;
    std::map<std::string, std::string> extra;
    std::size_t line = 0;
};

inline constexpr std::string_view cohort_columns[]
    = {"name", "citations", "h", "citations_nonbook", "h_nonbook"};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// RFC 4180-style field splitting; quotes may wrap a field and "" escapes.
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char const c = line[i];
        if (quoted)
        {
            if (c == '"')
            {
                if (i + 1 < line.size() && line[i + 1] == '"')
                {
                    cur += '"';
                    ++i;
                }
                else
                {
                    quoted = false;
                }
            }
            else
            {
                cur += c;
            }
        }
        else if (c == '"' && trim(cur).empty())
        {
            quoted = true;
            was_quoted = true;
            cur.clear();
        }
        else if (c == ',')
        {
            fields.push_back(was_quoted ? cur : std::string(trim(cur)));
            cur.clear();
            was_quoted = false;
        }
        else
        {
            cur += c;
        }
    }
    if (quoted)
        throw ParseError(line_no, "unterminated quoted field");
    fields.push_back(was_quoted ? cur : std::string(trim(cur)));
    return fields;
}

inline std::uint64_t parse_count(std::string_view text, std::size_t line_no, std::string_view column)
{
    std::uint64_t value = 0;
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ParseError(line_no, std::string(column) + ": expected a nonnegative integer, got '"
                                      + std::string(text) + "'");
    return value;
}

inline bool skip_line(std::string_view line)
{
    auto const t = trim(line);
    return t.empty() || t.front() == '#';
}

}  // namespace detail

inline std::vector<CohortRow> read_cohort_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0)
            line.erase(0, 3);
        if (detail::skip_line(line))
            continue;
        header = detail::split_csv_line(line, line_no);
        break;
    }
    if (header.empty())
        throw ParseError(line_no, "missing header row");
    for (std::size_t i = 0; i < std::size(cohort_columns); ++i)
    {
        if (i >= header.size() || header[i] != cohort_columns[i])
            throw ParseError(line_no, "header must begin with "
                                      "name,citations,h,citations_nonbook,h_nonbook");
    }

    std::vector<CohortRow> rows;
    while (std::getline(in, line))
    {
        ++line_no;
        if (detail::skip_line(line))
            continue;
        auto fields = detail::split_csv_line(line, line_no);
        if (fields.size() != header.size())
            throw ParseError(line_no, "expected " + std::to_string(header.size())
                                          + " fields, got " + std::to_string(fields.size()));
        CohortRow row;
        row.line = line_no;
        auto& r = row.record;
        r.name = fields[0];
        if (r.name.empty())
            throw ParseError(line_no, "name: must not be empty");
        r.citations = detail::parse_count(fields[1], line_no, "citations");
        r.h = detail::parse_count(fields[2], line_no, "h");
        if (!fields[3].empty())
            r.citations_nonbook = detail::parse_count(fields[3], line_no, "citations_nonbook");
        if (!fields[4].empty())
            r.h_nonbook = detail::parse_count(fields[4], line_no, "h_nonbook");
        for (std::size_t i = std::size(cohort_columns); i < header.size(); ++i)
            row.extra.emplace(header[i], fields[i]);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<CohortRow> read_cohort_csv(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open cohort file '" + path + "'");
    return read_cohort_csv(in);
}

inline std::vector<ScholarRecord> records_of(std::vector<CohortRow> const& rows)
{
    std::vector<ScholarRecord> out;
    out.reserve(rows.size());
    for (auto const& row : rows)
        out.push_back(row.record);
    return out;
}

inline std::vector<ScholarRecord> read_profiles(std::istream& in)
{
    std::vector<ScholarRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (detail::skip_line(line))
            continue;
        auto const colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(line_no, "expected 'name: c1 c2 ...'");
        std::string name(detail::trim(std::string_view(line).substr(0, colon)));
        if (name.empty())
            throw ParseError(line_no, "empty profile name");
        std::vector<std::uint64_t> parts;
        std::string_view rest = std::string_view(line).substr(colon + 1);
        while (true)
        {
            rest = detail::trim(rest);
            if (rest.empty())
                break;
            auto const space = rest.find_first_of(" \t");
            auto const token = rest.substr(0, space);
            parts.push_back(detail::parse_count(token, line_no, "citations"));
            if (space == std::string_view::npos)
                break;
            rest = rest.substr(space);
        }
        out.push_back(record_from_profile(std::move(name), Partition::from_unsorted(std::move(parts))));
    }
    return out;
}

inline std::vector<ScholarRecord> read_profiles(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open profile file '" + path + "'");
    return read_profiles(in);
}

}  // namespace durfee
