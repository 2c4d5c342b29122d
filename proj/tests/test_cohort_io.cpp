#include "durfee/cohort_io.hpp"
#include "durfee/reproduce.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace durfee {
namespace {

std::vector<CohortRow> parse(std::string const& text)
{
    std::istringstream in(text);
    return read_cohort_csv(in);
}

std::size_t error_line(std::string const& text)
{
    try
    {
        parse(text);
    }
    catch (ParseError const& e)
    {
        return e.line();
    }
    return 0;
}

TEST(CohortCsv, ParsesRowsAndExtraColumns)
{
    auto const rows = parse("\xEF\xBB\xBF"
                            "name,citations,h,citations_nonbook,h_nonbook,award_year\n"
                            "# comment\n"
                            "\n"
                            "\"Stanley, R.\",6510,35,3273,32,\n"
                            "Okounkov,1677,24,,,2006\n");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].record.name, "Stanley, R.");
    EXPECT_EQ(rows[0].record.citations, 6510u);
    EXPECT_EQ(rows[0].record.h, 35u);
    EXPECT_EQ(rows[0].record.citations_nonbook, 3273u);
    EXPECT_EQ(rows[0].record.h_nonbook, 32u);
    EXPECT_EQ(rows[0].line, 4u);
    EXPECT_EQ(rows[0].extra.at("award_year"), "");
    EXPECT_FALSE(rows[1].record.citations_nonbook);
    EXPECT_FALSE(rows[1].record.has_nonbook());
    EXPECT_EQ(rows[1].extra.at("award_year"), "2006");
    EXPECT_EQ(records_of(rows).size(), 2u);
}

TEST(CohortCsv, ErrorsCarryLineNumbers)
{
    std::string const header = "name,citations,h,citations_nonbook,h_nonbook\n";
    EXPECT_EQ(error_line(header + "a,10,2,,\nb,ten,2,,\n"), 3u);
    EXPECT_EQ(error_line(header + "a,10,2\n"), 2u);
    EXPECT_EQ(error_line(header + "a,-5,2,,\n"), 2u);
    EXPECT_EQ(error_line(header + ",5,2,,\n"), 2u);
    EXPECT_EQ(error_line(header + "\"open,5,2,,\n"), 2u);
    EXPECT_EQ(error_line("name,h,citations\n"), 1u);
    EXPECT_EQ(error_line(""), 0u);
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(read_cohort_csv(std::string("/nonexistent/cohort.csv")), std::runtime_error);
}

TEST(CohortCsv, ErrorMessageMentionsLine)
{
    try
    {
        parse("name,citations,h,citations_nonbook,h_nonbook\nx,1.5,1,,\n");
        FAIL();
    }
    catch (ParseError const& e)
    {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(Profiles, ParsesAndSorts)
{
    std::istringstream in("# name: citations\n"
                          "alice: 1 5 3 0\n"
                          "bob:\n"
                          "carol : 10\t10  10\n");
    auto const rs = read_profiles(in);
    ASSERT_EQ(rs.size(), 3u);
    EXPECT_EQ(rs[0].name, "alice");
    EXPECT_EQ(rs[0].citations, 9u);
    EXPECT_EQ(rs[0].h, 2u);
    ASSERT_TRUE(rs[0].full_profile);
    EXPECT_EQ(rs[0].full_profile->parts(), (std::vector<std::uint64_t>{5, 3, 1, 0}));
    EXPECT_EQ(rs[1].citations, 0u);
    EXPECT_EQ(rs[1].h, 0u);
    EXPECT_EQ(rs[2].name, "carol");
    EXPECT_EQ(rs[2].h, 3u);
}

TEST(Profiles, Errors)
{
    std::istringstream no_colon("alice 1 2 3\n");
    EXPECT_THROW(read_profiles(no_colon), ParseError);
    std::istringstream bad_number("\nalice: 1 x 3\n");
    try
    {
        read_profiles(bad_number);
        FAIL();
    }
    catch (ParseError const& e)
    {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Fixtures, AllPresentAndConsistent)
{
    auto const dir = default_data_dir();
    for (std::string target : {"table2", "table3", "table4", "appendix"})
    {
        auto const file = fixture_for(target);
        ASSERT_TRUE(file) << target;
        auto const rows = read_cohort_csv((dir / *file).string());
        EXPECT_FALSE(rows.empty()) << target;
        for (auto const& row : rows)
            EXPECT_TRUE(row.extra.count("printed_estimate")) << target;
    }
    EXPECT_FALSE(fixture_for("table9"));
    EXPECT_EQ(read_cohort_csv((dir / "nas.csv").string()).size(), 119u);
}

TEST(Reproduce, EstimateMatchingRoundsFirst)
{
    EXPECT_TRUE(estimate_matches(20.1234, 20.0 + 0.1));
    EXPECT_TRUE(estimate_matches(20.04, 20.0));
    EXPECT_FALSE(estimate_matches(10.3, 10.0));
    EXPECT_TRUE(estimate_matches(19.96, 20.0));
}

TEST(Reproduce, TransposedColumnsAreDetected)
{
    ScholarRecord r{"swap", 1677, 24, {}, {}, {}};
    PrintedCells swapped;
    swapped.estimate = 24;
    swapped.h = 22.1;
    EXPECT_TRUE(detect_transposed_columns(r, swapped));
    PrintedCells fine;
    fine.estimate = 22.1;
    fine.h = 24;
    EXPECT_FALSE(detect_transposed_columns(r, fine));
}

}  // namespace
}  // namespace durfee
