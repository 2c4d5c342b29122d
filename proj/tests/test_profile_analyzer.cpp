#include "durfee/profile_analyzer.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace durfee {
namespace {

using Parts = std::vector<std::uint64_t>;

double round1(double v)
{
    return std::round(v * 10.0) / 10.0;
}

Partition random_partition(std::mt19937_64& rng, std::uint64_t max_size)
{
    std::uniform_int_distribution<std::uint64_t> len_dist(0, 40);
    Parts parts;
    std::uint64_t total = 0;
    std::uint64_t const len = len_dist(rng);
    for (std::uint64_t i = 0; i < len && total < max_size; ++i)
    {
        std::uniform_int_distribution<std::uint64_t> part(0, std::min<std::uint64_t>(60, max_size - total));
        parts.push_back(part(rng));
        total += parts.back();
    }
    return Partition::from_unsorted(parts);
}

TEST(Partition, Validation)
{
    EXPECT_NO_THROW(Partition(Parts{5, 3, 1, 0}));
    EXPECT_NO_THROW(Partition(Parts{}));
    EXPECT_THROW(Partition(Parts{1, 3}), std::invalid_argument);
    auto const p = Partition::from_unsorted({1, 0, 5, 3});
    EXPECT_EQ(p.parts(), (Parts{5, 3, 1, 0}));
    EXPECT_EQ(p.size(), 9u);
    EXPECT_EQ(p.length(), 4u);
}

TEST(HIndex, Examples)
{
    EXPECT_EQ(h_index(Partition(Parts{5, 3, 1, 0})), 2u);
    EXPECT_EQ(h_index(Partition()), 0u);
    EXPECT_EQ(h_index(Partition(Parts{3, 3, 3})), 3u);
    EXPECT_EQ(h_index(Partition(Parts{0, 0})), 0u);
    EXPECT_EQ(h_index(Partition(Parts{100})), 1u);
}

TEST(Decompose, Examples)
{
    auto const d = durfee_decompose(Partition(Parts{5, 3, 1}));
    EXPECT_EQ(d.k, 2u);
    EXPECT_EQ(d.right.parts(), (Parts{3, 1}));
    EXPECT_EQ(d.below.parts(), (Parts{1}));

    auto const e = durfee_decompose(Partition());
    EXPECT_EQ(e.k, 0u);
    EXPECT_TRUE(e.right.empty());
    EXPECT_TRUE(e.below.empty());

    auto const sq = durfee_decompose(Partition(Parts{2, 2}));
    EXPECT_EQ(sq.k, 2u);
    EXPECT_TRUE(sq.right.empty());
    EXPECT_TRUE(sq.below.empty());
}

TEST(Decompose, RecomposeRejectsMalformedTriples)
{
    EXPECT_THROW(recompose({1, Partition(Parts{2, 1}), Partition()}), std::invalid_argument);
    EXPECT_THROW(recompose({1, Partition(), Partition(Parts{2})}), std::invalid_argument);
}

TEST(Decompose, PropertiesOnRandomPartitions)
{
    std::mt19937_64 rng(20140217);
    for (int trial = 0; trial < 3000; ++trial)
    {
        auto const lambda = random_partition(rng, 500);
        auto const d = durfee_decompose(lambda);
        ASSERT_EQ(d.k, h_index(lambda));
        ASSERT_EQ(d.k, oracle::durfee_side(lambda.parts()));
        ASSERT_EQ(d.k * d.k + d.right.size() + d.below.size(), lambda.size());
        ASSERT_LE(d.right.length(), d.k);
        ASSERT_TRUE(d.below.empty() || d.below[0] <= d.k);
        ASSERT_EQ(recompose(d), lambda);
        ASSERT_LE(h_index(lambda), isqrt(lambda.size()));
    }
}

TEST(HIndex, MonotoneUnderAddingACitation)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial)
    {
        auto const lambda = random_partition(rng, 400);
        if (lambda.empty())
            continue;
        std::uniform_int_distribution<std::size_t> pick(0, lambda.length() - 1);
        Parts bumped = lambda.parts();
        ++bumped[pick(rng)];
        ASSERT_GE(h_index(Partition::from_unsorted(bumped)), h_index(lambda));
    }
}

TEST(HirschA, Examples)
{
    EXPECT_NEAR(hirsch_a(6730, 40), 4.20625, 1e-12);
    EXPECT_NEAR(hirsch_a(1012, 15), 4.497777777777778, 1e-12);
    for (std::uint64_t h = 1; h < 50; ++h)
        EXPECT_DOUBLE_EQ(hirsch_a(h * h, h), 1.0);
    EXPECT_THROW(hirsch_a(10, 0), std::invalid_argument);
}

TEST(Pearson, Examples)
{
    std::vector<Point> up{{1, 1}, {2, 2}, {3, 3}};
    EXPECT_NEAR(pearson_r(up), 1.0, 1e-15);
    std::vector<Point> down{{1, 3}, {2, 2}, {3, 1}};
    EXPECT_NEAR(pearson_r(down), -1.0, 1e-15);
    std::vector<Point> mixed{{1, 2}, {2, 1}, {3, 4}, {4, 3}};
    EXPECT_NEAR(pearson_r(mixed), 0.6, 1e-12);
}

TEST(Pearson, DegenerateInput)
{
    std::vector<Point> one{{1, 1}};
    EXPECT_THROW(pearson_r(one), DegenerateInputError);
    std::vector<Point> flat{{1, 2}, {2, 2}, {3, 2}};
    EXPECT_THROW(pearson_r(flat), DegenerateInputError);
    std::vector<Point> none;
    EXPECT_THROW(pearson_r(none), DegenerateInputError);
}

TEST(Assess, Okounkov)
{
    ScholarRecord r{"A. Okounkov", 1677, 24, {}, {}, {}};
    auto const a = assess(r);
    EXPECT_NEAR(round1(a.primary.estimate), 22.1, 1e-9);
    EXPECT_EQ(a.primary.interval.low, 18u);
    EXPECT_GE(a.primary.interval.high, 25u);
    EXPECT_TRUE(a.primary.in_interval);
    EXPECT_EQ(a.primary.anomaly, Anomaly::none);
    EXPECT_EQ(a.primary.distance, 0u);
    EXPECT_FALSE(a.nonbook);
    EXPECT_TRUE(a.issues.empty());
}

TEST(Assess, StanleyWithBooks)
{
    ScholarRecord r{"R. Stanley", 6510, 35, 3148, 32, {}};
    auto const a = assess(r);
    EXPECT_NEAR(round1(a.primary.estimate), 43.6, 1e-9);
    ASSERT_TRUE(a.primary.ratio);
    EXPECT_NEAR(*a.primary.ratio, 35.0 / a.primary.estimate, 1e-15);
    EXPECT_NEAR(*a.primary.ratio, 0.80, 0.005);
    ASSERT_TRUE(a.nonbook);
    EXPECT_NEAR(round1(a.nonbook->estimate), 30.3, 1e-9);
    EXPECT_EQ(a.nonbook->h, 32u);
    EXPECT_EQ(a.primary.in_interval, a.primary.interval.contains(35));
}

TEST(Assess, Empty)
{
    ScholarRecord r{"nobody", 0, 0, {}, {}, {}};
    auto const a = assess(r);
    EXPECT_EQ(a.primary.estimate, 0.0);
    EXPECT_EQ(a.primary.interval.low, 0u);
    EXPECT_EQ(a.primary.interval.high, 0u);
    EXPECT_TRUE(a.primary.in_interval);
    EXPECT_FALSE(a.primary.ratio);
    EXPECT_FALSE(a.primary.hirsch_a);
}

TEST(Assess, FlagsAnomalies)
{
    // n = 269, h = 5 sits below [6, 12].
    auto const low = assess({"C10", 269, 5, {}, {}, {}});
    EXPECT_EQ(low.primary.anomaly, Anomaly::below_interval);
    EXPECT_EQ(low.primary.distance, 1u);
    EXPECT_FALSE(low.primary.in_interval);
    auto const high = assess({"x", 400, 20, {}, {}, {}});
    EXPECT_EQ(high.primary.anomaly, Anomaly::above_interval);
    EXPECT_EQ(high.primary.distance, 20u - high.primary.interval.high);
}

TEST(Records, IssuesAreReported)
{
    ScholarRecord spencer{"J. Spencer", 758, 15, 1334, 18, {}};
    auto const issues = check_record(spencer);
    ASSERT_EQ(issues.size(), 1u);
    EXPECT_EQ(issues[0], RecordIssue::nonbook_exceeds_total);
    EXPECT_FALSE(nonbook_usable(spencer));
    EXPECT_FALSE(assess(spencer).nonbook);

    EXPECT_EQ(check_record({"bad", 10, 4, {}, {}, {}}), std::vector{RecordIssue::h_exceeds_sqrt});

    ScholarRecord profiled = record_from_profile("p", Partition(Parts{5, 3, 1, 0}));
    EXPECT_EQ(profiled.citations, 9u);
    EXPECT_EQ(profiled.h, 2u);
    EXPECT_TRUE(check_record(profiled).empty());
    profiled.h = 3;
    EXPECT_EQ(check_record(profiled), std::vector{RecordIssue::profile_mismatch});
}

TEST(BookAdjust, Examples)
{
    // Non-book total from the worked example: 6510 - 3237.
    ScholarRecord stanley{"R. Stanley", 6510, 35, 3273, 32, {}};
    auto const adj = book_adjust(stanley);
    EXPECT_EQ(adj.revised.citations, 3273u);
    EXPECT_EQ(adj.revised.h, 32u);
    EXPECT_EQ(adj.original.citations, 6510u);
    EXPECT_NEAR(round1(static_cast<double>(rule_of_thumb(adj.revised.citations).value)), 30.9, 1e-9);

    ScholarRecord same{"same", 100, 6, 100, 6, {}};
    auto const id = book_adjust(same);
    EXPECT_EQ(id.revised.citations, same.citations);
    EXPECT_EQ(id.revised.h, same.h);

    ScholarRecord fulton{"W. Fulton", 5890, 27, 1424, 20, {}};
    EXPECT_NEAR(round1(static_cast<double>(rule_of_thumb(book_adjust(fulton).revised.citations).value)),
                20.4, 1e-9);

    EXPECT_THROW(book_adjust({"none", 10, 2, {}, {}, {}}), std::invalid_argument);
}

TEST(Cohort, SingleRecordRecordsCorrelationError)
{
    std::vector<ScholarRecord> one{{"solo", 100, 6, {}, {}, {}}};
    auto const report = analyze_cohort(one);
    EXPECT_EQ(report.assessments.size(), 1u);
    EXPECT_FALSE(report.pearson_r);
    EXPECT_FALSE(report.correlation_error.empty());
}

TEST(Cohort, EmptyIsAnError)
{
    std::vector<ScholarRecord> none;
    EXPECT_THROW(analyze_cohort(none), std::invalid_argument);
}

TEST(Cohort, PreservesOrderAndBuildsScatter)
{
    std::vector<ScholarRecord> rs{{"a", 100, 6, 80, 5, {}},
                                  {"b", 1000, 17, {}, {}, {}},
                                  {"c", 400, 9, 300, 9, {}},
                                  {"d", 758, 15, 1334, 18, {}}};
    auto const report = analyze_cohort(rs);
    ASSERT_EQ(report.assessments.size(), 4u);
    for (std::size_t i = 0; i < rs.size(); ++i)
    {
        EXPECT_EQ(report.assessments[i].name, rs[i].name);
        EXPECT_DOUBLE_EQ(report.scatter_points[i].first, report.assessments[i].primary.estimate);
        EXPECT_DOUBLE_EQ(report.scatter_points[i].second, static_cast<double>(rs[i].h));
    }
    // "d" is inconsistent and excluded from the non-book series.
    EXPECT_EQ(report.scatter_points_nonbook.size(), 2u);
    ASSERT_TRUE(report.pearson_r);
    EXPECT_LE(std::abs(*report.pearson_r), 1.0);
    ASSERT_TRUE(report.pearson_r_nonbook);
}

}  // namespace
}  // namespace durfee
