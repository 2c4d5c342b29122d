#include "durfee/partition_core.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace durfee {
namespace {

BigInt big(char const* s)
{
    return BigInt(s, 10);
}

TEST(PartitionCount, SmallValues)
{
    EXPECT_EQ(partition_count(0), 1);
    EXPECT_EQ(partition_count(5), 7);
    EXPECT_EQ(partition_count(50), 204226);
    EXPECT_EQ(partition_count(100), 190569292);
}

TEST(PartitionCount, LargeValuesMatchIndependentReference)
{
    // Frozen from an independent implementation (sympy.npartitions).
    EXPECT_EQ(partition_count(1000), big("24061467864032622473692149727991"));
    EXPECT_EQ(partition_count(5000),
              big("1698201688254421218519751016893064313617576830498292333222038246"
                  "52329144349"));
    EXPECT_EQ(partition_count(10000),
              big("3616725132563629398882047189095369549501603033931565042208186860"
                  "5887952568754066420592310556052906916435144"));
}

TEST(PartitionCount, MatchesEnumerationUpTo30)
{
    for (std::uint64_t n = 0; n <= 30; ++n)
        EXPECT_EQ(partition_count(n), oracle::enumerate_partitions(n).size()) << "n = " << n;
}

TEST(PartitionCount, OracleViaBoundedParts)
{
    auto const table = bounded_part_counts(50, 50);
    EXPECT_EQ(table[50], 204226);
}

TEST(PartitionCount, StrictlyIncreasing)
{
    auto const table = partition_count_table(3000);
    for (std::uint64_t n = 2; n <= 3000; ++n)
        ASSERT_GT((*table)[n], (*table)[n - 1]) << n;
    EXPECT_EQ((*table)[0], 1);
    EXPECT_EQ((*table)[1], 1);
}

TEST(PartitionCount, ResourceCap)
{
    EXPECT_THROW(partition_count(100001), ResourceLimitError);
    EXPECT_THROW(partition_count(501, Limits{500}), ResourceLimitError);
    EXPECT_NO_THROW(partition_count(500, Limits{500}));
}

TEST(BoundedParts, Examples)
{
    auto const ones = bounded_part_counts(1, 4);
    EXPECT_EQ(ones.values, (std::vector<BigInt>{1, 1, 1, 1, 1}));
    auto const twos = bounded_part_counts(2, 4);
    EXPECT_EQ(twos.values, (std::vector<BigInt>{1, 1, 2, 2, 3}));
    EXPECT_EQ(bounded_part_counts(5, 5)[5], 7);
    EXPECT_EQ(bounded_part_counts(3, 0).values, (std::vector<BigInt>{1}));
}

TEST(BoundedParts, RejectsBadInput)
{
    EXPECT_THROW(bounded_part_counts(0, 5), std::invalid_argument);
    EXPECT_THROW(bounded_part_counts(3, 200000), ResourceLimitError);
}

TEST(BoundedParts, EqualsPartitionCountWhenKCoversM)
{
    auto const t = bounded_part_counts(60, 60);
    for (std::uint64_t m = 0; m <= 60; ++m)
        EXPECT_EQ(t[m], partition_count(m));
}

TEST(BoundedParts, RecurrenceConsistency)
{
    for (std::uint64_t k = 2; k <= 12; ++k)
    {
        auto const cur = bounded_part_counts(k, 120);
        auto const prev = bounded_part_counts(k - 1, 120);
        for (std::uint64_t m = k; m <= 120; ++m)
            ASSERT_EQ(cur[m], prev[m] + cur[m - k]) << "k=" << k << " m=" << m;
    }
}

TEST(BoundedParts, ConjugationSymmetry)
{
    // Parts <= k versus at most k parts, counted by an unrelated recurrence.
    oracle::ExactPartsCounter at_most(200);
    for (std::uint64_t k = 1; k <= 20; ++k)
    {
        auto const t = bounded_part_counts(k, 200);
        for (std::uint64_t m = 0; m <= 200; ++m)
        {
            auto const expect = at_most.at_most(m, k);
            ASSERT_EQ(t[m], BigInt(static_cast<unsigned long>(expect))) << "k=" << k << " m=" << m;
        }
    }
    // And by direct enumeration for small m.
    for (std::uint64_t m = 0; m <= 20; ++m)
    {
        auto const all = oracle::enumerate_partitions(m);
        for (std::uint64_t k = 1; k <= 8; ++k)
        {
            std::uint64_t parts_le_k = 0, at_most_k = 0;
            for (auto const& p : all)
            {
                parts_le_k += p.empty() || p.front() <= k;
                at_most_k += p.size() <= k;
            }
            EXPECT_EQ(parts_le_k, at_most_k);
            EXPECT_EQ(bounded_part_counts(k, m)[m], parts_le_k);
        }
    }
}

TEST(DurfeeCounts, Examples)
{
    EXPECT_EQ(durfee_counts(4).counts, (std::vector<BigInt>{0, 4, 1}));
    EXPECT_EQ(durfee_counts(0).counts, (std::vector<BigInt>{1}));
    EXPECT_EQ(durfee_counts(50).total(), 204226);
    // Exact row for n = 50, from exhaustive enumeration.
    EXPECT_EQ(durfee_counts(50).counts,
              (std::vector<BigInt>{0, 50, 4900, 52528, 104112, 40466, 2168, 2}));
}

TEST(DurfeeCounts, MatchesBruteForceUpTo30)
{
    for (std::uint64_t n = 0; n <= 30; ++n)
    {
        auto const row = durfee_counts(n);
        auto const brute = oracle::brute_durfee_counts(n);
        ASSERT_EQ(row.counts.size(), isqrt(n) + 1);
        for (std::uint64_t k = 0; k < row.counts.size(); ++k)
        {
            auto it = brute.find(k);
            std::uint64_t const expect = it == brute.end() ? 0 : it->second;
            EXPECT_EQ(row.counts[k], expect) << "n=" << n << " k=" << k;
        }
    }
}

TEST(DurfeeCounts, ShapeInvariants)
{
    for (std::uint64_t n : {1u, 2u, 17u, 99u, 100u, 101u})
    {
        auto const row = durfee_counts(n);
        EXPECT_EQ(row.max_k(), isqrt(n));
        EXPECT_EQ(row.counts[0], 0);
        for (std::uint64_t k = 1; k <= row.max_k(); ++k)
            EXPECT_GT(row.counts[k], 0);
    }
}

TEST(DurfeeCounts, EulerGaussIdentityUpTo2000)
{
    std::vector<std::uint64_t> ns(2001);
    for (std::uint64_t n = 0; n <= 2000; ++n)
        ns[n] = n;
    auto const rows = durfee_count_rows(ns);
    auto const p = partition_count_table(2000);
    for (std::uint64_t n = 0; n <= 2000; ++n)
        ASSERT_EQ(rows[n].total(), (*p)[n]) << "n = " << n;
}

TEST(DurfeeCounts, BatchAgreesWithSingle)
{
    std::uint64_t const ns[] = {300, 7, 1000, 0};
    auto const rows = durfee_count_rows(ns);
    for (std::size_t i = 0; i < std::size(ns); ++i)
        EXPECT_EQ(rows[i].counts, durfee_counts(ns[i]).counts);
}

TEST(DurfeeCounts, ResourceCap)
{
    EXPECT_THROW(durfee_counts(101, Limits{100}), ResourceLimitError);
}

TEST(HardyRamanujan, ClosedFormAtOne)
{
    // exp(pi sqrt(2/3)) / (4 sqrt 3), evaluated independently in Python.
    EXPECT_NEAR(static_cast<double>(hardy_ramanujan_estimate(1)), 1.8766704226053694, 1e-14);
}

TEST(HardyRamanujan, RatioToExact)
{
    auto ratio = [](std::uint64_t n) {
        auto const p = partition_count(n);
        // p(n) < 2^1100 here, so double conversion via mpf is exact enough.
        mpf_class exact(p, 256);
        return static_cast<double>(hardy_ramanujan_estimate(n)) / exact.get_d();
    };
    double const r100 = ratio(100);
    EXPECT_GT(r100, 1.0);
    EXPECT_LT(r100, 1.10);
    double const r5000 = ratio(5000);
    EXPECT_GT(r5000, 1.0);
    EXPECT_LT(r5000, 1.02);
    for (std::uint64_t n : {1u, 2u, 3u, 10u, 50u, 200u, 500u, 1000u, 2000u})
    {
        EXPECT_GT(ratio(n), 1.0) << n;
        if (n >= 500)
        {
            EXPECT_LT(ratio(n), 1.05) << n;
        }
    }
}

TEST(HardyRamanujan, RejectsZero)
{
    EXPECT_THROW(hardy_ramanujan_estimate(0), std::invalid_argument);
}

TEST(PartitionTable, PersistRoundTrip)
{
    auto const table = partition_count_table(300);
    std::stringstream ss;
    PartitionCountTable small;
    small.max_n = 300;
    small.values.assign(table->values.begin(), table->values.begin() + 301);
    write_partition_table(ss, small);
    EXPECT_EQ(ss.str().substr(0, 6), "n=300\n");
    auto const back = read_partition_table(ss);
    EXPECT_EQ(back.max_n, 300u);
    EXPECT_EQ(back.values, small.values);
}

TEST(PartitionTable, RejectsCorruptInput)
{
    std::stringstream missing_header("1\n1\n2\n");
    EXPECT_THROW(read_partition_table(missing_header), std::runtime_error);
    std::stringstream truncated("n=5\n1\n1\n2\n");
    EXPECT_THROW(read_partition_table(truncated), std::runtime_error);
    std::stringstream wrong("n=3\n1\n1\n2\n4\n");
    EXPECT_THROW(read_partition_table(wrong), std::runtime_error);
}

}  // namespace
}  // namespace durfee
