#pragma once
//
// Exact partition counting: p(n), partitions into bounded parts, and the
// number of partitions of n whose Durfee square has side k.
//
// Everything here is arbitrary-precision integer arithmetic (GMP). Floating
// point appears only in hardy_ramanujan_estimate().
//

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace durfee {

using BigInt = mpz_class;

/// Thrown when a request exceeds the configured size cap.
class ResourceLimitError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Upper bound on the partition size any table may be built for.
struct Limits
{
    std::uint64_t max_n = 100000;
};

inline void check_limit(std::uint64_t n, Limits const& limits, char const* what)
{
    if (n > limits.max_n)
    {
        throw ResourceLimitError(std::string(what) + ": n = " + std::to_string(n)
                                 + " exceeds the resource cap of "
                                 + std::to_string(limits.max_n));
    }
}

/// Integer square root, exact for all 64-bit inputs.
constexpr std::uint64_t isqrt(std::uint64_t n) noexcept
{
    if (n < 2)
        return n;
    // x <= 2^32 - 1 keeps x * x and the division below free of overflow.
    std::uint64_t x = std::min<std::uint64_t>(
        static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))), 0xFFFFFFFFull);
    while (x * x > n)
        --x;
    while (x < 0xFFFFFFFFull && x + 1 <= n / (x + 1))
        ++x;
    return x;
}

//---------------------------------------------------------------------------//
// Tables
//---------------------------------------------------------------------------//

/// values[m] = p(m) for 0 <= m <= max_n.
struct PartitionCountTable
{
    std::uint64_t max_n = 0;
    std::vector<BigInt> values;

    BigInt const& operator[](std::uint64_t m) const { return values.at(m); }
};

/// values[m] = number of partitions of m into parts of size <= k.
/// By conjugation this is also the number with at most k parts.
struct BoundedPartTable
{
    std::uint64_t k = 1;
    std::uint64_t max_m = 0;
    std::vector<BigInt> values;

    BigInt const& operator[](std::uint64_t m) const { return values.at(m); }
};

/// counts[k] = number of partitions of n with Durfee square of side exactly k,
/// for 0 <= k <= floor(sqrt(n)).
struct DurfeeCountRow
{
    std::uint64_t n = 0;
    std::vector<BigInt> counts;

    std::uint64_t max_k() const { return counts.size() - 1; }
    BigInt total() const
    {
        BigInt sum = 0;
        for (auto const& c : counts)
            sum += c;
        return sum;
    }
};

namespace detail {

// Euler's pentagonal number recurrence:
//   p(m) = sum_{j>=1} (-1)^{j+1} [p(m - j(3j-1)/2) + p(m - j(3j+1)/2)]
inline void extend_partition_counts(std::vector<BigInt>& p, std::uint64_t max_n)
{
    if (p.empty())
        p.emplace_back(1);
    p.reserve(max_n + 1);
    for (std::uint64_t m = p.size(); m <= max_n; ++m)
    {
        BigInt acc = 0;
        for (std::uint64_t j = 1;; ++j)
        {
            std::uint64_t const g1 = j * (3 * j - 1) / 2;
            if (g1 > m)
                break;
            std::uint64_t const g2 = g1 + j;
            if (j % 2 == 1)
            {
                acc += p[m - g1];
                if (g2 <= m)
                    acc += p[m - g2];
            }
            else
            {
                acc -= p[m - g1];
                if (g2 <= m)
                    acc -= p[m - g2];
            }
        }
        p.push_back(std::move(acc));
    }
}

// Extends `table` (parts <= k-1) in place to parts <= k.
inline void add_part_size(std::vector<BigInt>& table, std::uint64_t k)
{
    for (std::uint64_t m = k; m < table.size(); ++m)
        table[m] += table[m - k];
}

// sum_{m=0}^{total} b[m] * b[total - m], using the symmetry of the sum.
inline BigInt self_convolution(std::vector<BigInt> const& b, std::uint64_t total)
{
    BigInt acc = 0;
    BigInt tmp;
    for (std::uint64_t m = 0; 2 * m < total; ++m)
    {
        mpz_mul(tmp.get_mpz_t(), b[m].get_mpz_t(), b[total - m].get_mpz_t());
        acc += tmp;
    }
    acc *= 2;
    if (total % 2 == 0)
    {
        mpz_mul(tmp.get_mpz_t(), b[total / 2].get_mpz_t(), b[total / 2].get_mpz_t());
        acc += tmp;
    }
    return acc;
}

class CountCache
{
  public:
    static CountCache& instance()
    {
        static CountCache cache;
        return cache;
    }

    std::shared_ptr<PartitionCountTable const> partition_table(std::uint64_t max_n)
    {
        std::lock_guard lock(mutex_);
        if (!pn_ || pn_->max_n < max_n)
        {
            auto next = std::make_shared<PartitionCountTable>();
            if (pn_)
                next->values = pn_->values;
            extend_partition_counts(next->values, max_n);
            next->max_n = next->values.size() - 1;
            pn_ = std::move(next);
        }
        return pn_;
    }

    /// Seeds the p(n) table, e.g. from a persisted cache file. Values are
    /// trusted only if they agree with the recurrence on a prefix.
    void adopt(PartitionCountTable table)
    {
        std::lock_guard lock(mutex_);
        if (!pn_ || pn_->max_n < table.max_n)
            pn_ = std::make_shared<PartitionCountTable const>(std::move(table));
    }

    std::shared_ptr<DurfeeCountRow const> find_row(std::uint64_t n)
    {
        std::lock_guard lock(mutex_);
        auto it = rows_.find(n);
        return it == rows_.end() ? nullptr : it->second;
    }

    void store_row(std::shared_ptr<DurfeeCountRow const> row)
    {
        std::lock_guard lock(mutex_);
        rows_.emplace(row->n, std::move(row));
    }

  private:
    std::mutex mutex_;
    std::shared_ptr<PartitionCountTable const> pn_;
    std::map<std::uint64_t, std::shared_ptr<DurfeeCountRow const>> rows_;
};

}  // namespace detail

//---------------------------------------------------------------------------//
// Operations
//---------------------------------------------------------------------------//

/// Shared, immutable table of p(0..max_n).
inline std::shared_ptr<PartitionCountTable const>
partition_count_table(std::uint64_t max_n, Limits const& limits = {})
{
    check_limit(max_n, limits, "partition_count");
    return detail::CountCache::instance().partition_table(max_n);
}

/// Number of partitions of n, exactly.
inline BigInt partition_count(std::uint64_t n, Limits const& limits = {})
{
    return (*partition_count_table(n, limits))[n];
}

/// Partitions of m into parts of size <= k, for all m <= max_m.
inline BoundedPartTable
bounded_part_counts(std::uint64_t k, std::uint64_t max_m, Limits const& limits = {})
{
    if (k == 0)
        throw std::invalid_argument("bounded_part_counts: k must be positive");
    check_limit(max_m, limits, "bounded_part_counts");

    BoundedPartTable table;
    table.k = k;
    table.max_m = max_m;
    table.values.assign(max_m + 1, BigInt(0));
    table.values[0] = 1;
    // Parts larger than max_m cannot occur.
    std::uint64_t const effective_k = std::min(k, std::max<std::uint64_t>(max_m, 1));
    for (std::uint64_t j = 1; j <= effective_k; ++j)
        detail::add_part_size(table.values, j);
    return table;
}

/// Durfee-size counts for several sizes at once. One bounded-part table is
/// grown to max(ns) and each row is filled by one convolution per k:
///   counts[k] = [x^(n-k^2)] (prod_{j<=k} 1/(1-x^j))^2
inline std::vector<DurfeeCountRow>
durfee_count_rows(std::span<std::uint64_t const> ns, Limits const& limits = {})
{
    std::uint64_t max_n = 0;
    for (auto n : ns)
    {
        check_limit(n, limits, "durfee_counts");
        max_n = std::max(max_n, n);
    }

    std::vector<DurfeeCountRow> rows(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        rows[i].n = ns[i];
        rows[i].counts.assign(isqrt(ns[i]) + 1, BigInt(0));
        if (ns[i] == 0)
            rows[i].counts[0] = 1;
    }

    std::uint64_t const max_k = isqrt(max_n);
    std::vector<BigInt> bounded(max_n + 1, BigInt(0));
    bounded[0] = 1;
    for (std::uint64_t k = 1; k <= max_k; ++k)
    {
        detail::add_part_size(bounded, k);
        for (auto& row : rows)
        {
            if (k * k <= row.n)
                row.counts[k] = detail::self_convolution(bounded, row.n - k * k);
        }
    }
    return rows;
}

/// Durfee-size counts for a single n; rows are memoized.
inline std::shared_ptr<DurfeeCountRow const>
durfee_counts_shared(std::uint64_t n, Limits const& limits = {})
{
    check_limit(n, limits, "durfee_counts");
    auto& cache = detail::CountCache::instance();
    if (auto row = cache.find_row(n))
        return row;
    std::uint64_t const ns[] = {n};
    auto row = std::make_shared<DurfeeCountRow const>(std::move(durfee_count_rows(ns, limits)[0]));
    cache.store_row(row);
    return row;
}

inline DurfeeCountRow durfee_counts(std::uint64_t n, Limits const& limits = {})
{
    return *durfee_counts_shared(n, limits);
}

/// p(n) ~ exp(pi sqrt(2n/3)) / (4 n sqrt 3). Extended precision; finite for
/// every n under the default cap.
inline long double hardy_ramanujan_estimate(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("hardy_ramanujan_estimate: n must be positive");
    long double const x = static_cast<long double>(n);
    long double const sqrt3 = std::sqrt(3.0L);
    return std::exp(std::numbers::pi_v<long double> * std::sqrt(2.0L * x / 3.0L))
           / (4.0L * x * sqrt3);
}

//---------------------------------------------------------------------------//
// Persistence: "n=<max>" header line, then p(0), ..., p(max) in decimal.
//---------------------------------------------------------------------------//

inline void write_partition_table(std::ostream& os, PartitionCountTable const& table)
{
    os << "n=" << table.max_n << '\n';
    for (auto const& v : table.values)
        os << v.get_str() << '\n';
}

inline PartitionCountTable read_partition_table(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line.rfind("n=", 0) != 0)
        throw std::runtime_error("partition table: missing 'n=<max>' header");
    PartitionCountTable table;
    table.max_n = std::stoull(line.substr(2));
    table.values.reserve(table.max_n + 1);
    while (table.values.size() <= table.max_n && std::getline(is, line))
    {
        BigInt v;
        if (line.empty() || v.set_str(line, 10) != 0)
            throw std::runtime_error("partition table: bad value on line "
                                     + std::to_string(table.values.size() + 2));
        table.values.push_back(std::move(v));
    }
    if (table.values.size() != table.max_n + 1)
        throw std::runtime_error("partition table: truncated");

    // Cheap integrity check against the recurrence.
    std::vector<BigInt> check;
    detail::extend_partition_counts(check, std::min<std::uint64_t>(table.max_n, 64));
    for (std::size_t m = 0; m < check.size(); ++m)
    {
        if (check[m] != table.values[m])
            throw std::runtime_error("partition table: value mismatch at m = "
                                     + std::to_string(m));
    }
    return table;
}

/// Makes a previously persisted table available to partition_count().
inline void adopt_partition_table(PartitionCountTable table)
{
    detail::CountCache::instance().adopt(std::move(table));
}

}  // namespace durfee
