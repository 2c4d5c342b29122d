#pragma once
//
// Uniform random partitions of n, used as a Monte Carlo check on the exact
// Durfee distribution. Neither method looks at Durfee squares.
//
//  recursive_unranking   exact; walks count(m, parts <= k) tables built
//                        from count(m,k) = count(m,k-1) + count(m-k,k).
//                        Memory is O(n^2) big integers.
//  boltzmann_rejection   independent geometric multiplicities m_j with
//                        P(m_j >= t) = x^(j t), x = exp(-pi / sqrt(6 n)),
//                        rejected unless sum j m_j == n. Uniform given
//                        acceptance.
//
// Random source: std::mt19937_64 (algorithm fixed by the standard), with
// our own conversions to reals and big integers so results do not depend
// on the standard library's distribution implementations.
//

#include "durfee/interval_engine.hpp"
#include "durfee/profile_analyzer.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace durfee {

inline constexpr std::string_view rng_algorithm = "mt19937_64";

enum class SamplerMethod
{
    boltzmann_rejection,
    recursive_unranking,
};

inline std::string_view to_string(SamplerMethod m)
{
    return m == SamplerMethod::boltzmann_rejection ? "boltzmann_rejection"
                                                   : "recursive_unranking";
}

inline SamplerMethod parse_sampler_method(std::string_view s)
{
    if (s == "boltzmann_rejection" || s == "boltzmann")
        return SamplerMethod::boltzmann_rejection;
    if (s == "recursive_unranking" || s == "unranking")
        return SamplerMethod::recursive_unranking;
    throw std::invalid_argument("unknown sampler method '" + std::string(s) + "'");
}

struct SamplerConfig
{
    std::uint64_t n = 1;
    std::uint64_t seed = 0;
    SamplerMethod method = SamplerMethod::recursive_unranking;
};

struct EmpiricalDistribution
{
    std::uint64_t n = 0;
    std::uint64_t samples = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;

    /// Associative and commutative.
    EmpiricalDistribution& merge(EmpiricalDistribution const& other)
    {
        if (samples != 0 && other.samples != 0 && other.n != n)
            throw std::invalid_argument("merge: histograms for different n");
        if (samples == 0)
            n = other.n;
        samples += other.samples;
        for (auto const& [k, c] : other.histogram)
            histogram[k] += c;
        return *this;
    }

    double frequency(std::uint64_t k) const
    {
        auto it = histogram.find(k);
        return it == histogram.end() || samples == 0
                   ? 0.0
                   : static_cast<double>(it->second) / static_cast<double>(samples);
    }
};

/// Largest n the unranking tables are built for; above it use Boltzmann.
inline constexpr std::uint64_t max_unranking_n = 2000;

//---------------------------------------------------------------------------//

class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on (0, 1], 53-bit resolution.
    double uniform_open0()
    {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on [0, bound), bound > 0. Rejection on the bit length.
    BigInt uniform_below(BigInt const& bound)
    {
        std::size_t const bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        std::size_t const words = (bits + 63) / 64;
        BigInt r;
        do
        {
            r = 0;
            for (std::size_t w = 0; w < words; ++w)
            {
                std::uint64_t word = next();
                // The first word ends up most significant.
                if (w == 0 && bits % 64 != 0)
                    word &= (std::uint64_t{1} << (bits % 64)) - 1;
                r <<= 64;
                // mpz from 64-bit without relying on sizeof(unsigned long).
                BigInt hi = static_cast<unsigned long>(word >> 32);
                hi <<= 32;
                hi += static_cast<unsigned long>(word & 0xffffffffu);
                r += hi;
            }
        } while (r >= bound);
        return r;
    }

  private:
    std::mt19937_64 engine_;
};

/// count(m, parts <= k) for 0 <= k <= m <= n, stored row-wise.
class UnrankingTable
{
  public:
    explicit UnrankingTable(std::uint64_t n) : n_(n), offsets_(n + 2, 0)
    {
        for (std::uint64_t m = 0; m <= n; ++m)
            offsets_[m + 1] = offsets_[m] + m + 1;
        values_.resize(offsets_[n + 1]);
        at(0, 0) = 1;
        for (std::uint64_t m = 1; m <= n; ++m)
        {
            at(m, 0) = 0;
            for (std::uint64_t k = 1; k <= m; ++k)
                at(m, k) = at(m, k - 1) + get(m - k, k);
        }
    }

    std::uint64_t n() const { return n_; }

    /// Partitions of m with parts <= k (k may exceed m).
    BigInt const& get(std::uint64_t m, std::uint64_t k) const
    {
        return values_[offsets_[m] + std::min(k, m)];
    }

  private:
    BigInt& at(std::uint64_t m, std::uint64_t k) { return values_[offsets_[m] + k]; }

    std::uint64_t n_;
    std::vector<std::size_t> offsets_;
    std::vector<BigInt> values_;
};

namespace detail {

inline std::shared_ptr<UnrankingTable const> unranking_table(std::uint64_t n)
{
    static std::mutex mutex;
    static std::shared_ptr<UnrankingTable const> cached;
    std::lock_guard lock(mutex);
    if (!cached || cached->n() < n)
        cached = std::make_shared<UnrankingTable const>(n);
    return cached;
}

inline void check_sampler_config(SamplerConfig const& config, Limits const& limits)
{
    if (config.n == 0)
        throw std::invalid_argument("sampler: n must be positive");
    check_limit(config.n, limits, "sample_partition");
    if (config.method == SamplerMethod::recursive_unranking && config.n > max_unranking_n)
        throw std::invalid_argument("sampler: recursive_unranking supports n <= "
                                    + std::to_string(max_unranking_n)
                                    + "; use boltzmann_rejection for larger n");
}

}  // namespace detail

/// Maps rank in [0, count(n, parts <= n)) to a partition of n, ordering
/// partitions by whether they use the current largest allowed part.
inline Partition unrank_partition(UnrankingTable const& table, std::uint64_t n, BigInt rank)
{
    std::vector<std::uint64_t> parts;
    std::uint64_t m = n;
    std::uint64_t k = n;
    while (m > 0)
    {
        k = std::min(k, m);
        BigInt const& without_k = table.get(m, k - 1);
        if (rank < without_k)
        {
            --k;
        }
        else
        {
            rank -= without_k;
            parts.push_back(k);
            m -= k;
        }
    }
    return Partition(std::move(parts));
}

namespace detail {

inline Partition sample_boltzmann(std::uint64_t n, Rng& rng)
{
    long double const log_x = -std::numbers::pi_v<long double>
                              / std::sqrt(6.0L * static_cast<long double>(n));
    std::vector<std::uint64_t> multiplicity(n + 1);
    while (true)
    {
        std::uint64_t total = 0;
        bool overflow = false;
        for (std::uint64_t j = 1; j <= n; ++j)
        {
            // Inversion: P(m >= t) = x^(j t).
            long double const u = rng.uniform_open0();
            auto const m = static_cast<std::uint64_t>(
                std::floor(std::log(u) / (static_cast<long double>(j) * log_x)));
            multiplicity[j] = m;
            if (m > 0 && (m > n / j || total + m * j > n))
            {
                overflow = true;
                break;
            }
            total += m * j;
        }
        if (overflow || total != n)
            continue;
        std::vector<std::uint64_t> parts;
        for (std::uint64_t j = n; j >= 1; --j)
            parts.insert(parts.end(), multiplicity[j], j);
        return Partition(std::move(parts));
    }
}

}  // namespace detail

/// Draws `count` partitions from one seeded stream.
template<class Visitor>
void for_each_sample(SamplerConfig const& config,
                     std::uint64_t count,
                     Visitor&& visit,
                     Limits const& limits = {})
{
    detail::check_sampler_config(config, limits);
    Rng rng(config.seed);
    if (config.method == SamplerMethod::recursive_unranking)
    {
        auto const table = detail::unranking_table(config.n);
        BigInt const total = table->get(config.n, config.n);
        for (std::uint64_t i = 0; i < count; ++i)
            visit(unrank_partition(*table, config.n, rng.uniform_below(total)));
    }
    else
    {
        for (std::uint64_t i = 0; i < count; ++i)
            visit(detail::sample_boltzmann(config.n, rng));
    }
}

/// One draw from a fresh stream seeded with config.seed.
inline Partition sample_partition(SamplerConfig const& config, Limits const& limits = {})
{
    Partition out;
    for_each_sample(config, 1, [&](Partition p) { out = std::move(p); }, limits);
    return out;
}

inline EmpiricalDistribution empirical_durfee_distribution(SamplerConfig const& config,
                                                           std::uint64_t samples,
                                                           Limits const& limits = {})
{
    if (samples == 0)
        throw std::invalid_argument("empirical_durfee_distribution: samples must be positive");
    EmpiricalDistribution dist;
    dist.n = config.n;
    dist.samples = samples;
    for_each_sample(
        config, samples, [&](Partition const& p) { ++dist.histogram[h_index(p)]; }, limits);
    return dist;
}

/// Half the L1 distance between an exact and an empirical distribution.
inline double total_variation(DurfeeDistribution const& exact, EmpiricalDistribution const& emp)
{
    double tv = 0.0;
    for (std::uint64_t k = 0; k < exact.probabilities.size(); ++k)
        tv += std::abs(static_cast<double>(exact.probabilities[k]) - emp.frequency(k));
    for (auto const& [k, c] : emp.histogram)
    {
        if (k >= exact.probabilities.size())
            tv += emp.frequency(k);
    }
    return tv / 2.0;
}

}  // namespace durfee
