#pragma once
//
// Distribution of the Durfee square side (the h-index) for a uniformly
// random partition of n, and the statistics derived from it.
//
// Probabilities are `long double` (64-bit mantissa on x86-64) obtained from
// exact integer ratios by scaled division, so tiny tails keep their order
// of magnitude instead of underflowing to 0.
//

#include "durfee/partition_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace durfee {

using Real = long double;

/// sqrt(6) * ln(2) / pi, the asymptotic mode of Durfee side over sqrt(n).
inline Real const rule_of_thumb_constant
    = std::sqrt(6.0L) * std::numbers::ln2_v<long double> / std::numbers::pi_v<long double>;

/// num/den to 64 significant bits. Requires den > 0, num >= 0.
inline Real exact_ratio(BigInt const& num, BigInt const& den)
{
    if (den <= 0)
        throw std::domain_error("exact_ratio: denominator must be positive");
    if (num == 0)
        return 0.0L;
    long const num_bits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    long const den_bits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // Scale so the integer quotient carries 66..67 bits.
    long const shift = 66 - (num_bits - den_bits);
    BigInt scaled = num;
    if (shift > 0)
        scaled <<= static_cast<mp_bitcnt_t>(shift);
    else if (shift < 0)
        scaled >>= static_cast<mp_bitcnt_t>(-shift);
    BigInt q = scaled / den;
    // Keep the leading 64 bits for an exact conversion.
    long const q_bits = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
    long drop = std::max(0L, q_bits - 64);
    q >>= static_cast<mp_bitcnt_t>(drop);
    Real const mantissa = static_cast<Real>(mpz_get_ui(q.get_mpz_t()));
    return std::ldexp(mantissa, static_cast<int>(drop - shift));
}

/// Leading digits of a big integer as a long double (64-bit mantissa).
inline Real to_real(BigInt const& v)
{
    if (v == 0)
        return 0.0L;
    BigInt mag = abs(v);
    long const bits = static_cast<long>(mpz_sizeinbase(mag.get_mpz_t(), 2));
    long const drop = std::max(0L, bits - 64);
    mag >>= static_cast<mp_bitcnt_t>(drop);
    Real r = std::ldexp(static_cast<Real>(mpz_get_ui(mag.get_mpz_t())), static_cast<int>(drop));
    return v < 0 ? -r : r;
}

//---------------------------------------------------------------------------//

struct DurfeeDistribution
{
    std::uint64_t n = 0;
    std::vector<Real> probabilities;
    std::shared_ptr<DurfeeCountRow const> counts;
    BigInt total;  // p(n)

    std::uint64_t max_k() const { return probabilities.size() - 1; }
};

enum class IntervalRule
{
    symmetric,  // equal tail budgets of epsilon/2 on each side
    min_width,  // narrowest interval with mass >= 1 - epsilon
};

inline std::string_view to_string(IntervalRule rule)
{
    return rule == IntervalRule::symmetric ? "symmetric" : "minwidth";
}

inline IntervalRule parse_interval_rule(std::string_view s)
{
    if (s == "symmetric")
        return IntervalRule::symmetric;
    if (s == "minwidth" || s == "min_width")
        return IntervalRule::min_width;
    throw std::invalid_argument("unknown interval rule '" + std::string(s) + "'");
}

struct ConfidenceInterval
{
    std::uint64_t n = 0;
    double epsilon = 0.02;
    IntervalRule rule = IntervalRule::symmetric;
    std::uint64_t low = 0;
    std::uint64_t high = 0;
    Real mass = 1.0L;
    BigInt covered;  // exact number of partitions with low <= h <= high

    bool contains(std::uint64_t h) const { return low <= h && h <= high; }
    /// 0 inside, otherwise the distance to the nearest endpoint.
    std::uint64_t distance(std::uint64_t h) const
    {
        if (h < low)
            return low - h;
        if (h > high)
            return h - high;
        return 0;
    }
};

struct RuleOfThumbEstimate
{
    std::uint64_t n = 0;
    Real value = 0.0L;
};

//---------------------------------------------------------------------------//

inline std::uint64_t max_h(std::uint64_t n)
{
    return isqrt(n);
}

inline DurfeeDistribution durfee_distribution(std::uint64_t n, Limits const& limits = {})
{
    DurfeeDistribution dist;
    dist.n = n;
    dist.counts = durfee_counts_shared(n, limits);
    dist.total = partition_count(n, limits);
    dist.probabilities.reserve(dist.counts->counts.size());
    for (auto const& c : dist.counts->counts)
        dist.probabilities.push_back(exact_ratio(c, dist.total));
    return dist;
}

inline RuleOfThumbEstimate rule_of_thumb(std::uint64_t n)
{
    return {n, rule_of_thumb_constant * std::sqrt(static_cast<Real>(n))};
}

/// P(h >= t), from the exact tail count.
inline Real tail_probability(std::uint64_t n, std::uint64_t t, Limits const& limits = {})
{
    if (t == 0)
        return 1.0L;
    if (t > max_h(n))
        return 0.0L;
    auto const row = durfee_counts_shared(n, limits);
    BigInt tail = 0;
    for (std::uint64_t k = t; k < row->counts.size(); ++k)
        tail += row->counts[k];
    return exact_ratio(tail, partition_count(n, limits));
}

/// argmax_k of the counts; ties go to the smaller k.
inline std::uint64_t mode_h(std::uint64_t n, Limits const& limits = {})
{
    auto const row = durfee_counts_shared(n, limits);
    std::uint64_t best = 0;
    for (std::uint64_t k = 1; k < row->counts.size(); ++k)
    {
        if (row->counts[k] > row->counts[best])
            best = k;
    }
    return best;
}

namespace detail {

inline void check_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
}

}  // namespace detail

/// Integer interval [low, high] holding at least 1 - epsilon of the mass.
///
/// symmetric: low is the largest a with P(h < a) <= epsilon/2, high the
///   smallest b with P(h > b) <= epsilon/2.
/// min_width: smallest high - low with mass >= 1 - epsilon; ties prefer the
///   larger mass, then the smaller low.
///
/// All comparisons are exact rational arithmetic against epsilon (a double
/// is a dyadic rational).
inline ConfidenceInterval confidence_interval(std::uint64_t n,
                                              double epsilon = 0.02,
                                              IntervalRule rule = IntervalRule::symmetric,
                                              Limits const& limits = {})
{
    detail::check_epsilon(epsilon);
    auto const row = durfee_counts_shared(n, limits);
    BigInt const total = partition_count(n, limits);
    auto const& c = row->counts;
    std::size_t const size = c.size();

    // prefix[i] = sum_{k < i} c[k]
    std::vector<BigInt> prefix(size + 1, BigInt(0));
    for (std::size_t k = 0; k < size; ++k)
        prefix[k + 1] = prefix[k] + c[k];

    mpq_class const eps(epsilon);
    mpq_class const half_budget = eps * total / 2;
    mpq_class const min_mass = (1 - eps) * total;

    ConfidenceInterval ci;
    ci.n = n;
    ci.epsilon = epsilon;
    ci.rule = rule;

    if (rule == IntervalRule::symmetric)
    {
        std::uint64_t low = 0;
        for (std::uint64_t a = 0; a < size; ++a)
        {
            if (mpq_class(prefix[a]) <= half_budget)
                low = a;
            else
                break;
        }
        std::uint64_t high = size - 1;
        for (std::uint64_t b = size; b-- > 0;)
        {
            if (mpq_class(total - prefix[b + 1]) <= half_budget)
                high = b;
            else
                break;
        }
        ci.low = low;
        ci.high = high;
    }
    else
    {
        bool found = false;
        for (std::uint64_t a = 0; a < size; ++a)
        {
            for (std::uint64_t b = a; b < size; ++b)
            {
                BigInt const mass = prefix[b + 1] - prefix[a];
                if (mpq_class(mass) < min_mass)
                    continue;
                std::uint64_t const width = b - a;
                std::uint64_t const best_width = ci.high - ci.low;
                bool const better = !found || width < best_width
                                    || (width == best_width && mass > ci.covered);
                if (better)
                {
                    ci.low = a;
                    ci.high = b;
                    ci.covered = mass;
                    found = true;
                }
                break;  // wider intervals starting at a only lose
            }
        }
    }

    ci.covered = prefix[ci.high + 1] - prefix[ci.low];
    ci.mass = exact_ratio(ci.covered, total);
    return ci;
}

/// Mass of the window ((1 - epsilon) mu, (1 + epsilon) mu), mu the rule of
/// thumb. A finite-n look at concentration around the mode.
inline Real concentration_mass(std::uint64_t n, double epsilon, Limits const& limits = {})
{
    if (n == 0)
        throw std::invalid_argument("concentration_mass: n must be positive");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("concentration_mass: epsilon must be positive");
    auto const row = durfee_counts_shared(n, limits);
    Real const mu = rule_of_thumb(n).value;
    Real const lo = (1.0L - epsilon) * mu;
    Real const hi = (1.0L + epsilon) * mu;
    BigInt inside = 0;
    for (std::uint64_t k = 0; k < row->counts.size(); ++k)
    {
        Real const kk = static_cast<Real>(k);
        if (lo < kk && kk < hi)
            inside += row->counts[k];
    }
    return exact_ratio(inside, partition_count(n, limits));
}

}  // namespace durfee
