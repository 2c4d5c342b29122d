#pragma once
//
// Citation profiles as partitions: h-index via the Durfee square, the
// square/right/below decomposition, per-scholar assessment against the
// uniform model, and cohort correlation.
//

#include "durfee/interval_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace durfee {

/// Weakly decreasing list of citations per paper. Trailing zeros allowed.
class Partition
{
  public:
    Partition() = default;

    explicit Partition(std::vector<std::uint64_t> parts) : parts_(std::move(parts))
    {
        if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>{}))
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }

    static Partition from_unsorted(std::vector<std::uint64_t> parts)
    {
        std::sort(parts.begin(), parts.end(), std::greater<>{});
        return Partition(std::move(parts));
    }

    std::vector<std::uint64_t> const& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    std::uint64_t operator[](std::size_t i) const { return parts_[i]; }

    /// N_citations.
    std::uint64_t size() const
    {
        return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
    }

    friend bool operator==(Partition const&, Partition const&) = default;

  private:
    std::vector<std::uint64_t> parts_;
};

/// Largest k with at least k parts of size >= k.
inline std::uint64_t h_index(Partition const& lambda)
{
    std::uint64_t k = 0;
    while (k < lambda.length() && lambda[k] >= k + 1)
        ++k;
    return k;
}

/// lambda = k x k square + `right` (rows beside the square, at most k of
/// them) + `below` (rows under the square, every part <= k).
struct DurfeeDecomposition
{
    std::uint64_t k = 0;
    Partition right;
    Partition below;
};

inline DurfeeDecomposition durfee_decompose(Partition const& lambda)
{
    std::uint64_t const k = h_index(lambda);
    std::vector<std::uint64_t> right;
    for (std::uint64_t i = 0; i < k && lambda[i] > k; ++i)
        right.push_back(lambda[i] - k);
    std::vector<std::uint64_t> below(lambda.parts().begin() + static_cast<std::ptrdiff_t>(k),
                                     lambda.parts().end());
    return {k, Partition(std::move(right)), Partition(std::move(below))};
}

inline Partition recompose(DurfeeDecomposition const& d)
{
    if (d.right.length() > d.k)
        throw std::invalid_argument("recompose: right part has more than k rows");
    if (!d.below.empty() && d.below[0] > d.k)
        throw std::invalid_argument("recompose: below part has a part larger than k");
    std::vector<std::uint64_t> parts;
    parts.reserve(d.k + d.below.length());
    for (std::uint64_t i = 0; i < d.k; ++i)
        parts.push_back(d.k + (i < d.right.length() ? d.right[i] : 0));
    parts.insert(parts.end(), d.below.parts().begin(), d.below.parts().end());
    return Partition(std::move(parts));
}

//---------------------------------------------------------------------------//
// Scholars
//---------------------------------------------------------------------------//

struct ScholarRecord
{
    std::string name;
    std::uint64_t citations = 0;
    std::uint64_t h = 0;
    std::optional<std::uint64_t> citations_nonbook;
    std::optional<std::uint64_t> h_nonbook;
    std::optional<Partition> full_profile;

    bool has_nonbook() const { return citations_nonbook && h_nonbook; }
};

/// Builds a record whose totals and h are derived from the profile.
inline ScholarRecord record_from_profile(std::string name, Partition profile)
{
    ScholarRecord r;
    r.name = std::move(name);
    r.citations = profile.size();
    r.h = h_index(profile);
    r.full_profile = std::move(profile);
    return r;
}

enum class RecordIssue
{
    h_exceeds_sqrt,          // h > floor(sqrt(citations))
    nonbook_exceeds_total,   // citations_nonbook > citations
    nonbook_h_exceeds_sqrt,  // h_nonbook > floor(sqrt(citations_nonbook))
    profile_mismatch,        // full profile disagrees with citations or h
};

inline std::string_view to_string(RecordIssue issue)
{
    switch (issue)
    {
        case RecordIssue::h_exceeds_sqrt: return "h exceeds floor(sqrt(citations))";
        case RecordIssue::nonbook_exceeds_total: return "non-book citations exceed total citations";
        case RecordIssue::nonbook_h_exceeds_sqrt:
            return "non-book h exceeds floor(sqrt(non-book citations))";
        case RecordIssue::profile_mismatch: return "full profile disagrees with citations or h";
    }
    return "unknown";
}

/// Violations of the record invariants. Records are kept even when
/// inconsistent; callers decide what to exclude.
inline std::vector<RecordIssue> check_record(ScholarRecord const& r)
{
    std::vector<RecordIssue> issues;
    if (r.h > isqrt(r.citations))
        issues.push_back(RecordIssue::h_exceeds_sqrt);
    if (r.citations_nonbook && *r.citations_nonbook > r.citations)
        issues.push_back(RecordIssue::nonbook_exceeds_total);
    if (r.citations_nonbook && r.h_nonbook && *r.h_nonbook > isqrt(*r.citations_nonbook))
        issues.push_back(RecordIssue::nonbook_h_exceeds_sqrt);
    if (r.full_profile
        && (r.full_profile->size() != r.citations || h_index(*r.full_profile) != r.h))
        issues.push_back(RecordIssue::profile_mismatch);
    return issues;
}

/// True when the non-book figures can be used for a revised assessment.
inline bool nonbook_usable(ScholarRecord const& r)
{
    if (!r.has_nonbook())
        return false;
    for (auto issue : check_record(r))
    {
        if (issue == RecordIssue::nonbook_exceeds_total
            || issue == RecordIssue::nonbook_h_exceeds_sqrt)
            return false;
    }
    return true;
}

/// N = a h^2.
inline double hirsch_a(std::uint64_t citations, std::uint64_t h)
{
    if (h == 0)
        throw std::invalid_argument("hirsch_a: h must be positive");
    return static_cast<double>(citations) / (static_cast<double>(h) * static_cast<double>(h));
}

enum class Anomaly
{
    none,
    below_interval,
    above_interval,
};

inline std::string_view to_string(Anomaly a)
{
    switch (a)
    {
        case Anomaly::none: return "none";
        case Anomaly::below_interval: return "below_interval";
        case Anomaly::above_interval: return "above_interval";
    }
    return "unknown";
}

/// Model comparison for one (citations, h) pair.
struct Evaluation
{
    std::uint64_t citations = 0;
    std::uint64_t h = 0;
    double estimate = 0.0;
    ConfidenceInterval interval;
    bool in_interval = true;
    std::optional<double> ratio;     // h / estimate, when estimate > 0
    std::optional<double> hirsch_a;  // citations / h^2, when h > 0
    Anomaly anomaly = Anomaly::none;
    std::uint64_t distance = 0;      // to the nearest endpoint, 0 if inside
};

struct Assessment
{
    std::string name;
    Evaluation primary;
    std::optional<Evaluation> nonbook;  // revised figures, when usable
    std::vector<RecordIssue> issues;
};

inline Evaluation evaluate(std::uint64_t citations,
                           std::uint64_t h,
                           double epsilon,
                           IntervalRule rule = IntervalRule::symmetric,
                           Limits const& limits = {})
{
    Evaluation e;
    e.citations = citations;
    e.h = h;
    e.estimate = static_cast<double>(rule_of_thumb(citations).value);
    e.interval = confidence_interval(citations, epsilon, rule, limits);
    e.in_interval = e.interval.contains(h);
    e.distance = e.interval.distance(h);
    if (e.estimate > 0.0)
        e.ratio = static_cast<double>(h) / e.estimate;
    if (h > 0)
        e.hirsch_a = durfee::hirsch_a(citations, h);
    if (h < e.interval.low)
        e.anomaly = Anomaly::below_interval;
    else if (h > e.interval.high)
        e.anomaly = Anomaly::above_interval;
    return e;
}

inline Assessment assess(ScholarRecord const& scholar,
                         double epsilon = 0.02,
                         IntervalRule rule = IntervalRule::symmetric,
                         Limits const& limits = {})
{
    Assessment a;
    a.name = scholar.name;
    a.issues = check_record(scholar);
    a.primary = evaluate(scholar.citations, scholar.h, epsilon, rule, limits);
    if (nonbook_usable(scholar))
        a.nonbook = evaluate(*scholar.citations_nonbook, *scholar.h_nonbook, epsilon, rule, limits);
    return a;
}

/// Record with the non-book figures promoted to primary, plus the original.
struct BookAdjustment
{
    ScholarRecord original;
    ScholarRecord revised;
};

inline BookAdjustment book_adjust(ScholarRecord const& scholar)
{
    if (!scholar.has_nonbook())
        throw std::invalid_argument("book_adjust: '" + scholar.name
                                    + "' has no non-book citation data");
    ScholarRecord revised = scholar;
    revised.citations = *scholar.citations_nonbook;
    revised.h = *scholar.h_nonbook;
    revised.full_profile.reset();
    return {scholar, std::move(revised)};
}

//---------------------------------------------------------------------------//
// Correlation
//---------------------------------------------------------------------------//

/// Thrown for fewer than two points or a constant coordinate.
class DegenerateInputError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

using Point = std::pair<double, double>;

/// Pearson product-moment correlation.
inline double pearson_r(std::span<Point const> points)
{
    if (points.size() < 2)
        throw DegenerateInputError("pearson_r: need at least two points, got "
                                   + std::to_string(points.size()));
    double mx = 0.0, my = 0.0;
    for (auto const& [x, y] : points)
    {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (auto const& [x, y] : points)
    {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInputError("pearson_r: a coordinate has zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct CohortReport
{
    std::vector<Assessment> assessments;
    std::vector<Point> scatter_points;          // (estimate, h)
    std::vector<Point> scatter_points_nonbook;  // revised (estimate, h)
    std::optional<double> pearson_r;
    std::optional<double> pearson_r_nonbook;
    std::string correlation_error;
    std::string correlation_error_nonbook;

    std::size_t out_of_interval() const
    {
        return static_cast<std::size_t>(std::count_if(
            assessments.begin(), assessments.end(),
            [](Assessment const& a) { return !a.primary.in_interval; }));
    }
};

inline CohortReport analyze_cohort(std::span<ScholarRecord const> records,
                                   double epsilon = 0.02,
                                   IntervalRule rule = IntervalRule::symmetric,
                                   Limits const& limits = {})
{
    if (records.empty())
        throw std::invalid_argument("analyze_cohort: empty cohort");

    // Warm the count cache in one pass over all sizes.
    {
        std::vector<std::uint64_t> ns;
        for (auto const& r : records)
        {
            ns.push_back(r.citations);
            if (nonbook_usable(r))
                ns.push_back(*r.citations_nonbook);
        }
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        auto& cache = detail::CountCache::instance();
        std::erase_if(ns, [&](std::uint64_t n) { return cache.find_row(n) != nullptr; });
        for (auto& row : durfee_count_rows(ns, limits))
            cache.store_row(std::make_shared<DurfeeCountRow const>(std::move(row)));
    }

    CohortReport report;
    report.assessments.reserve(records.size());
    for (auto const& r : records)
    {
        report.assessments.push_back(assess(r, epsilon, rule, limits));
        auto const& a = report.assessments.back();
        report.scatter_points.emplace_back(a.primary.estimate, static_cast<double>(a.primary.h));
        if (a.nonbook)
            report.scatter_points_nonbook.emplace_back(a.nonbook->estimate,
                                                       static_cast<double>(a.nonbook->h));
    }

    try
    {
        report.pearson_r = durfee::pearson_r(report.scatter_points);
    }
    catch (DegenerateInputError const& e)
    {
        report.correlation_error = e.what();
    }
    if (!report.scatter_points_nonbook.empty())
    {
        try
        {
            report.pearson_r_nonbook = durfee::pearson_r(report.scatter_points_nonbook);
        }
        catch (DegenerateInputError const& e)
        {
            report.correlation_error_nonbook = e.what();
        }
    }
    return report;
}

}  // namespace durfee
