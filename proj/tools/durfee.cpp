// durfee: command-line front end for the h-index / Durfee square engine.
//
//   durfee pn 1000
//   durfee interval 500 --epsilon 0.02 --rule symmetric
//   durfee tail 1677 32
//   durfee cohort data/nas.csv --nonbook --scatter nas_scatter.csv
//   durfee reproduce table1
//
// Results go to stdout, diagnostics to stderr; nonzero exit on any error.

#include "report.hpp"

#include "durfee/cohort_io.hpp"
#include "durfee/interval_engine.hpp"
#include "durfee/partition_core.hpp"
#include "durfee/profile_analyzer.hpp"
#include "durfee/reproduce.hpp"
#include "durfee/sampler.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace durfee::cli {
namespace {

struct Globals
{
    std::string format = "plain";
    double epsilon = 0.02;
    std::string rule = "symmetric";
    std::uint64_t max_n = Limits{}.max_n;
    std::string data_dir;

    Limits limits() const { return {max_n}; }
    IntervalRule interval_rule() const { return parse_interval_rule(rule); }
    fs::path data() const { return data_dir.empty() ? default_data_dir() : fs::path(data_dir); }
};

std::string interval_text(ConfidenceInterval const& ci)
{
    return "[" + std::to_string(ci.low) + "," + std::to_string(ci.high) + "]";
}

json interval_json(ConfidenceInterval const& ci)
{
    return {{"low", ci.low},
            {"high", ci.high},
            {"mass", static_cast<double>(ci.mass)},
            {"covered", ci.covered.get_str()},
            {"epsilon", ci.epsilon},
            {"rule", std::string(to_string(ci.rule))}};
}

template<class T>
json opt_json(std::optional<T> const& v)
{
    return v ? json(*v) : json(nullptr);
}

std::string opt_fixed(std::optional<double> const& v, int decimals)
{
    return v ? fixed(*v, decimals) : "-";
}

//---------------------------------------------------------------------------//
// Persisted p(n) table ($DURFEE_CACHE_DIR/partition_counts.txt)
//---------------------------------------------------------------------------//

std::optional<fs::path> cache_file()
{
    char const* dir = std::getenv("DURFEE_CACHE_DIR");
    if (!dir || !*dir)
        return std::nullopt;
    return fs::path(dir) / "partition_counts.txt";
}

void load_cache()
{
    auto path = cache_file();
    if (!path || !fs::exists(*path))
        return;
    try
    {
        std::ifstream in(*path);
        adopt_partition_table(read_partition_table(in));
    }
    catch (std::exception const& e)
    {
        std::cerr << "durfee: ignoring cache " << path->string() << ": " << e.what() << '\n';
    }
}

void save_cache(std::uint64_t needed)
{
    auto path = cache_file();
    if (!path || needed == 0)
        return;
    std::uint64_t existing = 0;
    if (fs::exists(*path))
    {
        std::ifstream in(*path);
        std::string header;
        if (std::getline(in, header) && header.rfind("n=", 0) == 0)
            existing = std::stoull(header.substr(2));
    }
    if (existing >= needed)
        return;
    std::error_code ec;
    fs::create_directories(path->parent_path(), ec);
    auto table = partition_count_table(needed);
    fs::path tmp = *path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        write_partition_table(out, *table);
    }
    fs::rename(tmp, *path, ec);
    if (ec)
        std::cerr << "durfee: could not write cache " << path->string() << ": " << ec.message()
                  << '\n';
}

//---------------------------------------------------------------------------//
// Subcommands
//---------------------------------------------------------------------------//

Envelope cmd_pn(Globals const& g, std::uint64_t n)
{
    BigInt const exact = partition_count(n, g.limits());
    Envelope env;
    Table t{"", {"n", "p(n)", "hardy_ramanujan", "ratio"}, {}};
    env.json["n"] = n;
    env.json["exact"] = exact.get_str();
    if (n > 0)
    {
        long double const hr = hardy_ramanujan_estimate(n);
        long double const ratio = hr / to_real(exact);
        t.rows.push_back({std::to_string(n), exact.get_str(), sci(hr, 10), fixed(ratio, 6)});
        env.json["hardy_ramanujan"] = static_cast<double>(hr);
        env.json["ratio"] = static_cast<double>(ratio);
    }
    else
    {
        t.rows.push_back({"0", exact.get_str(), "-", "-"});
        env.json["hardy_ramanujan"] = nullptr;
        env.json["ratio"] = nullptr;
    }
    env.tables.push_back(std::move(t));
    return env;
}

Envelope cmd_dist(Globals const& g, std::uint64_t n)
{
    auto const dist = durfee_distribution(n, g.limits());
    Envelope env;
    Table t{"", {"k", "count", "probability"}, {}};
    json rows = json::array();
    for (std::uint64_t k = 0; k < dist.probabilities.size(); ++k)
    {
        auto const& c = dist.counts->counts[k];
        t.rows.push_back({std::to_string(k), c.get_str(), sci(dist.probabilities[k], 8)});
        rows.push_back({{"k", k},
                        {"count", c.get_str()},
                        {"probability", static_cast<double>(dist.probabilities[k])},
                        {"probability_text", full(dist.probabilities[k])}});
    }
    env.tables.push_back(std::move(t));
    env.summary.emplace_back("p(n)", dist.total.get_str());
    env.json["n"] = n;
    env.json["total"] = dist.total.get_str();
    env.json["distribution"] = std::move(rows);
    return env;
}

Envelope cmd_interval(Globals const& g, std::uint64_t n)
{
    auto const ci = confidence_interval(n, g.epsilon, g.interval_rule(), g.limits());
    auto const mode = mode_h(n, g.limits());
    auto const est = rule_of_thumb(n);
    Envelope env;
    env.tables.push_back({"",
                          {"n", "epsilon", "rule", "interval", "mass", "mode", "estimate"},
                          {{std::to_string(n), fixed(g.epsilon, 4), std::string(to_string(ci.rule)),
                            interval_text(ci), fixed(ci.mass, 6), std::to_string(mode),
                            fixed(est.value, 1)}}});
    env.json["n"] = n;
    env.json["interval"] = interval_json(ci);
    env.json["mode"] = mode;
    env.json["estimate"] = static_cast<double>(est.value);
    env.json["max_h"] = max_h(n);
    return env;
}

Envelope cmd_tail(Globals const& g, std::uint64_t n, std::uint64_t t)
{
    auto const p = tail_probability(n, t, g.limits());
    Envelope env;
    env.tables.push_back({"", {"n", "t", "P(h>=t)"}, {{std::to_string(n), std::to_string(t), sci(p, 8)}}});
    env.json["n"] = n;
    env.json["t"] = t;
    env.json["probability"] = static_cast<double>(p);
    env.json["probability_text"] = full(p);
    env.json["max_h"] = max_h(n);
    return env;
}

Envelope cmd_estimate(Globals const&, std::uint64_t n)
{
    auto const est = rule_of_thumb(n);
    Envelope env;
    env.tables.push_back({"",
                          {"n", "estimate", "max_h"},
                          {{std::to_string(n), fixed(est.value, 1), std::to_string(max_h(n))}}});
    env.json["n"] = n;
    env.json["estimate"] = static_cast<double>(est.value);
    env.json["max_h"] = max_h(n);
    return env;
}

void assessment_rows(Assessment const& a, Table& t, json& out)
{
    auto add = [&](Evaluation const& e, std::string const& label) {
        t.rows.push_back({label,
                          std::to_string(e.citations),
                          std::to_string(e.h),
                          fixed(e.estimate, 1),
                          interval_text(e.interval),
                          e.in_interval ? "yes" : "no",
                          opt_fixed(e.ratio, 2),
                          opt_fixed(e.hirsch_a, 2),
                          std::string(to_string(e.anomaly))});
        return json{{"citations", e.citations},
                    {"h", e.h},
                    {"estimate", e.estimate},
                    {"interval", interval_json(e.interval)},
                    {"in_interval", e.in_interval},
                    {"distance", e.distance},
                    {"ratio", opt_json(e.ratio)},
                    {"hirsch_a", opt_json(e.hirsch_a)},
                    {"anomaly", std::string(to_string(e.anomaly))}};
    };
    json entry;
    entry["name"] = a.name;
    entry["primary"] = add(a.primary, a.name);
    entry["nonbook"] = a.nonbook ? add(*a.nonbook, a.name + " (non-book)") : json(nullptr);
    json issues = json::array();
    for (auto i : a.issues)
        issues.push_back(std::string(to_string(i)));
    entry["issues"] = std::move(issues);
    out.push_back(std::move(entry));
}

Table assessment_table()
{
    return {"",
            {"name", "citations", "h", "estimate", "interval", "in_interval", "ratio", "hirsch_a",
             "anomaly"},
            {}};
}

Envelope cmd_analyze(Globals const& g,
                     std::string const& profile_file,
                     std::optional<std::uint64_t> citations,
                     std::optional<std::uint64_t> h,
                     std::optional<std::uint64_t> citations_nonbook,
                     std::optional<std::uint64_t> h_nonbook)
{
    std::vector<ScholarRecord> records;
    if (!profile_file.empty())
    {
        records = read_profiles(profile_file);
        if (records.empty())
            throw std::runtime_error("profile file '" + profile_file + "' has no profiles");
    }
    else
    {
        if (!citations || !h)
            throw std::invalid_argument("analyze: give a profile file or both --citations and --h");
        ScholarRecord r;
        r.name = "input";
        r.citations = *citations;
        r.h = *h;
        r.citations_nonbook = citations_nonbook;
        r.h_nonbook = h_nonbook;
        records.push_back(std::move(r));
    }

    Envelope env;
    Table t = assessment_table();
    json list = json::array();
    for (auto const& r : records)
    {
        auto const a = assess(r, g.epsilon, g.interval_rule(), g.limits());
        assessment_rows(a, t, list);
        for (auto i : a.issues)
            env.summary.emplace_back("warning (" + a.name + ")", std::string(to_string(i)));
    }
    env.tables.push_back(std::move(t));
    env.json["assessments"] = std::move(list);
    return env;
}

Envelope cmd_cohort(Globals const& g,
                    std::string const& csv_path,
                    bool nonbook,
                    std::string const& scatter_path)
{
    auto const rows = read_cohort_csv(csv_path);
    if (rows.empty())
        throw std::runtime_error("cohort file '" + csv_path + "' has no records");
    auto const records = records_of(rows);
    auto const report = analyze_cohort(records, g.epsilon, g.interval_rule(), g.limits());

    Envelope env;
    Table t = assessment_table();
    json list = json::array();
    for (auto const& a : report.assessments)
    {
        Assessment shown = a;
        if (!nonbook)
            shown.nonbook.reset();
        assessment_rows(shown, t, list);
    }
    env.tables.push_back(std::move(t));

    auto r_text = [](std::optional<double> r, std::string const& err) {
        return r ? fixed(*r, 2) : "undefined (" + err + ")";
    };
    env.summary.emplace_back("records", std::to_string(report.assessments.size()));
    env.summary.emplace_back("out of interval", std::to_string(report.out_of_interval()));
    env.summary.emplace_back("pearson R", r_text(report.pearson_r, report.correlation_error));
    env.json["assessments"] = std::move(list);
    env.json["out_of_interval"] = report.out_of_interval();
    env.json["pearson_r"] = opt_json(report.pearson_r);
    env.json["correlation_error"] = report.correlation_error;
    if (nonbook)
    {
        env.summary.emplace_back("pearson R (non-book)",
                                 report.scatter_points_nonbook.empty()
                                     ? "no non-book data"
                                     : r_text(report.pearson_r_nonbook,
                                              report.correlation_error_nonbook));
        env.json["pearson_r_nonbook"] = opt_json(report.pearson_r_nonbook);
        env.json["correlation_error_nonbook"] = report.correlation_error_nonbook;
    }
    for (auto const& a : report.assessments)
        for (auto i : a.issues)
            env.summary.emplace_back("warning (" + a.name + ")", std::string(to_string(i)));

    if (!scatter_path.empty())
    {
        std::ofstream out(scatter_path);
        if (!out)
            throw std::runtime_error("cannot write scatter file '" + scatter_path + "'");
        out << "name,series,estimate,h\n";
        for (auto const& a : report.assessments)
        {
            out << detail::csv_escape(a.name) << ",raw," << full(a.primary.estimate) << ','
                << a.primary.h << '\n';
            if (nonbook && a.nonbook)
                out << detail::csv_escape(a.name) << ",nonbook," << full(a.nonbook->estimate)
                    << ',' << a.nonbook->h << '\n';
        }
        env.summary.emplace_back("scatter", scatter_path);
    }
    return env;
}

Envelope cmd_sample(Globals const& g,
                    std::uint64_t n,
                    std::uint64_t samples,
                    std::uint64_t seed,
                    std::string const& method,
                    bool compare_exact)
{
    SamplerConfig cfg{n, seed, parse_sampler_method(method)};
    auto const emp = empirical_durfee_distribution(cfg, samples, g.limits());
    std::optional<DurfeeDistribution> exact;
    if (compare_exact)
        exact = durfee_distribution(n, g.limits());

    Envelope env;
    Table t{"", {"k", "count", "frequency"}, {}};
    if (exact)
        t.columns.push_back("exact");
    json hist = json::array();
    std::uint64_t const top = exact ? exact->max_k() : (emp.histogram.empty() ? 0 : emp.histogram.rbegin()->first);
    for (std::uint64_t k = 0; k <= top; ++k)
    {
        auto it = emp.histogram.find(k);
        std::uint64_t const c = it == emp.histogram.end() ? 0 : it->second;
        if (c == 0 && (!exact || exact->probabilities[k] == 0))
            continue;
        std::vector<std::string> row{std::to_string(k), std::to_string(c), fixed(emp.frequency(k), 5)};
        json entry{{"k", k}, {"count", c}, {"frequency", emp.frequency(k)}};
        if (exact)
        {
            row.push_back(fixed(exact->probabilities[k], 5));
            entry["exact"] = static_cast<double>(exact->probabilities[k]);
        }
        t.rows.push_back(std::move(row));
        hist.push_back(std::move(entry));
    }
    env.tables.push_back(std::move(t));
    env.summary.emplace_back("samples", std::to_string(samples));
    env.summary.emplace_back("method", std::string(to_string(cfg.method)));
    env.summary.emplace_back("rng", std::string(rng_algorithm) + " seed " + std::to_string(seed));
    env.json["n"] = n;
    env.json["samples"] = samples;
    env.json["seed"] = seed;
    env.json["method"] = std::string(to_string(cfg.method));
    env.json["rng"] = std::string(rng_algorithm);
    env.json["histogram"] = std::move(hist);
    if (exact)
    {
        double const tv = total_variation(*exact, emp);
        env.summary.emplace_back("total variation", fixed(tv, 5));
        env.json["total_variation"] = tv;
    }
    return env;
}

//---------------------------------------------------------------------------//
// reproduce
//---------------------------------------------------------------------------//

Envelope reproduce_table1_env(Globals const& g)
{
    auto const rows = reproduce_table1(g.data(), g.epsilon, g.limits());
    Envelope env;
    Table t{"", {"n", "printed", "symmetric", "minwidth", "mass_sym", "mass_minw", "within_1"}, {}};
    json list = json::array();
    std::size_t sym_exact = 0, mw_exact = 0, sym_near = 0, mw_near = 0, either_near = 0;
    for (auto const& d : rows)
    {
        bool const sn = d.symmetric_within(1), mn = d.min_width_within(1);
        sym_exact += d.symmetric_within(0);
        mw_exact += d.min_width_within(0);
        sym_near += sn;
        mw_near += mn;
        either_near += sn || mn;
        t.rows.push_back({std::to_string(d.n),
                          "[" + std::to_string(d.printed_low) + "," + std::to_string(d.printed_high) + "]",
                          interval_text(d.symmetric), interval_text(d.min_width),
                          fixed(d.symmetric.mass, 4), fixed(d.min_width.mass, 4),
                          sn || mn ? "yes" : "NO"});
        list.push_back({{"n", d.n},
                        {"printed", {d.printed_low, d.printed_high}},
                        {"symmetric", interval_json(d.symmetric)},
                        {"minwidth", interval_json(d.min_width)},
                        {"within_1", sn || mn}});
    }
    env.tables.push_back(std::move(t));
    auto frac = [&](std::size_t k) { return std::to_string(k) + "/" + std::to_string(rows.size()); };
    env.summary.emplace_back("within +-1 (either rule)", frac(either_near));
    env.summary.emplace_back("within +-1 (symmetric)", frac(sym_near));
    env.summary.emplace_back("within +-1 (minwidth)", frac(mw_near));
    env.summary.emplace_back("exact match (symmetric)", frac(sym_exact));
    env.summary.emplace_back("exact match (minwidth)", frac(mw_exact));
    env.json["target"] = "table1";
    env.json["rows"] = std::move(list);
    env.json["within_1"] = either_near;
    env.json["exact_symmetric"] = sym_exact;
    env.json["exact_minwidth"] = mw_exact;
    env.json["total"] = rows.size();
    return env;
}

Envelope reproduce_scholars_env(Globals const& g, std::string const& target, std::string const& file)
{
    auto const diffs = reproduce_scholar_table(g.data() / file, g.epsilon, g.interval_rule(), g.limits());
    bool const appendix = target == "appendix";

    Envelope env;
    Table t{"", {"name", "citations", "h", "estimate", "printed", "match", "interval", "printed_interval",
                 "in_interval"}, {}};
    if (appendix)
        t.columns = {"name", "citations", "h", "estimate", "printed", "match", "revised_est",
                     "printed_rev", "rev_match", "flags"};
    json list = json::array();
    std::size_t est_checked = 0, est_ok = 0, rev_checked = 0, rev_ok = 0, flagged = 0;
    std::size_t out_computed = 0, out_printed = 0, interval_exact = 0, interval_printed = 0;
    for (auto const& d : diffs)
    {
        auto const& e = d.assessment.primary;
        std::string flags;
        if (d.columns_transposed)
            flags += "transposed-columns ";
        for (auto i : d.assessment.issues)
            flags += std::string(to_string(i)) + " ";
        if (d.flagged())
            ++flagged;
        else
        {
            ++est_checked;
            est_ok += d.estimate_ok();
            if (d.printed.revised_estimate)
            {
                ++rev_checked;
                rev_ok += d.revised_estimate_ok();
            }
        }
        out_computed += !e.in_interval;
        out_printed += !d.printed_interval_contains_h();
        std::string printed_interval = "-";
        if (d.printed.low && d.printed.high)
        {
            ++interval_printed;
            interval_exact += *d.printed.low == e.interval.low && *d.printed.high == e.interval.high;
            printed_interval = "[" + std::to_string(*d.printed.low) + "," + std::to_string(*d.printed.high) + "]";
        }
        std::string const printed_est = d.printed.estimate ? fixed(*d.printed.estimate, 1) : "-";
        json entry{{"name", d.row.record.name},
                   {"citations", d.row.record.citations},
                   {"h", d.row.record.h},
                   {"estimate", e.estimate},
                   {"printed_estimate", opt_json(d.printed.estimate)},
                   {"estimate_match", d.estimate_ok()},
                   {"interval", interval_json(e.interval)},
                   {"in_interval", e.in_interval},
                   {"flagged", d.flagged()},
                   {"flags", flags}};
        if (appendix)
        {
            std::optional<double> rev;
            if (d.row.record.citations_nonbook)
                rev = static_cast<double>(rule_of_thumb(*d.row.record.citations_nonbook).value);
            t.rows.push_back({d.row.record.name, std::to_string(d.row.record.citations),
                              std::to_string(d.row.record.h), fixed(e.estimate, 1), printed_est,
                              d.estimate_ok() ? "yes" : "NO", opt_fixed(rev, 1),
                              d.printed.revised_estimate ? fixed(*d.printed.revised_estimate, 1) : "-",
                              d.revised_estimate_ok() ? "yes" : "NO", flags});
            entry["revised_estimate"] = opt_json(rev);
            entry["printed_revised_estimate"] = opt_json(d.printed.revised_estimate);
            entry["revised_estimate_match"] = d.revised_estimate_ok();
        }
        else
        {
            t.rows.push_back({d.row.record.name, std::to_string(d.row.record.citations),
                              std::to_string(d.row.record.h), fixed(e.estimate, 1), printed_est,
                              d.estimate_ok() ? "yes" : "NO", interval_text(e.interval),
                              printed_interval, e.in_interval ? "yes" : "no"});
        }
        list.push_back(std::move(entry));
    }
    env.tables.push_back(std::move(t));

    auto frac = [](std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); };
    env.summary.emplace_back("estimate cells within 0.1", frac(est_ok, est_checked));
    env.summary.emplace_back("flagged inconsistent rows", std::to_string(flagged));
    env.json["target"] = target;
    env.json["rows"] = std::move(list);
    env.json["estimate_checked"] = est_checked;
    env.json["estimate_ok"] = est_ok;
    env.json["flagged"] = flagged;
    if (appendix)
    {
        env.summary.emplace_back("revised estimate cells within 0.1", frac(rev_ok, rev_checked));
        auto const report = analyze_cohort(records_of([&] {
                                               std::vector<CohortRow> rows;
                                               for (auto const& d : diffs)
                                                   rows.push_back(d.row);
                                               return rows;
                                           }()),
                                           g.epsilon, g.interval_rule(), g.limits());
        if (report.pearson_r)
            env.summary.emplace_back("pearson R", fixed(*report.pearson_r, 4));
        if (report.pearson_r_nonbook)
            env.summary.emplace_back("pearson R (non-book)", fixed(*report.pearson_r_nonbook, 4));
        env.json["revised_checked"] = rev_checked;
        env.json["revised_ok"] = rev_ok;
        env.json["pearson_r"] = opt_json(report.pearson_r);
        env.json["pearson_r_nonbook"] = opt_json(report.pearson_r_nonbook);
    }
    else
    {
        env.summary.emplace_back("intervals identical to printed", frac(interval_exact, interval_printed));
        env.summary.emplace_back("h outside computed interval", std::to_string(out_computed));
        env.summary.emplace_back("h outside printed interval", std::to_string(out_printed));
        env.json["interval_exact"] = interval_exact;
        env.json["out_of_interval_computed"] = out_computed;
        env.json["out_of_interval_printed"] = out_printed;
    }
    return env;
}

Envelope cmd_reproduce(Globals const& g, std::string const& target)
{
    if (target == "table1")
        return reproduce_table1_env(g);
    if (auto file = fixture_for(target))
        return reproduce_scholars_env(g, target, *file);
    throw std::invalid_argument("reproduce: unknown target '" + target
                                + "' (expected table1, table2, table3, table4, appendix)");
}

}  // namespace
}  // namespace durfee::cli

int main(int argc, char** argv)
{
    using namespace durfee;
    using namespace durfee::cli;

    CLI::App app{"Exact h-index model: Durfee squares of uniform random partitions", "durfee"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"plain", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--epsilon", g.epsilon, "Allowed probability outside the interval")
        ->capture_default_str();
    app.add_option("--rule", g.rule, "Interval selection rule")
        ->check(CLI::IsMember({"symmetric", "minwidth"}))
        ->capture_default_str();
    app.add_option("--max-n", g.max_n, "Resource cap on partition size")->capture_default_str();
    app.add_option("--data-dir", g.data_dir, "Directory holding the bundled fixtures");

    std::uint64_t n = 0, t = 0;
    std::function<Envelope()> run;

    auto* pn = app.add_subcommand("pn", "Exact p(n) beside the Hardy-Ramanujan estimate");
    pn->add_option("n", n)->required();
    pn->callback([&] { run = [&] { return cmd_pn(g, n); }; });

    auto* dist = app.add_subcommand("dist", "Exact distribution of the Durfee square side");
    dist->add_option("n", n)->required();
    dist->callback([&] { run = [&] { return cmd_dist(g, n); }; });

    auto* interval = app.add_subcommand("interval", "Confidence interval for h given N citations");
    interval->add_option("n", n)->required();
    interval->callback([&] { run = [&] { return cmd_interval(g, n); }; });

    auto* tail = app.add_subcommand("tail", "P(h >= t) for N citations");
    tail->add_option("n", n)->required();
    tail->add_option("t", t)->required();
    tail->callback([&] { run = [&] { return cmd_tail(g, n, t); }; });

    auto* estimate = app.add_subcommand("estimate", "Rule-of-thumb h for N citations");
    estimate->add_option("n", n)->required();
    estimate->callback([&] { run = [&] { return cmd_estimate(g, n); }; });

    std::string profile_file;
    std::optional<std::uint64_t> citations, h, citations_nonbook, h_nonbook;
    auto* analyze = app.add_subcommand("analyze", "Assess one scholar against the model");
    // --h names the h-index here, so help is reachable only as --help.
    analyze->set_help_flag("--help", "Print this help message and exit");
    analyze->add_option("profile_file", profile_file, "File of 'name: c1 c2 ...' lines");
    analyze->add_option("--citations", citations);
    analyze->add_option("--h", h);
    analyze->add_option("--citations-nonbook", citations_nonbook);
    analyze->add_option("--h-nonbook", h_nonbook);
    analyze->callback([&] {
        run = [&] { return cmd_analyze(g, profile_file, citations, h, citations_nonbook, h_nonbook); };
    });

    std::string csv_path, scatter_path;
    bool nonbook = false;
    auto* cohort = app.add_subcommand("cohort", "Assess a cohort CSV and correlate estimate with h");
    cohort->add_option("csv", csv_path)->required();
    cohort->add_flag("--nonbook", nonbook, "Also assess the non-book figures");
    cohort->add_option("--scatter", scatter_path, "Write (estimate, h) scatter CSV here");
    cohort->callback([&] { run = [&] { return cmd_cohort(g, csv_path, nonbook, scatter_path); }; });

    std::uint64_t samples = 10000, seed = 1;
    std::string method = "recursive_unranking";
    bool compare_exact = false;
    auto* sample = app.add_subcommand("sample", "Durfee histogram of uniform random partitions");
    sample->add_option("n", n)->required();
    sample->add_option("--samples", samples)->capture_default_str();
    sample->add_option("--seed", seed)->capture_default_str();
    sample->add_option("--method", method)
        ->check(CLI::IsMember({"recursive_unranking", "boltzmann_rejection", "unranking", "boltzmann"}))
        ->capture_default_str();
    sample->add_flag("--compare-exact", compare_exact, "Compare against the exact distribution");
    sample->callback([&] {
        run = [&] { return cmd_sample(g, n, samples, seed, method, compare_exact); };
    });

    std::string target;
    auto* reproduce = app.add_subcommand("reproduce", "Regenerate a published table and diff it");
    reproduce->add_option("target", target, "table1|table2|table3|table4|appendix")->required();
    reproduce->callback([&] { run = [&] { return cmd_reproduce(g, target); }; });

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        return app.exit(e);
    }

    try
    {
        load_cache();
        Envelope env = run();
        emit(std::cout, env, parse_format(g.format));
        std::uint64_t built = 0;
        try
        {
            built = partition_count_table(0)->max_n;
        }
        catch (...)
        {
        }
        save_cache(built);
        return 0;
    }
    catch (std::exception const& e)
    {
        std::cerr << "durfee: " << e.what() << '\n';
        return 1;
    }
}
