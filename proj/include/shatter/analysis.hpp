#pragma once

#include "shatter/combinatorics.hpp"
#include "shatter/dataset.hpp"
#include "shatter/equivalence.hpp"
#include "shatter/error.hpp"
#include "shatter/growth.hpp"
#include "shatter/guarantees.hpp"
#include "shatter/separability.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <future>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace shatter {

inline constexpr const char* tool_version = "1.0.0";
inline constexpr int report_version = 1;

enum class path_selection { hyperplanes, regions, both };

struct analysis_options {
    csv_options csv;
    metric kind = metric::euclidean;
    double shrink = default_shrink;
    std::vector<std::size_t> schedule;  ///< empty selects `default_schedule`
    std::size_t repetitions = 10;
    std::uint64_t seed = 42;
    double delta = 0.05;
    std::vector<double> zetas{0.01};
    path_selection paths = path_selection::both;
    bool timestamp = true;
    unsigned threads = 1;
};

struct sample_size_row {
    double zeta{};
    std::uint64_t n_exponential{};
    double epsilon{};
    std::optional<std::uint64_t> n_general;
};

struct guarantee_report {
    shattering_growth_form estimate;  ///< regions = ceil(h(n))
    shattering_growth_form lower;     ///< regions = r(Omega, d)
    shattering_growth_form upper;     ///< regions = r(O, d)
    double delta{};
    std::vector<sample_size_row> sample_sizes;
    double variance_at_n{};

    [[nodiscard]] double epsilon_estimate() const { return epsilon_threshold(estimate); }
    [[nodiscard]] double epsilon_lower() const { return epsilon_threshold(lower); }
    [[nodiscard]] double epsilon_upper() const { return epsilon_threshold(upper); }
};

struct complexity_report {
    std::string source;
    std::size_t n{};
    std::size_t dim{};
    std::size_t classes{};
    std::vector<std::string> class_names;
    std::size_t duplicate_points{};
    std::size_t conflicting_duplicates{};
    std::vector<std::string> warnings;

    std::size_t region_count{};
    growth_curve curve;
    growth_model model;
    double h_at_n{};
    std::uint64_t h_ceil{};
    hyperplane_bounds hyperplanes;

    std::optional<std::string> degenerate_reason;
    std::optional<shattering_estimate> path_hyperplanes;
    std::optional<shattering_estimate> path_regions;
    big_int sauer;
    std::optional<guarantee_report> guarantees;

    analysis_options options;
    std::string timestamp;
};

namespace detail {

inline std::uint64_t ceil_count(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, x)) {
        return static_cast<std::uint64_t>(std::max(1.0, r));
    }
    return static_cast<std::uint64_t>(std::max(1.0, std::ceil(x)));
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

}  // namespace detail

/// Full pipeline on an already loaded dataset.
[[nodiscard]] inline complexity_report analyze(const labeled_dataset& raw, const analysis_options& opts,
                                               std::string source = "<memory>") {
    if (!(opts.delta > 0.0 && opts.delta < 1.0)) {
        throw input_error("delta must lie in (0, 1)");
    }
    for (const double z : opts.zetas) {
        if (!(z > 0.0)) {
            throw input_error("zeta values must be positive");
        }
    }
    complexity_report rep;
    rep.source = std::move(source);
    rep.options = opts;
    if (opts.timestamp) {
        rep.timestamp = detail::utc_timestamp();
    }
    rep.n = raw.size();
    rep.dim = raw.dim();
    rep.classes = raw.num_classes();
    rep.class_names = raw.class_names();
    rep.duplicate_points = count_duplicate_points(raw);
    rep.conflicting_duplicates = count_conflicting_duplicates(raw);
    if (rep.duplicate_points > 0) {
        rep.warnings.push_back(std::to_string(rep.duplicate_points) +
                               " points repeat earlier coordinates; points are assumed to be in general position");
    }
    if (rep.conflicting_duplicates > 0) {
        rep.warnings.push_back(std::to_string(rep.conflicting_duplicates) +
                               " coincident point pairs carry different labels; they form zero-radius singleton regions");
    }

    const auto data = normalize_unit_cube(raw);
    rep.region_count = compress_space(data, compute_open_balls(data, opts.kind, opts.shrink)).region_count();

    auto schedule = opts.schedule.empty() ? default_schedule(data.size(), data.num_classes()) : opts.schedule;
    rep.curve = sample_growth_curve(data, schedule, opts.repetitions, opts.seed,
                                    growth_options{opts.kind, opts.shrink, opts.threads});
    rep.model = rep.curve.samples.size() >= 2 ? fit_growth_model(rep.curve)
                                              : fit_growth_family(rep.curve, growth_family::constant);
    const auto n = static_cast<double>(rep.n);
    rep.h_at_n = rep.model.evaluate(n);
    rep.h_ceil = detail::ceil_count(rep.h_at_n);
    rep.hyperplanes = estimate_hyperplanes(rep.h_at_n, rep.dim, n);
    rep.sauer = sauer_shelah(rep.n, rep.dim + 1);

    if (rep.classes < 2) {
        rep.degenerate_reason = "single class: there is no classification problem, so shattering bounds and "
                                "learning guarantees are not computed";
        return rep;
    }
    if (opts.paths != path_selection::regions) {
        rep.path_hyperplanes =
            shattering_bounds(rep.hyperplanes, rep.dim, rep.classes, rep.h_ceil, region_path::hyperplanes);
    }
    if (opts.paths != path_selection::hyperplanes) {
        rep.path_regions = shattering_bounds(rep.hyperplanes, rep.dim, rep.classes, rep.h_ceil, region_path::regions);
    }

    guarantee_report g;
    g.estimate = form_from_regions(rep.model, rep.classes);
    auto [lower, upper] = forms_from_hyperplanes(rep.model, rep.dim, rep.classes);
    g.lower = std::move(lower);
    g.upper = std::move(upper);
    g.delta = opts.delta;
    for (const double z : opts.zetas) {
        sample_size_row row;
        row.zeta = z;
        row.n_exponential = sample_size_exponential(opts.delta, z);
        row.epsilon = epsilon_with_slack(g.estimate, z);
        row.n_general = sample_size_general(g.estimate, opts.delta, row.epsilon);
        g.sample_sizes.push_back(row);
    }
    g.variance_at_n = generalization_bound(g.estimate, 0.0, n, opts.delta);
    rep.guarantees = std::move(g);
    return rep;
}

[[nodiscard]] inline complexity_report analyze_file(const std::string& path, const analysis_options& opts) {
    return analyze(load_csv(path, opts.csv), opts, path);
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return nullptr;
}

inline nlohmann::json optional_count(const std::optional<std::uint64_t>& v) {
    if (v) {
        return *v;
    }
    return nullptr;
}

}  // namespace detail

/// Counts above this many digits are reported by log10 and digit count only.
inline constexpr std::uint64_t max_exact_digits = 10000;

[[nodiscard]] inline nlohmann::json to_json(const big_count& c) {
    nlohmann::json j{{"log", c.log_natural}, {"log10", c.log10()}, {"digits", c.digits()}};
    if (c.exact && c.digits() <= max_exact_digits) {
        j["exact"] = c.exact->str();
    }
    return j;
}

[[nodiscard]] inline nlohmann::json to_json(const shattering_growth_form& f) {
    return {{"kind", std::string(to_string(f.kind))},
            {"coefficient", f.coefficient},
            {"exponent", f.exponent},
            {"offset", f.offset}};
}

[[nodiscard]] inline nlohmann::json to_json(const shattering_estimate& s) {
    return {{"path", std::string(to_string(s.path))},
            {"classes", s.classes},
            {"regions_lower", to_json(big_count::of(s.regions_lower))},
            {"regions_upper", to_json(big_count::of(s.regions_upper))},
            {"lower", to_json(s.lower)},
            {"upper", to_json(s.upper)}};
}

[[nodiscard]] inline std::string_view to_string(path_selection p) noexcept {
    switch (p) {
        case path_selection::hyperplanes: return "i";
        case path_selection::regions: return "ii";
        case path_selection::both: break;
    }
    return "both";
}

[[nodiscard]] inline nlohmann::json to_json(const complexity_report& r) {
    using nlohmann::json;
    json curve = json::array();
    for (const auto& s : r.curve.samples) {
        curve.push_back({{"n", s.n},
                         {"mean_regions", s.mean_regions},
                         {"std_regions", s.std_regions},
                         {"repetitions", s.repetitions}});
    }
    std::vector<std::size_t> schedule;
    for (const auto& s : r.curve.samples) {
        schedule.push_back(s.n);
    }
    json out{
        {"report_version", report_version},
        {"tool", {{"name", "shatter"}, {"version", tool_version}}},
        {"source", r.source},
        {"seed", r.options.seed},
        {"options",
         {{"metric", std::string(to_string(r.options.kind))},
          {"shrink", r.options.shrink},
          {"repetitions", r.options.repetitions},
          {"schedule", schedule},
          {"delta", r.options.delta},
          {"zeta", r.options.zetas},
          {"path", std::string(to_string(r.options.paths))}}},
        {"dataset",
         {{"n", r.n},
          {"d", r.dim},
          {"classes", r.classes},
          {"class_names", r.class_names},
          {"duplicate_points", r.duplicate_points},
          {"conflicting_duplicates", r.conflicting_duplicates},
          {"warnings", r.warnings}}},
        {"degenerate", r.degenerate_reason.has_value()},
        {"regions", {{"count", r.region_count}}},
        {"growth",
         {{"curve", curve},
          {"model",
           {{"family", std::string(to_string(r.model.family))},
            {"a", r.model.a},
            {"b", r.model.b},
            {"fit_error", r.model.fit_error}}},
          {"h_at_n", r.h_at_n},
          {"h_ceil", r.h_ceil}}},
        {"hyperplanes",
         {{"at_n", r.hyperplanes.at_n},
          {"d", r.hyperplanes.dim},
          {"best_case_estimate", r.hyperplanes.lower},
          {"worst_case_estimate", r.hyperplanes.upper},
          {"lower_int", r.hyperplanes.lower_int},
          {"upper_int", r.hyperplanes.upper_int}}},
        {"sauer_shelah", {{"n", r.n}, {"vc", r.dim + 1}, {"value", to_json(big_count::of(r.sauer))}}},
    };
    if (!r.timestamp.empty()) {
        out["timestamp"] = r.timestamp;
    }
    if (r.degenerate_reason) {
        out["degenerate_reason"] = *r.degenerate_reason;
        out["shattering"] = {{"skipped", *r.degenerate_reason}};
        out["guarantees"] = nullptr;
        return out;
    }
    json shattering = json::object();
    if (r.path_hyperplanes) {
        shattering["path_i"] = to_json(*r.path_hyperplanes);
    }
    if (r.path_regions) {
        shattering["path_ii"] = to_json(*r.path_regions);
    }
    out["shattering"] = shattering;

    const auto& g = *r.guarantees;
    json sizes = json::array();
    for (const auto& row : g.sample_sizes) {
        sizes.push_back({{"zeta", row.zeta},
                         {"n_exponential", row.n_exponential},
                         {"epsilon", detail::finite_or_null(row.epsilon)},
                         {"n_general", detail::optional_count(row.n_general)}});
    }
    out["guarantees"] = {
        {"delta", g.delta},
        {"forms", {{"estimate", to_json(g.estimate)}, {"lower", to_json(g.lower)}, {"upper", to_json(g.upper)}}},
        {"epsilon_estimate", detail::finite_or_null(g.epsilon_estimate())},
        {"epsilon_lower", detail::finite_or_null(g.epsilon_lower())},
        {"epsilon_upper", detail::finite_or_null(g.epsilon_upper())},
        {"sample_sizes", sizes},
        {"genbound_variance_at_n", detail::finite_or_null(g.variance_at_n)},
        {"genbound_variance_estimate", detail::finite_or_null(genbound_asymptote(g.estimate, g.delta))},
        {"genbound_variance_lower", detail::finite_or_null(genbound_asymptote(g.lower, g.delta))},
        {"genbound_variance_upper", detail::finite_or_null(genbound_asymptote(g.upper, g.delta))},
    };
    return out;
}

// ---------------------------------------------------------------------------
// comparison

struct comparison_entry {
    std::string source;
    std::optional<complexity_report> report;
    std::string error;
};

struct comparison {
    std::vector<comparison_entry> entries;
    /// indices into `entries` of successful analyses, most separable first
    std::vector<std::size_t> ranking;

    [[nodiscard]] bool all_ok() const {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.report.has_value(); });
    }
};

namespace detail {

// degenerate datasets have no threshold and rank last
inline double ranking_epsilon(const complexity_report& r) {
    return r.guarantees ? r.guarantees->epsilon_estimate() : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Analyzes every dataset concurrently and ranks them by epsilon threshold,
/// breaking ties by the worst-case hyperplane count. Input errors are recorded
/// per entry and do not stop the other analyses.
[[nodiscard]] inline comparison compare(const std::vector<std::string>& paths, const analysis_options& opts) {
    if (paths.size() < 2) {
        throw input_error("compare needs at least two datasets");
    }
    std::vector<std::future<complexity_report>> jobs;
    jobs.reserve(paths.size());
    for (const auto& p : paths) {
        jobs.push_back(std::async(std::launch::async, [&opts, p] { return analyze_file(p, opts); }));
    }
    comparison out;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        comparison_entry e;
        e.source = paths[i];
        try {
            e.report = jobs[i].get();
        } catch (const input_error& err) {
            e.error = err.what();
        }
        if (e.report) {
            out.ranking.push_back(i);
        }
        out.entries.push_back(std::move(e));
    }
    std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = *out.entries[a].report;
        const auto& rb = *out.entries[b].report;
        const double ea = detail::ranking_epsilon(ra);
        const double eb = detail::ranking_epsilon(rb);
        if (ea != eb) {
            return ea < eb;
        }
        return ra.hyperplanes.upper < rb.hyperplanes.upper;
    });
    return out;
}

[[nodiscard]] inline nlohmann::json to_json(const comparison& c) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& e : c.entries) {
        if (e.report) {
            reports.push_back(to_json(*e.report));
        } else {
            reports.push_back({{"source", e.source}, {"error", e.error}});
        }
    }
    nlohmann::json ranking = nlohmann::json::array();
    // tied entries share a rank
    std::size_t rank = 0;
    const complexity_report* prev = nullptr;
    for (std::size_t pos = 0; pos < c.ranking.size(); ++pos) {
        const auto& r = *c.entries[c.ranking[pos]].report;
        if (prev == nullptr || detail::ranking_epsilon(*prev) != detail::ranking_epsilon(r) ||
            prev->hyperplanes.upper != r.hyperplanes.upper) {
            rank = pos + 1;
        }
        prev = &r;
        ranking.push_back({{"rank", rank},
                           {"source", r.source},
                           {"epsilon_threshold", detail::finite_or_null(detail::ranking_epsilon(r))},
                           {"worst_case_hyperplanes", r.hyperplanes.upper}});
    }
    return {{"report_version", report_version}, {"reports", reports}, {"ranking", ranking}};
}

}  // namespace shatter
