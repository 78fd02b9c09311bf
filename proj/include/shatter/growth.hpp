#pragma once

#include "shatter/dataset.hpp"
#include "shatter/equivalence.hpp"
#include "shatter/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace shatter {

struct growth_sample {
    std::size_t n{};
    double mean_regions{};
    double std_regions{};
    std::size_t repetitions{};

    [[nodiscard]] friend bool operator==(const growth_sample&, const growth_sample&) = default;
};

/// Mean region count as a function of sample size.
struct growth_curve {
    std::vector<growth_sample> samples;
    std::uint64_t seed{};

    [[nodiscard]] friend bool operator==(const growth_curve&, const growth_curve&) = default;
};

struct growth_options {
    metric kind = metric::euclidean;
    double shrink = default_shrink;
    /// Worker threads for repetitions; results do not depend on this value.
    unsigned threads = 1;
};

/// `count` geometrically spaced sizes from max(2C, 10) up to n.
[[nodiscard]] inline std::vector<std::size_t> default_schedule(std::size_t n, std::size_t classes,
                                                               std::size_t count = 10) {
    std::vector<std::size_t> out;
    const std::size_t start = std::max<std::size_t>(2 * classes, 10);
    if (n <= start) {
        // small datasets: every size from max(C, 2) up to n, at most `count` of them
        const std::size_t lo = std::min(n, std::max<std::size_t>(classes, 2));
        const std::size_t step = std::max<std::size_t>(1, (n - lo + count - 1) / count);
        for (std::size_t m = lo; m < n; m += step) {
            out.push_back(m);
        }
        out.push_back(n);
        return out;
    }
    const double ratio = std::pow(static_cast<double>(n) / static_cast<double>(start), 1.0 / static_cast<double>(count - 1));
    for (std::size_t k = 0; k < count; ++k) {
        auto m = static_cast<std::size_t>(std::llround(static_cast<double>(start) * std::pow(ratio, static_cast<double>(k))));
        m = std::clamp(m, start, n);
        if (out.empty() || m > out.back()) {
            out.push_back(m);
        }
    }
    if (out.back() != n) {
        out.push_back(n);
    }
    return out;
}

namespace detail {

inline std::mt19937_64 stream_for(std::uint64_t seed, std::size_t size_index, std::size_t repetition) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(size_index), static_cast<std::uint32_t>(repetition)};
    return std::mt19937_64(seq);
}

// m rows without replacement; one row per class first whenever m >= C
inline std::vector<std::size_t> stratified_draw(const labeled_dataset& data, std::size_t m, std::mt19937_64& rng) {
    const std::size_t n = data.size();
    std::vector<bool> taken(n, false);
    std::vector<std::size_t> chosen;
    chosen.reserve(m);
    if (m >= data.num_classes()) {
        std::vector<std::vector<std::size_t>> members(data.num_classes());
        for (std::size_t i = 0; i < n; ++i) {
            members[static_cast<std::size_t>(data.label(i))].push_back(i);
        }
        for (const auto& rows : members) {
            std::uniform_int_distribution<std::size_t> pick(0, rows.size() - 1);
            const std::size_t r = rows[pick(rng)];
            taken[r] = true;
            chosen.push_back(r);
        }
    }
    std::vector<std::size_t> pool;
    pool.reserve(n - chosen.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!taken[i]) {
            pool.push_back(i);
        }
    }
    // partial Fisher-Yates
    for (std::size_t k = 0; chosen.size() < m; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
        std::swap(pool[k], pool[pick(rng)]);
        chosen.push_back(pool[k]);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace detail

/// Region counts over repeated stratified subsamples at each scheduled size.
/// Every repetition draws from its own stream seeded by (seed, size index,
/// repetition), so the curve is reproducible for any thread count.
[[nodiscard]] inline growth_curve sample_growth_curve(const labeled_dataset& data, std::vector<std::size_t> schedule,
                                                      std::size_t repetitions, std::uint64_t seed,
                                                      const growth_options& opts = {}) {
    if (schedule.empty()) {
        throw input_error("growth schedule is empty");
    }
    if (repetitions == 0) {
        throw input_error("repetitions must be at least 1");
    }
    std::sort(schedule.begin(), schedule.end());
    schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());
    if (schedule.front() == 0) {
        throw input_error("growth schedule sizes must be positive");
    }
    if (schedule.back() > data.size()) {
        throw input_error("growth schedule size " + std::to_string(schedule.back()) + " exceeds dataset size " +
                          std::to_string(data.size()));
    }

    growth_curve curve;
    curve.seed = seed;
    std::vector<double> counts(repetitions);
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(repetitions)));
    for (std::size_t s = 0; s < schedule.size(); ++s) {
        const std::size_t m = schedule[s];
        auto run = [&](std::size_t rep) {
            auto rng = detail::stream_for(seed, s, rep);
            const auto rows = detail::stratified_draw(data, m, rng);
            counts[rep] = static_cast<double>(count_regions(data.subset(rows), opts.kind, opts.shrink));
        };
        if (workers == 1) {
            for (std::size_t rep = 0; rep < repetitions; ++rep) {
                run(rep);
            }
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t rep = w; rep < repetitions; rep += workers) {
                        run(rep);
                    }
                });
            }
        }
        double mean = 0.0;
        for (const double c : counts) {
            mean += c;
        }
        mean /= static_cast<double>(repetitions);
        double var = 0.0;
        for (const double c : counts) {
            var += (c - mean) * (c - mean);
        }
        const double sd = repetitions > 1 ? std::sqrt(var / static_cast<double>(repetitions - 1)) : 0.0;
        curve.samples.push_back({m, mean, sd, repetitions});
    }
    return curve;
}

inline void write_growth_curve_csv(std::ostream& out, const growth_curve& curve) {
    std::ostringstream buf;
    buf.precision(17);
    buf << "n,mean_regions,std_regions,repetitions\n";
    for (const auto& s : curve.samples) {
        buf << s.n << ',' << s.mean_regions << ',' << s.std_regions << ',' << s.repetitions << '\n';
    }
    out << buf.str();
}

enum class growth_family { constant, linear, power };

[[nodiscard]] inline std::string_view to_string(growth_family f) noexcept {
    switch (f) {
        case growth_family::linear: return "linear";
        case growth_family::power: return "power";
        case growth_family::constant: break;
    }
    return "constant";
}

/// Fitted h(n).
///   constant: h(n) = a
///   linear:   h(n) = a*n + b, a >= 0
///   power:    h(n) = a*n^b,   a > 0, 0 <= b <= 1
/// Evaluation is clamped to [1, n].
struct growth_model {
    growth_family family = growth_family::constant;
    double a = 1.0;
    double b = 0.0;
    double fit_error = 0.0;

    [[nodiscard]] double raw(double n) const noexcept {
        switch (family) {
            case growth_family::linear: return a * n + b;
            case growth_family::power: return a * std::pow(n, b);
            case growth_family::constant: break;
        }
        return a;
    }

    [[nodiscard]] double evaluate(double n) const noexcept {
        return std::max(1.0, std::min(n, raw(n)));
    }

    [[nodiscard]] std::size_t parameter_count() const noexcept { return family == growth_family::constant ? 1 : 2; }
};

namespace detail {

inline double sum_squared_residuals(const growth_curve& curve, const growth_model& model) {
    double sse = 0.0;
    for (const auto& s : curve.samples) {
        const double r = s.mean_regions - model.raw(static_cast<double>(s.n));
        sse += r * r;
    }
    return sse;
}

}  // namespace detail

/// Least-squares fit of a single family. Requires 1 point for constant, 2 for
/// linear and 3 for power.
[[nodiscard]] inline growth_model fit_growth_family(const growth_curve& curve, growth_family family) {
    const auto& pts = curve.samples;
    const std::size_t needed = family == growth_family::constant ? 1 : family == growth_family::linear ? 2 : 3;
    if (pts.size() < needed) {
        throw input_error("growth curve has " + std::to_string(pts.size()) + " sizes, " + std::string(to_string(family)) +
                          " fit needs " + std::to_string(needed));
    }
    const double k = static_cast<double>(pts.size());
    growth_model model;
    model.family = family;
    switch (family) {
        case growth_family::constant: {
            double sum = 0.0;
            for (const auto& s : pts) {
                sum += s.mean_regions;
            }
            model.a = sum / k;
            model.b = 0.0;
            break;
        }
        case growth_family::linear: {
            double mx = 0.0, my = 0.0;
            for (const auto& s : pts) {
                mx += static_cast<double>(s.n);
                my += s.mean_regions;
            }
            mx /= k;
            my /= k;
            double sxx = 0.0, sxy = 0.0;
            for (const auto& s : pts) {
                const double dx = static_cast<double>(s.n) - mx;
                sxx += dx * dx;
                sxy += dx * (s.mean_regions - my);
            }
            model.a = sxx > 0.0 ? std::max(0.0, sxy / sxx) : 0.0;
            model.b = my - model.a * mx;
            break;
        }
        case growth_family::power: {
            double mx = 0.0, my = 0.0;
            for (const auto& s : pts) {
                mx += std::log(static_cast<double>(s.n));
                my += std::log(s.mean_regions);
            }
            mx /= k;
            my /= k;
            double sxx = 0.0, sxy = 0.0;
            for (const auto& s : pts) {
                const double dx = std::log(static_cast<double>(s.n)) - mx;
                sxx += dx * dx;
                sxy += dx * (std::log(s.mean_regions) - my);
            }
            model.b = std::clamp(sxx > 0.0 ? sxy / sxx : 0.0, 0.0, 1.0);
            model.a = std::exp(my - model.b * mx);
            break;
        }
    }
    model.fit_error = detail::sum_squared_residuals(curve, model);
    return model;
}

/// Fits constant, linear and power families and keeps the lowest residual.
/// Residuals within a relative 1e-9 of each other count as ties and go to the
/// family listed first (constant, linear, power).
[[nodiscard]] inline growth_model fit_growth_model(const growth_curve& curve) {
    if (curve.samples.size() < 2) {
        throw input_error("growth curve needs at least 2 distinct sizes to fit a model");
    }
    for (std::size_t i = 1; i < curve.samples.size(); ++i) {
        if (curve.samples[i].n <= curve.samples[i - 1].n) {
            throw input_error("growth curve sizes must be strictly increasing");
        }
    }
    double mean = 0.0;
    for (const auto& s : curve.samples) {
        mean += s.mean_regions;
    }
    mean /= static_cast<double>(curve.samples.size());
    double total = 0.0;
    for (const auto& s : curve.samples) {
        total += (s.mean_regions - mean) * (s.mean_regions - mean);
    }
    const double tol = 1e-9 * (1.0 + total);

    growth_model best = fit_growth_family(curve, growth_family::constant);
    std::vector<growth_family> candidates{growth_family::linear};
    if (curve.samples.size() >= 3) {
        candidates.push_back(growth_family::power);
    }
    for (const auto family : candidates) {
        const auto m = fit_growth_family(curve, family);
        if (m.fit_error < best.fit_error - tol) {
            best = m;
        }
    }
    return best;
}

}  // namespace shatter
