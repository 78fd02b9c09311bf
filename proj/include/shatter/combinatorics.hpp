#pragma once

#include "shatter/error.hpp"
#include "shatter/separability.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shatter {

using big_int = boost::multiprecision::cpp_int;

/// Natural log of a positive arbitrary-precision integer.
[[nodiscard]] inline double log_of(const big_int& x) {
    if (x <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    const auto top_bit = static_cast<std::int64_t>(boost::multiprecision::msb(x));
    constexpr std::int64_t keep = 62;
    if (top_bit < keep) {
        return std::log(x.convert_to<double>());
    }
    const auto shift = static_cast<unsigned>(top_bit - keep);
    const big_int head = x >> shift;
    return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// A count that may be far too large for fixed-width integers. The exact
/// value is kept when it is reasonably small; the natural log always is.
struct big_count {
    std::optional<big_int> exact;
    double log_natural = 0.0;

    [[nodiscard]] static big_count of(big_int value) {
        big_count c;
        c.log_natural = log_of(value);
        c.exact = std::move(value);
        return c;
    }

    [[nodiscard]] static big_count from_log(double log_value) {
        big_count c;
        c.log_natural = log_value;
        return c;
    }

    [[nodiscard]] double log10() const noexcept { return log_natural / std::log(10.0); }

    /// Decimal digit count of the value.
    [[nodiscard]] std::uint64_t digits() const {
        if (exact) {
            return exact->str().size();
        }
        return static_cast<std::uint64_t>(std::floor(log10())) + 1;
    }

    [[nodiscard]] friend bool operator<=(const big_count& a, const big_count& b) {
        if (a.exact && b.exact) {
            return *a.exact <= *b.exact;
        }
        return a.log_natural <= b.log_natural;
    }
};

/// Binomial coefficient by running product; every intermediate is exact.
[[nodiscard]] inline big_int binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    big_int result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

/// r(m, d) = 1 + sum_{i=1}^{d} C(m, i): the most regions m hyperplanes cut R^d into.
[[nodiscard]] inline big_int regions_from_hyperplanes(std::uint64_t m, std::uint64_t d) {
    big_int total = 1;
    big_int term = 1;
    const std::uint64_t top = std::min(m, d);
    for (std::uint64_t i = 1; i <= top; ++i) {
        term *= m - i + 1;
        term /= i;
        total += term;
    }
    return total;
}

/// Largest r * ln(C) for which coloring counts are expanded exactly.
inline constexpr double exact_log_limit = 1e5;

/// Number of ways to colour r regions with C classes in the nested-sum sense
///   1 + sum_{c1>=1} sum_{c2>=1} ... prod_i C(r - c1 - ... - c_{i-1}, c_i),
/// evaluated through its inclusion-exclusion closed form
///   1 + sum_{k=0}^{C-1} (-1)^k C(C-1, k) (C-k)^r.
/// Past `exact_log_limit` only the log is produced, by a sign-tracked
/// log-sum-exp over the same C terms.
[[nodiscard]] inline big_count coloring_count(const big_int& regions, std::uint64_t classes) {
    if (regions < 1) {
        throw input_error("coloring count needs at least one region");
    }
    if (classes < 1) {
        throw input_error("coloring count needs at least one class");
    }
    if (classes == 1) {
        return big_count::of(2);
    }
    const double r = regions.convert_to<double>();
    if (r * std::log(static_cast<double>(classes)) <= exact_log_limit) {
        const auto exponent = regions.convert_to<unsigned>();
        big_int total = 1;
        for (std::uint64_t k = 0; k < classes; ++k) {
            big_int term = binomial(classes - 1, k) * boost::multiprecision::pow(big_int(classes - k), exponent);
            if (k % 2 == 0) {
                total += term;
            } else {
                total -= term;
            }
        }
        return big_count::of(std::move(total));
    }
    std::vector<double> logs;
    std::vector<int> signs;
    for (std::uint64_t k = 0; k + 1 < classes; ++k) {  // (C-k)^r with k = C-1 is 1, folded below
        logs.push_back(log_of(binomial(classes - 1, k)) + r * std::log(static_cast<double>(classes - k)));
        signs.push_back(k % 2 == 0 ? 1 : -1);
    }
    // the k = C-1 term contributes (-1)^(C-1); together with the leading 1
    const double constant = (classes - 1) % 2 == 0 ? 2.0 : 0.0;
    const double peak = *std::max_element(logs.begin(), logs.end());
    double scaled = constant * std::exp(-peak);
    for (std::size_t i = 0; i < logs.size(); ++i) {
        scaled += signs[i] * std::exp(logs[i] - peak);
    }
    return big_count::from_log(peak + std::log(scaled));
}

[[nodiscard]] inline big_count coloring_count(std::uint64_t regions, std::uint64_t classes) {
    return coloring_count(big_int(regions), classes);
}

/// Sauer-Shelah bound sum_{i=0}^{min(vc, n)} C(n, i).
[[nodiscard]] inline big_int sauer_shelah(std::uint64_t n, std::uint64_t vc) {
    big_int total = 1;
    big_int term = 1;
    const std::uint64_t top = std::min(vc, n);
    for (std::uint64_t i = 1; i <= top; ++i) {
        term *= n - i + 1;
        term /= i;
        total += term;
    }
    return total;
}

enum class region_path {
    /// regions from r(Omega, d) and r(O, d)
    hyperplanes,
    /// regions = ceil(h(n)) for both sides
    regions
};

[[nodiscard]] inline std::string_view to_string(region_path p) noexcept {
    return p == region_path::hyperplanes ? "i" : "ii";
}

struct shattering_estimate {
    big_int regions_lower;
    big_int regions_upper;
    std::uint64_t classes{};
    big_count lower;
    big_count upper;
    region_path path = region_path::regions;
};

[[nodiscard]] inline shattering_estimate shattering_bounds(const hyperplane_bounds& hb, std::uint64_t dim,
                                                           std::uint64_t classes, std::uint64_t h_ceil,
                                                           region_path path) {
    if (classes < 2) {
        throw input_error("shattering bounds need at least two classes");
    }
    shattering_estimate est;
    est.classes = classes;
    est.path = path;
    if (path == region_path::hyperplanes) {
        est.regions_lower = regions_from_hyperplanes(hb.lower_int, dim);
        est.regions_upper = regions_from_hyperplanes(hb.upper_int, dim);
    } else {
        if (h_ceil < 1) {
            throw input_error("ceil(h(n)) must be at least 1");
        }
        est.regions_lower = h_ceil;
        est.regions_upper = h_ceil;
    }
    est.lower = coloring_count(est.regions_lower, classes);
    est.upper = coloring_count(est.regions_upper, classes);
    return est;
}

}  // namespace shatter
