#pragma once

#include "shatter/combinatorics.hpp"
#include "shatter/error.hpp"
#include "shatter/growth.hpp"
#include "shatter/separability.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>

namespace shatter {

/// Asymptotic class of log N(F, n).
enum class growth_form_kind {
    constant,          ///< log N bounded
    polynomial,        ///< log N ~ p ln n
    subexponential,    ///< log N ~ k n^e, 0 < e < 1
    exponential,       ///< log N ~ a n
    superexponential,  ///< log N ~ k n^e, e > 1
};

[[nodiscard]] inline std::string_view to_string(growth_form_kind k) noexcept {
    switch (k) {
        case growth_form_kind::polynomial: return "polynomial";
        case growth_form_kind::subexponential: return "subexponential";
        case growth_form_kind::exponential: return "exponential";
        case growth_form_kind::superexponential: return "superexponential";
        case growth_form_kind::constant: break;
    }
    return "constant";
}

/// A shattering-coefficient function N(F, n), carried in log space.
struct shattering_growth_form {
    growth_form_kind kind = growth_form_kind::constant;
    /// exponential rate a, polynomial degree p, or the power-law coefficient k
    double coefficient = 0.0;
    /// power-law exponent e (1 for exponential)
    double exponent = 0.0;
    /// additive constant in log N
    double offset = 0.0;
    std::function<double(double)> log_at;

    [[nodiscard]] static shattering_growth_form constant(double log_value) {
        return {growth_form_kind::constant, 0.0, 0.0, log_value, [log_value](double) { return log_value; }};
    }

    [[nodiscard]] static shattering_growth_form polynomial(double degree, double offset = 0.0) {
        if (degree < 0.0) {
            throw input_error("polynomial degree must be non-negative");
        }
        return {growth_form_kind::polynomial, degree, 0.0, offset,
                [=](double n) { return degree * std::log(n) + offset; }};
    }

    [[nodiscard]] static shattering_growth_form exponential(double rate, double offset = 0.0) {
        if (!(rate > 0.0)) {
            throw input_error("exponential rate must be positive");
        }
        return {growth_form_kind::exponential, rate, 1.0, offset, [=](double n) { return rate * n + offset; }};
    }

    /// log N = k n^e + offset, classified by e.
    [[nodiscard]] static shattering_growth_form power_law(double k, double e, double offset = 0.0) {
        if (!(k > 0.0) || !(e > 0.0)) {
            throw input_error("power-law coefficient and exponent must be positive");
        }
        if (e == 1.0) {
            return exponential(k, offset);
        }
        const auto kind = e < 1.0 ? growth_form_kind::subexponential : growth_form_kind::superexponential;
        return {kind, k, e, offset, [=](double n) { return k * std::pow(n, e) + offset; }};
    }
};

/// Smallest divergence for which 2 N(n) exp(-n eps^2 / 4) still vanishes:
/// sqrt(4a) for an exponential rate a, 0 for anything slower, +inf for
/// anything faster.
[[nodiscard]] inline double epsilon_threshold(const shattering_growth_form& form) noexcept {
    switch (form.kind) {
        case growth_form_kind::exponential: return std::sqrt(4.0 * form.coefficient);
        case growth_form_kind::superexponential: return std::numeric_limits<double>::infinity();
        default: return 0.0;
    }
}

/// Limit of the generalization-bound variance term as n grows. Matches
/// `epsilon_threshold`; delta drops out in the limit.
[[nodiscard]] inline double genbound_asymptote(const shattering_growth_form& form, double /*delta*/) noexcept {
    return epsilon_threshold(form);
}

/// Divergence whose excess over the threshold leaves exactly exp(-n zeta^2/4)
/// in the exponential bound: eps^2 = threshold^2 + zeta^2.
[[nodiscard]] inline double epsilon_with_slack(const shattering_growth_form& form, double zeta) noexcept {
    const double t = epsilon_threshold(form);
    return std::sqrt(t * t + zeta * zeta);
}

namespace detail {

// ceil with a relative guard so closed forms that land on an integer stay there
inline std::uint64_t guarded_ceil(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) {
        return static_cast<std::uint64_t>(std::max(1.0, r));
    }
    return static_cast<std::uint64_t>(std::max(1.0, std::ceil(x)));
}

inline void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw input_error("delta must lie in (0, 1)");
    }
}

}  // namespace detail

/// n = ceil(-4 ln(delta / 2) / zeta^2), the solution of delta = 2 exp(-n zeta^2 / 4).
[[nodiscard]] inline std::uint64_t sample_size_exponential(double delta, double zeta) {
    detail::check_delta(delta);
    if (!(zeta > 0.0)) {
        throw input_error("zeta must be positive");
    }
    return detail::guarded_ceil(-4.0 * std::log(delta / 2.0) / (zeta * zeta));
}

/// Smallest n with 2 N(n) exp(-n eps^2 / 4) <= delta, or nullopt when eps does
/// not exceed the form's threshold and no finite n exists.
///
/// Polynomial forms are solved as delta = 2 exp(p ln n + ln 2 - n eps^2 / 4),
/// i.e. with N(n) taken as 2 n^p. That is the rewritten form whose solution
/// for n^2, delta = 0.05, eps = 0.01 is the commonly quoted n = 1,301,610.
[[nodiscard]] inline std::optional<std::uint64_t> sample_size_general(const shattering_growth_form& form, double delta,
                                                                       double epsilon) {
    detail::check_delta(delta);
    if (!(epsilon > 0.0)) {
        throw input_error("epsilon must be positive");
    }
    if (!(epsilon > epsilon_threshold(form))) {
        return std::nullopt;
    }
    const double extra = form.kind == growth_form_kind::polynomial ? std::log(2.0) : 0.0;
    const double target = std::log(delta);
    auto excess = [&](std::uint64_t n) {
        const double x = static_cast<double>(n);
        return std::log(2.0) + extra + form.log_at(x) - x * epsilon * epsilon / 4.0 - target;
    };
    if (excess(1) <= 0.0) {
        return 1;
    }
    // the left side may rise first, but once it dips below delta it stays there
    std::uint64_t lo = 1;
    std::uint64_t hi = 2;
    while (excess(hi) > 0.0) {
        lo = hi;
        if (hi > (std::uint64_t{1} << 62)) {
            return std::nullopt;
        }
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (excess(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

/// r_emp + sqrt((4/n) (ln(2 N(n)) - ln delta)).
[[nodiscard]] inline double generalization_bound(const shattering_growth_form& form, double r_emp, double n,
                                                 double delta) {
    detail::check_delta(delta);
    if (!(r_emp >= 0.0 && r_emp <= 1.0)) {
        throw input_error("empirical risk must lie in [0, 1]");
    }
    if (!(n >= 1.0)) {
        throw input_error("sample size must be at least 1");
    }
    return r_emp + std::sqrt(4.0 / n * (std::log(2.0) + form.log_at(n) - std::log(delta)));
}

namespace detail {

// (growth amplitude, growth exponent) for a non-constant h, nullopt for flat ones
inline std::optional<std::pair<double, double>> power_shape(const growth_model& h) {
    switch (h.family) {
        case growth_family::linear:
            if (h.a > 0.0) return std::pair{h.a, 1.0};
            return std::nullopt;
        case growth_family::power:
            if (h.b > 0.0) return std::pair{h.a, h.b};
            return std::nullopt;
        case growth_family::constant: break;
    }
    return std::nullopt;
}

// a sample size at which a flat h(n) is no longer clipped by the n cap
inline double flat_level(const growth_model& h) {
    return std::max(1.0, std::ceil(h.raw(1.0)));
}

inline double log_coloring(const big_int& regions, std::uint64_t classes) {
    return coloring_count(regions, classes).log_natural;
}

inline std::uint64_t ceil_regions(const growth_model& h, double n) {
    return static_cast<std::uint64_t>(std::ceil(h.evaluate(n)));
}

}  // namespace detail

/// Shattering function from regions = ceil(h(n)). With C classes,
/// log N ~ h(n) ln C, so a linear h gives an exponential rate a ln C and a
/// power-law h a subexponential form. log_at evaluates the exact count.
[[nodiscard]] inline shattering_growth_form form_from_regions(const growth_model& h, std::uint64_t classes) {
    if (classes < 2) {
        throw input_error("shattering forms need at least two classes");
    }
    const double log_c = std::log(static_cast<double>(classes));
    auto exact = [h, classes](double n) { return detail::log_coloring(detail::ceil_regions(h, n), classes); };
    shattering_growth_form form;
    if (const auto shape = detail::power_shape(h)) {
        const auto [amp, e] = *shape;
        form = shattering_growth_form::power_law(amp * log_c, e, h.family == growth_family::linear ? h.b * log_c : 0.0);
    } else {
        form = shattering_growth_form::constant(exact(detail::flat_level(h)));
    }
    form.log_at = exact;
    return form;
}

/// Lower and upper shattering functions from the hyperplane route: regions
/// r(Omega(h(n)), d) and r(O(h(n)), d). Asymptotically r(m, d) ~ m^d / d!
/// and O ~ d h^(2/(d+1)), so log N grows like n^(2bd/(d+1)) when h ~ n^b.
/// The lower side carries an extra (ln ln h / ln h)^d factor, which pushes the
/// boundary case e = 1 to subexponential. log_at evaluates exact counts.
[[nodiscard]] inline std::pair<shattering_growth_form, shattering_growth_form>
forms_from_hyperplanes(const growth_model& h, std::uint64_t dim, std::uint64_t classes) {
    if (classes < 2) {
        throw input_error("shattering forms need at least two classes");
    }
    const double log_c = std::log(static_cast<double>(classes));
    const double d = static_cast<double>(dim);
    auto exact_lower = [h, dim, classes](double n) {
        const auto hb = estimate_hyperplanes(h.evaluate(n), dim, n);
        return detail::log_coloring(regions_from_hyperplanes(hb.lower_int, dim), classes);
    };
    auto exact_upper = [h, dim, classes](double n) {
        const auto hb = estimate_hyperplanes(h.evaluate(n), dim, n);
        return detail::log_coloring(regions_from_hyperplanes(hb.upper_int, dim), classes);
    };
    shattering_growth_form lower;
    shattering_growth_form upper;
    if (const auto shape = detail::power_shape(h)) {
        const auto [amp, b] = *shape;
        const double e = 2.0 * b * d / (d + 1.0);
        const double amp_scaled = std::pow(amp, 2.0 * d / (d + 1.0)) / std::tgamma(d + 1.0);
        upper = shattering_growth_form::power_law(std::pow(d, d) * amp_scaled * log_c, e);
        if (e == 1.0) {
            lower = shattering_growth_form{growth_form_kind::subexponential, amp_scaled * log_c, 1.0, 0.0, {}};
        } else {
            lower = shattering_growth_form::power_law(amp_scaled * log_c, e);
        }
    } else {
        lower = shattering_growth_form::constant(exact_lower(detail::flat_level(h)));
        upper = shattering_growth_form::constant(exact_upper(detail::flat_level(h)));
    }
    lower.log_at = exact_lower;
    upper.log_at = exact_upper;
    return {std::move(lower), std::move(upper)};
}

}  // namespace shatter
