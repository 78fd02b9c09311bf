#pragma once

#include "shatter/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace shatter {

/// Best- and worst-case estimates of the number of hyperplanes needed to
/// separate h homogeneous regions in R^d, with the asymptotic constants set
/// to 1 and natural logarithms:
///   upper = d * h^(2/(d+1))
///   lower = h^(2/(d+1)) * ln(ln h) / ln h   (1 when h <= e)
struct hyperplane_bounds {
    double lower{};
    double upper{};
    std::uint64_t lower_int{};
    std::uint64_t upper_int{};
    double at_n{};
    std::size_t dim{};
};

[[nodiscard]] inline hyperplane_bounds estimate_hyperplanes(double h_at_n, std::size_t dim, double n = 0.0) {
    if (!(h_at_n >= 1.0) || !std::isfinite(h_at_n)) {
        throw input_error("region count h(n) must be a finite value >= 1");
    }
    if (dim == 0) {
        throw input_error("dimensionality must be at least 1");
    }
    hyperplane_bounds hb;
    hb.at_n = n;
    hb.dim = dim;
    const double scaled = std::pow(h_at_n, 2.0 / static_cast<double>(dim + 1));
    hb.upper = static_cast<double>(dim) * scaled;
    const double log_h = std::log(h_at_n);
    hb.lower = log_h > 1.0 ? scaled * std::log(log_h) / log_h : 1.0;
    hb.lower_int = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(hb.lower)));
    hb.upper_int = std::max(hb.lower_int, static_cast<std::uint64_t>(std::ceil(hb.upper)));
    return hb;
}

}  // namespace shatter
