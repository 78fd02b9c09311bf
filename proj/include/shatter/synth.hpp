#pragma once

#include "shatter/dataset.hpp"
#include "shatter/error.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace shatter::synth {

/// Isotropic Gaussian clouds, one per class.
struct gaussian_params {
    std::vector<std::vector<double>> means{{0.0, 0.0}, {10.0, 10.0}};
    double variance = 1.0;
    std::vector<std::size_t> counts{200, 200};
};

[[nodiscard]] inline labeled_dataset gaussians(const gaussian_params& p, std::uint64_t seed) {
    if (p.means.empty() || p.means.size() != p.counts.size()) {
        throw input_error("gaussians: need one count per mean");
    }
    if (!(p.variance > 0.0) || !std::isfinite(p.variance)) {
        throw input_error("gaussians: variance must be positive");
    }
    const std::size_t dim = p.means.front().size();
    if (dim == 0) {
        throw input_error("gaussians: means must have at least one coordinate");
    }
    std::vector<double> coords;
    std::vector<int> labels;
    std::vector<std::string> names;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(p.variance));
    for (std::size_t c = 0; c < p.means.size(); ++c) {
        if (p.means[c].size() != dim) {
            throw input_error("gaussians: all means must share one dimensionality");
        }
        if (p.counts[c] == 0) {
            throw input_error("gaussians: every class needs at least one point");
        }
        names.push_back("c" + std::to_string(c));
        for (std::size_t i = 0; i < p.counts[c]; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                coords.push_back(p.means[c][j] + noise(rng));
            }
            labels.push_back(static_cast<int>(c));
        }
    }
    return {std::move(coords), dim, std::move(labels), std::move(names)};
}

/// Two classes drawn from one Gaussian: labels carry no spatial signal.
[[nodiscard]] inline labeled_dataset overlap(std::size_t per_class, std::size_t dim, std::uint64_t seed) {
    if (per_class == 0 || dim == 0) {
        throw input_error("overlap: need at least one point per class and one dimension");
    }
    gaussian_params p;
    p.means.assign(2, std::vector<double>(dim, 0.0));
    p.counts = {per_class, per_class};
    return gaussians(p, seed);
}

/// Four corners of the unit square, opposite corners sharing a class.
[[nodiscard]] inline labeled_dataset xor_layout() {
    return {{0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0}, 2, {0, 0, 1, 1}, {"A", "B"}};
}

}  // namespace shatter::synth
