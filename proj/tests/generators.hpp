#pragma once

#include "shatter/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace gen {

/// Random labeled dataset with continuous coordinates (no coincident points
/// with probability 1). Every class gets at least one point.
inline shatter::labeled_dataset random_dataset(std::mt19937_64& rng, std::size_t max_n = 300, std::size_t max_d = 5,
                                               std::size_t max_c = 4) {
    std::uniform_int_distribution<std::size_t> pick_c(1, max_c);
    std::uniform_int_distribution<std::size_t> pick_d(1, max_d);
    const std::size_t classes = pick_c(rng);
    const std::size_t dim = pick_d(rng);
    std::uniform_int_distribution<std::size_t> pick_n(std::max<std::size_t>(classes, 2), max_n);
    const std::size_t n = pick_n(rng);
    std::normal_distribution<double> coord(0.0, 1.0);
    std::uniform_int_distribution<int> cls(0, static_cast<int>(classes) - 1);
    std::vector<double> coords(n * dim);
    for (auto& v : coords) {
        v = coord(rng);
    }
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i < classes ? static_cast<int>(i) : cls(rng);
    }
    return {std::move(coords), dim, std::move(labels)};
}

/// Same points with class ids sent through `perm`.
inline shatter::labeled_dataset relabel(const shatter::labeled_dataset& d, const std::vector<int>& perm) {
    std::vector<int> labels = d.labels();
    for (auto& y : labels) {
        y = perm[static_cast<std::size_t>(y)];
    }
    return {d.coords(), d.dim(), std::move(labels)};
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, std::size_t k) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

}  // namespace gen
