#pragma once

#include "shatter/dataset.hpp"
#include "shatter/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shatter {

enum class metric { euclidean, manhattan, chebyshev };

[[nodiscard]] inline std::string_view to_string(metric m) noexcept {
    switch (m) {
        case metric::manhattan: return "manhattan";
        case metric::chebyshev: return "chebyshev";
        case metric::euclidean: break;
    }
    return "euclidean";
}

[[nodiscard]] inline metric parse_metric(std::string_view name) {
    if (name == "euclidean") return metric::euclidean;
    if (name == "manhattan") return metric::manhattan;
    if (name == "chebyshev") return metric::chebyshev;
    throw input_error("unknown metric '" + std::string(name) + "' (expected euclidean, manhattan or chebyshev)");
}

[[nodiscard]] inline double distance(metric m, std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    switch (m) {
        case metric::euclidean:
            for (std::size_t j = 0; j < a.size(); ++j) {
                const double t = a[j] - b[j];
                acc += t * t;
            }
            return std::sqrt(acc);
        case metric::manhattan:
            for (std::size_t j = 0; j < a.size(); ++j) {
                acc += std::abs(a[j] - b[j]);
            }
            return acc;
        case metric::chebyshev:
            for (std::size_t j = 0; j < a.size(); ++j) {
                acc = std::max(acc, std::abs(a[j] - b[j]));
            }
            return acc;
    }
    return acc;
}

/// One open ball per point. radii[i] sits just below the distance from point i
/// to its nearest point of another class; +inf when no other class exists.
struct open_ball_set {
    std::vector<double> radii;
    metric kind = metric::euclidean;
};

inline constexpr double default_shrink = 1e-9;

[[nodiscard]] inline open_ball_set compute_open_balls(const labeled_dataset& data, metric m = metric::euclidean,
                                                      double shrink = default_shrink) {
    if (!(shrink > 0.0 && shrink < 1.0)) {
        throw input_error("shrink factor must lie in (0, 1)");
    }
    const std::size_t n = data.size();
    std::vector<double> nearest_enemy(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (data.label(i) == data.label(j)) {
                continue;
            }
            const double dist = distance(m, data.point(i), data.point(j));
            nearest_enemy[i] = std::min(nearest_enemy[i], dist);
            nearest_enemy[j] = std::min(nearest_enemy[j], dist);
        }
    }
    open_ball_set balls{std::move(nearest_enemy), m};
    for (double& r : balls.radii) {
        if (std::isfinite(r)) {
            r *= (1.0 - shrink);
        }
    }
    return balls;
}

/// Union-find with path halving and union by size.
class disjoint_set {
  public:
    explicit disjoint_set(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) noexcept {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) noexcept {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

/// Homogeneous-class regions. Region ids are numbered in order of each
/// region's smallest member index.
struct region_partition {
    std::vector<std::size_t> region_of;
    std::vector<int> region_class;

    [[nodiscard]] std::size_t region_count() const noexcept { return region_class.size(); }
};

/// Links same-class points i, j when either lies strictly inside the other's
/// ball and returns the connected components.
[[nodiscard]] inline region_partition compress_space(const labeled_dataset& data, const open_ball_set& balls) {
    const std::size_t n = data.size();
    if (balls.radii.size() != n) {
        throw input_error("open-ball set does not match the dataset size");
    }
    disjoint_set sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (data.label(i) != data.label(j)) {
                continue;
            }
            const double reach = std::max(balls.radii[i], balls.radii[j]);
            if (reach <= 0.0) {
                continue;
            }
            if (distance(balls.kind, data.point(i), data.point(j)) < reach) {
                sets.unite(i, j);
            }
        }
    }
    region_partition out;
    out.region_of.resize(n);
    constexpr auto unassigned = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> id_of_root(n, unassigned);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = sets.find(i);
        if (id_of_root[root] == unassigned) {
            id_of_root[root] = out.region_class.size();
            out.region_class.push_back(data.label(i));
        }
        out.region_of[i] = id_of_root[root];
    }
    return out;
}

[[nodiscard]] inline std::size_t count_regions(const labeled_dataset& data, metric m = metric::euclidean,
                                               double shrink = default_shrink) {
    return compress_space(data, compute_open_balls(data, m, shrink)).region_count();
}

}  // namespace shatter
